//! Euler–Maclaurin evaluation of sums of `f(x) = x^p`.
//!
//! The remainder after `k` correction terms is
//! `(1/(2k+1)!) ∫ f^(2k+1)(x) B_{2k+1}({x}) dx`. When `±f^(2k+1)` is positive
//! and decreasing, each unit interval contributes with sign `(-1)^(k-1)`
//! relative to `±`, which fixes the sign of the whole remainder. Its size is
//! budgeted by the first omitted correction term.

use serde::{Deserialize, Serialize};

use super::bernoulli::{self, even_number};
use crate::error::{domain, Error, Result};
use crate::quad::composite_simpson;
use crate::sum::CompensatedSum;

/// Sign of the true sum minus the returned value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemainderSign {
    /// The remainder is negative: the returned value is an upper bound.
    Negative,
    /// The remainder is positive: the returned value is a lower bound.
    Positive,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmResult {
    pub value: f64,
    pub remainder_bound: f64,
    pub remainder_sign: RemainderSign,
}

impl EmResult {
    /// Interval that contains the true sum, using the sign when it is known.
    pub fn enclosure(&self) -> (f64, f64) {
        match self.remainder_sign {
            RemainderSign::Negative => (self.value - self.remainder_bound, self.value),
            RemainderSign::Positive => (self.value, self.value + self.remainder_bound),
            RemainderSign::Unknown => (
                self.value - self.remainder_bound,
                self.value + self.remainder_bound,
            ),
        }
    }
}

/// The monomial sum `Σ n^exponent` starting at `start`, with `order`
/// Bernoulli correction terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSum {
    pub exponent: f64,
    pub start: u64,
    pub order: u8,
}

impl PowerSum {
    pub fn new(exponent: f64, start: u64, order: u8) -> Result<Self> {
        if !exponent.is_finite() {
            return Err(domain("exponent", exponent, "must be finite"));
        }
        if start == 0 {
            return Err(domain(
                "start",
                0.0,
                "summation starts at a positive integer",
            ));
        }
        if order > 2 {
            return Err(Error::UnsupportedDegree(2 * order as i64 + 1));
        }
        Ok(Self {
            exponent,
            start,
            order,
        })
    }
}

/// `p (p-1) ... (p-j+1)`, so that `d^j/dx^j x^p = falling(p, j) x^(p-j)`.
pub(crate) fn falling(p: f64, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (p - i as f64))
}

fn derivative(p: f64, j: u32, x: f64) -> f64 {
    let c = falling(p, j);
    if c == 0.0 {
        0.0
    } else {
        c * x.powf(p - j as f64)
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Sign of the remainder for `x^p` at `order` corrections, when the sign
/// lemma applies on the whole summation range.
fn sign_from_lemma(p: f64, order: u8) -> RemainderSign {
    let k = order as u32;
    let c = falling(p, 2 * k + 1);
    // |f^(2k+1)| = |c| x^(p-2k-1) must be decreasing
    if c == 0.0 || p - (2 * k + 1) as f64 >= 0.0 {
        return RemainderSign::Unknown;
    }
    // (-1)^(k-1), with k = 0 giving -1
    let lemma = if k % 2 == 1 { 1.0 } else { -1.0 };
    if c.signum() * lemma > 0.0 {
        RemainderSign::Positive
    } else {
        RemainderSign::Negative
    }
}

/// `Σ_{n > m} n^p` for `p < -1`, `m = spec.start`.
pub fn em_tail_sum(spec: &PowerSum) -> Result<EmResult> {
    let p = spec.exponent;
    if !(p < -1.0) {
        return Err(Error::Divergence(format!(
            "Σ n^p over a tail needs p < -1, got p = {p}"
        )));
    }
    let m = spec.start as f64;
    let k = spec.order as u32;

    let mut acc = CompensatedSum::new();
    acc.add(m.powf(p + 1.0) / -(p + 1.0));
    acc.add(-0.5 * m.powf(p));
    for j in 1..=k {
        acc.add(-even_number(j as usize) / factorial(2 * j) * derivative(p, 2 * j - 1, m));
    }
    let omitted = even_number(k as usize + 1) / factorial(2 * k + 2) * derivative(p, 2 * k + 1, m);
    Ok(EmResult {
        value: acc.value(),
        remainder_bound: omitted.abs(),
        remainder_sign: sign_from_lemma(p, spec.order),
    })
}

/// `Σ_{n = start}^{end} n^p`.
pub fn em_partial_sum(spec: &PowerSum, end: u64) -> Result<EmResult> {
    if end < spec.start {
        return Err(Error::Precondition(format!(
            "partial sum end {end} precedes start {}",
            spec.start
        )));
    }
    let p = spec.exponent;
    let a = spec.start as f64;
    let b = end as f64;
    let k = spec.order as u32;

    let mut acc = CompensatedSum::new();
    acc.add(monomial_integral(p, a, b));
    acc.add(0.5 * (a.powf(p) + b.powf(p)));
    for j in 1..=k {
        let d = derivative(p, 2 * j - 1, b) - derivative(p, 2 * j - 1, a);
        acc.add(even_number(j as usize) / factorial(2 * j) * d);
    }
    let omitted = even_number(k as usize + 1) / factorial(2 * k + 2)
        * (derivative(p, 2 * k + 1, b) - derivative(p, 2 * k + 1, a));
    let sign = if end == spec.start || omitted == 0.0 {
        RemainderSign::Unknown
    } else {
        sign_from_lemma(p, spec.order)
    };
    Ok(EmResult {
        value: acc.value(),
        remainder_bound: if end == spec.start {
            0.0
        } else {
            omitted.abs()
        },
        remainder_sign: sign,
    })
}

/// `∫_a^b x^p dx` without cancellation near `p = -1`.
fn monomial_integral(p: f64, a: f64, b: f64) -> f64 {
    let q = p + 1.0;
    let log_ratio = (b / a).ln();
    if q == 0.0 {
        log_ratio
    } else {
        a.powf(q) * (q * log_ratio).exp_m1() / q
    }
}

/// `Σ_{n > m} n^p` for `p < -1` and `m ≥ 0`, with total error budget `tol`.
///
/// Sums directly up to the smallest cutoff `M ≥ max(m, 1)` at which the
/// second-order tail has remainder bound at most `tol / 2`, then adds the
/// Euler–Maclaurin tail. The returned bound and sign are those of the tail.
pub fn power_tail(p: f64, m: u64, tol: f64) -> Result<EmResult> {
    if !(p < -1.0) {
        return Err(Error::Divergence(format!(
            "Σ n^p over a tail needs p < -1, got p = {p}"
        )));
    }
    if !(tol > 0.0) {
        return Err(domain("tol", tol, "must be positive"));
    }
    // remainder bound at order 2: |B_6/6! * falling(p, 5)| M^(p-5)
    let scale = (even_number(3) / factorial(6) * falling(p, 5)).abs();
    let needed = (scale / (0.5 * tol)).powf(1.0 / (5.0 - p)).ceil();
    let lo = m.max(1);
    let cutoff = if needed.is_finite() && needed > lo as f64 {
        needed as u64
    } else {
        lo
    };
    if cutoff - m > super::ZETA_MAX_TERMS {
        let spec = PowerSum::new(p, m.saturating_add(super::ZETA_MAX_TERMS), 2)?;
        let tail = em_tail_sum(&spec)?;
        return Err(Error::Accuracy {
            tol,
            estimate: direct_sum(p, m, spec.start) + tail.value,
            budget: tail.remainder_bound,
        });
    }
    let tail = em_tail_sum(&PowerSum::new(p, cutoff, 2)?)?;
    let mut acc = CompensatedSum::new();
    for n in (m + 1)..=cutoff {
        acc.add((n as f64).powf(p));
    }
    acc.add(tail.value);
    Ok(EmResult {
        value: acc.value(),
        ..tail
    })
}

fn direct_sum(p: f64, from_exclusive: u64, to: u64) -> f64 {
    crate::sum::compensated(((from_exclusive + 1)..=to).map(|n| (n as f64).powf(p)))
}

/// Number of Simpson panels used by [`remainder_sign_check`].
pub const SIGN_CHECK_PANELS: usize = 1024;
/// Integrals smaller than this in magnitude are reported as [`RemainderSign::Unknown`].
pub const SIGN_CHECK_THRESHOLD: f64 = 1e-13;

/// Sign of `∫_0^1 (x0 + x)^g_exponent B_{2k+1}(x) dx` by quadrature.
///
/// For a positive decreasing weight (`g_exponent < 0`) the sign lemma
/// predicts `(-1)^(k-1)`: [`RemainderSign::Positive`] for `k = 1`,
/// [`RemainderSign::Negative`] for `k = 2`.
pub fn remainder_sign_check(g_exponent: f64, k: u8, x0: f64) -> Result<RemainderSign> {
    if !(g_exponent < 0.0) {
        return Err(Error::Precondition(format!(
            "weight (x0 + x)^{g_exponent} must be decreasing, need exponent < 0"
        )));
    }
    if !(x0 >= 1.0) || !x0.is_finite() {
        return Err(domain("x0", x0, "weight offset must be at least 1"));
    }
    if !(1..=2).contains(&k) {
        return Err(Error::UnsupportedDegree(2 * k as i64 + 1));
    }
    let degree = 2 * k + 1;
    let integral = composite_simpson(
        |x| (x0 + x).powf(g_exponent) * bernoulli::eval(degree, x),
        0.0,
        1.0,
        SIGN_CHECK_PANELS,
    );
    Ok(if integral.abs() < SIGN_CHECK_THRESHOLD {
        RemainderSign::Unknown
    } else if integral > 0.0 {
        RemainderSign::Positive
    } else {
        RemainderSign::Negative
    })
}
