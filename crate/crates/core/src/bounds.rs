//! Two-sided bounds for `‖B_α‖` and the scalar consequences for
//! composition operators.
//!
//! The upper bound is `sup_m S_α(m)` with
//!
//! ```text
//! S_α(m) = m^(-α) Σ_{n ≤ m} n^(α-1) + m^α Σ_{n > m} n^(-α-1),
//! ```
//!
//! a pair of Riemann sums for `∫_0^1 y^(α-1) dy + ∫_1^∞ y^(-α-1) dy = 2/α`.
//! Its supremum is `max(2/α, ζ(1+α))`. The lower bound combines `2/α`, the
//! point-evaluation bound `ζ(1+2α)` and, for `α > 1`, `2 - ζ(2α)/ζ(2α-1)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exec::Execution;
use crate::kernel::Alpha;
use crate::roots::{alpha0, improved_lower_raw};
use crate::special::{power_tail, zeta, zeta_minus_one};
use crate::sum::CompensatedSum;

/// Absolute accuracy of every zeta value that enters a [`BoundReport`].
pub const ZETA_TOL: f64 = 1e-13;

/// `S_α(m)` with the tail contribution accurate to `tol`.
pub fn s_alpha(alpha: Alpha, m: u64, tol: f64) -> Result<f64> {
    if m == 0 {
        return Err(domain("m", 0.0, "the majorant is indexed from m = 1"));
    }
    let a = alpha.get();
    let head = crate::sum::compensated((1..=m).map(|n| (n as f64).powf(a - 1.0)));
    s_alpha_from_head(a, m, head, tol)
}

fn s_alpha_from_head(a: f64, m: u64, head: f64, tol: f64) -> Result<f64> {
    let mf = m as f64;
    let scale = mf.powf(a);
    let tail = power_tail(-a - 1.0, m, tol / scale)?;
    Ok(head / scale + scale * tail.value)
}

/// Where the supremum of `S_α` is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupArgmax {
    Index(u64),
    /// The limit `2/α` as `m → ∞`.
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupResult {
    pub sup: f64,
    pub argmax: SupArgmax,
}

/// `max(S_α(1), ..., S_α(m_max), 2/α)` and its achiever.
pub fn s_alpha_sup(alpha: Alpha, m_max: u64, tol: f64) -> Result<SupResult> {
    s_alpha_sup_with(alpha, m_max, tol, Execution::default())
}

pub fn s_alpha_sup_with(alpha: Alpha, m_max: u64, tol: f64, exec: Execution) -> Result<SupResult> {
    if m_max < 2 {
        return Err(domain("m_max", m_max as f64, "the scan needs m_max ≥ 2"));
    }
    let a = alpha.get();
    // running prefix sums Σ_{n ≤ m} n^(α-1), ascending
    let mut acc = CompensatedSum::new();
    let heads: Vec<f64> = (1..=m_max)
        .map(|n| {
            acc.add((n as f64).powf(a - 1.0));
            acc.value()
        })
        .collect();
    let values = exec.map_indices(heads.len(), |i| {
        s_alpha_from_head(a, i as u64 + 1, heads[i], tol)
    });

    let mut best = SupResult {
        sup: alpha.two_over(),
        argmax: SupArgmax::Limit,
    };
    for (i, v) in values.into_iter().enumerate() {
        let v = v?;
        if v > best.sup {
            best = SupResult {
                sup: v,
                argmax: SupArgmax::Index(i as u64 + 1),
            };
        }
    }
    Ok(best)
}

/// The four closed-form Euler–Maclaurin estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimate {
    /// Upper bound for `m^α Σ_{n>m} n^(-α-1)`, any `α > 0`.
    TailUpper,
    /// Lower bound for `ζ(1+α)`, any `α > 0`; ignores `m`.
    ZetaLower,
    /// Upper bound for `m^(-α) Σ_{n≤m} n^(α-1)` when `1 ≤ α ≤ 2`.
    PartialUpper12,
    /// Upper bound for `m^(-α) Σ_{n≤m} n^(α-1)` when `2 ≤ α ≤ 3`.
    PartialUpper23,
}

impl Estimate {
    pub const ALL: [Estimate; 4] = [
        Estimate::TailUpper,
        Estimate::ZetaLower,
        Estimate::PartialUpper12,
        Estimate::PartialUpper23,
    ];

    /// Whether the estimate is valid at `alpha`.
    pub fn applies(self, alpha: f64) -> bool {
        match self {
            Estimate::TailUpper | Estimate::ZetaLower => true,
            Estimate::PartialUpper12 => (1.0..=2.0).contains(&alpha),
            Estimate::PartialUpper23 => (2.0..=3.0).contains(&alpha),
        }
    }
}

pub fn lemma4_estimate(which: Estimate, alpha: Alpha, m: u64) -> Result<f64> {
    let a = alpha.get();
    if !which.applies(a) {
        return Err(Error::Precondition(format!(
            "{which:?} does not apply at alpha = {a}"
        )));
    }
    if m == 0 {
        return Err(domain("m", 0.0, "must be a positive integer"));
    }
    let mf = m as f64;
    Ok(match which {
        Estimate::TailUpper => 1.0 / a - 1.0 / (2.0 * mf) + (a + 1.0) / (12.0 * mf * mf),
        Estimate::ZetaLower => {
            1.0 / a + 0.5 + (a + 1.0) / 12.0 - (a + 1.0) * (a + 2.0) * (a + 3.0) / 720.0
        }
        Estimate::PartialUpper12 => {
            1.0 / a + 1.0 / (2.0 * mf) + (a - 1.0) / (12.0 * mf * mf)
                - (a - 3.0) * (a - 4.0) / (12.0 * a) * mf.powf(-a)
        }
        Estimate::PartialUpper23 => 1.0 / a + 1.0 / (2.0 * mf) + (a - 1.0) / (12.0 * mf * mf),
    })
}

fn check_unit_range(alpha: f64) -> Result<()> {
    if (1.0..=2.0).contains(&alpha) {
        Ok(())
    } else {
        Err(domain("alpha", alpha, "h1 and h2 are defined on [1, 2]"))
    }
}

/// `h₁(α) = (α-3)(α-4)/(12α) 2^(-α) - α/24` on `[1, 2]`.
pub fn h1(alpha: f64) -> Result<f64> {
    check_unit_range(alpha)?;
    let a = alpha;
    Ok((a - 3.0) * (a - 4.0) / (12.0 * a) * 2f64.powf(-a) - a / 24.0)
}

/// `h₂(α) = 1/2 + (α+1)/12 - (α+1)(α+2)(α+3)/720 - 1/α + h₁(α)` on `[1, 2]`.
pub fn h2(alpha: f64) -> Result<f64> {
    let a = alpha;
    Ok(0.5 + (a + 1.0) / 12.0 - (a + 1.0) * (a + 2.0) * (a + 3.0) / 720.0 - 1.0 / a + h1(a)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerMethod {
    /// `2/α` from the extremal family `m^(-1/2-ε)`.
    ContinuousLimit,
    /// `ζ(1+2α)` from point evaluation.
    PointEvaluation,
    /// `2 - ζ(2α)/ζ(2α-1)` from the test vector `m^(-α+1/2)`, `α > 1`.
    Improved,
    /// A finite-section eigenvalue or Rayleigh quotient.
    Rayleigh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperMethod {
    /// `sup_m S_α(m)` from the weighted Cauchy–Schwarz inequality.
    CauchySchwarzSup,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub alpha: Alpha,
    pub lower: f64,
    pub upper: f64,
    /// `lower == upper == 2/α`, which holds exactly when `α ≤ α₀`.
    pub exact: bool,
    pub lower_method: LowerMethod,
    pub upper_method: UpperMethod,
}

impl BoundReport {
    /// Raises the lower bound to `value` if that improves it.
    pub fn tighten_lower(&mut self, value: f64, method: LowerMethod) {
        if value > self.lower {
            self.lower = value.min(self.upper);
            self.lower_method = method;
        }
    }
}

/// `max(2/α, ζ(1+2α), [2 - ζ(2α)/ζ(2α-1)]) ≤ ‖B_α‖ ≤ max(2/α, ζ(1+α))`.
pub fn theorem_bounds(alpha: Alpha) -> Result<BoundReport> {
    let a = alpha.get();
    let two = alpha.two_over();
    if a <= alpha0() {
        return Ok(BoundReport {
            alpha,
            lower: two,
            upper: two,
            exact: true,
            lower_method: LowerMethod::ContinuousLimit,
            upper_method: UpperMethod::CauchySchwarzSup,
        });
    }
    let upper = two.max(zeta(1.0 + a, ZETA_TOL)?);
    let mut candidates = vec![
        (two, LowerMethod::ContinuousLimit),
        (zeta(1.0 + 2.0 * a, ZETA_TOL)?, LowerMethod::PointEvaluation),
    ];
    if a > 1.0 {
        candidates.push((improved_lower_raw(a, ZETA_TOL)?, LowerMethod::Improved));
    }
    let (lower, lower_method) = candidates.into_iter().fold(
        (f64::NEG_INFINITY, LowerMethod::ContinuousLimit),
        |best, c| {
            if c.0 > best.0 {
                c
            } else {
                best
            }
        },
    );
    Ok(BoundReport {
        alpha,
        lower,
        upper,
        exact: false,
        lower_method,
        upper_method: UpperMethod::CauchySchwarzSup,
    })
}

/// `(lower - 1, upper - 1)` for the bounds of [`theorem_bounds`], computed
/// without subtracting 1 from values close to 1.
pub fn bound_gaps(alpha: Alpha) -> Result<(f64, f64)> {
    let a = alpha.get();
    let two = alpha.two_over() - 1.0;
    if a <= alpha0() {
        return Ok((two, two));
    }
    let upper = two.max(zeta_minus_one(1.0 + a, ZETA_TOL)?);
    let mut lower = two.max(zeta_minus_one(1.0 + 2.0 * a, ZETA_TOL)?);
    if a > 1.0 {
        // 1 - ζ(2α)/ζ(2α-1) = (ζ(2α-1) - ζ(2α)) / ζ(2α-1)
        let z1 = zeta_minus_one(2.0 * a - 1.0, ZETA_TOL)?;
        let z0 = zeta_minus_one(2.0 * a, ZETA_TOL)?;
        lower = lower.max((z1 - z0) / (1.0 + z1));
    }
    Ok((lower, upper))
}

/// `Re w` for the symbol value `w = φ(+∞)`, which must exceed `1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompositionQuery {
    re_w: f64,
}

impl CompositionQuery {
    pub fn new(re_w: f64) -> Result<Self> {
        if re_w > 0.5 && re_w.is_finite() {
            Ok(Self { re_w })
        } else {
            Err(domain("re_w", re_w, "need Re w > 1/2"))
        }
    }

    pub fn re_w(&self) -> f64 {
        self.re_w
    }

    /// `α = Re w - 1/2`.
    pub fn alpha(&self) -> Result<Alpha> {
        Alpha::new(self.re_w - 0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompositionBounds {
    pub re_w: f64,
    pub alpha: Alpha,
    /// `√ζ(2 Re w)`, the point-evaluation bound.
    pub lower: f64,
    /// `√(upper bound for ‖B_α‖)`.
    pub upper: f64,
    /// The upper bound is the supremum over the symbol class (`α ≤ α₀`).
    pub sharp: bool,
}

pub fn composition_bounds(q: CompositionQuery) -> Result<CompositionBounds> {
    let alpha = q.alpha()?;
    let report = theorem_bounds(alpha)?;
    Ok(CompositionBounds {
        re_w: q.re_w,
        alpha,
        lower: zeta(2.0 * q.re_w, ZETA_TOL)?.sqrt(),
        upper: report.upper.sqrt(),
        sharp: report.exact,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscBounds {
    /// `√(1/(1-r²))`
    pub lower: f64,
    /// `√((1+r)/(1-r))`
    pub upper: f64,
}

fn check_r(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(domain("r", r, "need 0 ≤ r < 1"))
    }
}

/// Bounds for a composition operator on the disc with `|φ(0)| = r`.
pub fn disc_bounds(r: f64) -> Result<DiscBounds> {
    check_r(r)?;
    Ok(DiscBounds {
        lower: (1.0 / (1.0 - r * r)).sqrt(),
        upper: ((1.0 + r) / (1.0 - r)).sqrt(),
    })
}

/// `α_r = α (1-r)/(1+r)`.
pub fn transfer_alpha_r(alpha: Alpha, r: f64) -> Result<Alpha> {
    check_r(r)?;
    Alpha::new(alpha.get() * (1.0 - r) / (1.0 + r))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RestatedCheck {
    pub alpha: Alpha,
    pub r: f64,
    pub alpha_r: Alpha,
    /// `√(upper bound for ‖B_{α_r}‖)`
    pub transferred: f64,
    /// `√(upper bound for ‖B_α‖) · √((1+r)/(1-r))`
    pub product: f64,
    /// `transferred ≤ product`.
    pub holds: bool,
    /// `(upper bound for ‖B_{α_r}‖) / (lower bound for ‖B_α‖)`.
    pub ratio: f64,
    /// `ratio < (1+r)/(1-r)`: the product bound cannot be sharp here.
    pub not_sharp: bool,
}

/// Compares the transferred bound `√‖B_{α_r}‖` with `√‖B_α‖ · ‖C_φ‖`.
pub fn restated_factor_check(alpha: Alpha, r: f64) -> Result<RestatedCheck> {
    let alpha_r = transfer_alpha_r(alpha, r)?;
    let here = theorem_bounds(alpha)?;
    let there = theorem_bounds(alpha_r)?;
    let disc = disc_bounds(r)?;
    let transferred = there.upper.sqrt();
    let product = here.upper.sqrt() * disc.upper;
    let ratio = there.upper / here.lower;
    let factor = (1.0 + r) / (1.0 - r);
    Ok(RestatedCheck {
        alpha,
        r,
        alpha_r,
        transferred,
        product,
        holds: transferred <= product * (1.0 + 1e-12),
        ratio,
        not_sharp: ratio < factor * (1.0 - 1e-12),
    })
}
