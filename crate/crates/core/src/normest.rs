//! Finite-section lower bounds for `‖B_α‖`.
//!
//! The `N × N` section of `K_α` is entrywise positive and symmetric, so its
//! top eigenvalue is simple and bounded by the norm of the full form. Power
//! iteration from a positive start vector converges to it, and every Rayleigh
//! quotient is a lower bound along the way.

use serde::{Deserialize, Serialize};

use crate::bounds::ZETA_TOL;
use crate::error::{domain, Error, Result};
use crate::exec::Execution;
use crate::kernel::{kernel_unchecked, Alpha};
use crate::roots::improved_lower_raw;
use crate::special::zeta;
use crate::sum::{compensated, CompensatedSum};

/// Largest dense section that [`build_truncated`] will allocate.
pub const DENSE_CAP: usize = 20_000;
/// Sections up to this size use dense storage in [`section_top_eigen`].
pub const DENSE_DEFAULT_MAX: usize = 4096;

/// A symmetric linear operator on `R^n`.
pub trait KernelOperator {
    fn dim(&self) -> usize;
    /// `y = A x`.
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// Dense `N × N` section with entries `K_α(m, n)`, `1 ≤ m, n ≤ N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedKernelMatrix {
    alpha: Alpha,
    n: usize,
    entries: Vec<f64>,
    exec: Execution,
}

pub fn build_truncated(alpha: Alpha, n: usize) -> Result<TruncatedKernelMatrix> {
    build_truncated_with(alpha, n, Execution::default())
}

pub fn build_truncated_with(
    alpha: Alpha,
    n: usize,
    exec: Execution,
) -> Result<TruncatedKernelMatrix> {
    if n == 0 {
        return Err(domain("n", 0.0, "section dimension must be at least 1"));
    }
    if n > DENSE_CAP {
        return Err(Error::Resource { n, cap: DENSE_CAP });
    }
    let a = alpha.get();
    let mut entries = vec![0.0; n * n];
    exec.for_each_row(&mut entries, n, |i, row| {
        let x = (i + 1) as f64;
        for (j, e) in row.iter_mut().enumerate() {
            *e = kernel_unchecked(a, x, (j + 1) as f64);
        }
    });
    Ok(TruncatedKernelMatrix {
        alpha,
        n,
        entries,
        exec,
    })
}

impl TruncatedKernelMatrix {
    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(m, k)` with 1-based indices.
    pub fn get(&self, m: usize, k: usize) -> f64 {
        self.entries[(m - 1) * self.n + (k - 1)]
    }

    pub fn row(&self, m: usize) -> &[f64] {
        &self.entries[(m - 1) * self.n..m * self.n]
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}

impl KernelOperator for TruncatedKernelMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n;
        let rows = self.exec.map_indices(n, |i| {
            self.entries[i * n..(i + 1) * n]
                .iter()
                .zip(x)
                .map(|(a, b)| a * b)
                .sum::<f64>()
        });
        y.copy_from_slice(&rows);
    }
}

/// The `N × N` section applied in `O(N)` without storing it.
///
/// With `β = α - 1/2`,
/// `(K x)_m = (1/m) Σ_{n≤m} (n/m)^β x_n + Σ_{n>m} (m/n)^β x_n / n`,
/// and both sums follow from one-step recurrences in `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixFreeKernel {
    alpha: Alpha,
    n: usize,
}

impl MatrixFreeKernel {
    pub fn new(alpha: Alpha, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("n", 0.0, "section dimension must be at least 1"));
        }
        Ok(Self { alpha, n })
    }
}

impl KernelOperator for MatrixFreeKernel {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let beta = self.alpha.get() - 0.5;
        let n = self.n;
        // ratio[m] = (m / (m+1))^β for 1-based m
        let ratio: Vec<f64> = (1..n)
            .map(|m| (m as f64 / (m + 1) as f64).powf(beta))
            .collect();

        let mut below = 0.0;
        for m in 1..=n {
            below = if m == 1 {
                x[0]
            } else {
                below * ratio[m - 2] + x[m - 1]
            };
            y[m - 1] = below / m as f64;
        }
        let mut above = 0.0;
        for m in (1..n).rev() {
            above = ratio[m - 1] * (x[m] / (m + 1) as f64 + above);
            y[m - 1] += above;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub value: f64,
    pub iterations: usize,
    /// `‖A v - λ v‖` for the final unit vector `v`.
    pub residual: f64,
}

/// Dominant eigenvalue by power iteration from `v_m = m^(-1/2)`.
///
/// Stops once both the change in the Rayleigh quotient and the residual are
/// below `tol`. The returned value is the Rayleigh quotient of a unit vector.
pub fn top_eigen<O: KernelOperator + ?Sized>(
    op: &O,
    tol: f64,
    max_iter: usize,
) -> Result<EigenResult> {
    if !(tol > 0.0) {
        return Err(domain("tol", tol, "must be positive"));
    }
    let n = op.dim();
    let mut v: Vec<f64> = (1..=n).map(|m| (m as f64).powf(-0.5)).collect();
    normalize(&mut v);
    let mut w = vec![0.0; n];
    let mut prev = f64::NAN;
    let mut lambda = f64::NAN;
    let mut residual = f64::INFINITY;

    for iteration in 1..=max_iter {
        op.apply(&v, &mut w);
        lambda = compensated(v.iter().zip(&w).map(|(a, b)| a * b));
        residual = compensated(w.iter().zip(&v).map(|(a, b)| {
            let d = a - lambda * b;
            d * d
        }))
        .sqrt();
        if residual < tol && (lambda - prev).abs() < tol {
            return Ok(EigenResult {
                value: lambda,
                iterations: iteration,
                residual,
            });
        }
        prev = lambda;
        std::mem::swap(&mut v, &mut w);
        normalize(&mut v);
    }
    Err(Error::Convergence {
        iterations: max_iter,
        estimate: lambda,
        residual,
    })
}

fn normalize(v: &mut [f64]) {
    let norm = compensated(v.iter().map(|x| x * x)).sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

/// Top eigenvalue of the `n`-section, dense up to [`DENSE_DEFAULT_MAX`] and
/// matrix-free beyond.
pub fn section_top_eigen(alpha: Alpha, n: usize, tol: f64, max_iter: usize) -> Result<EigenResult> {
    if n <= DENSE_DEFAULT_MAX {
        top_eigen(&build_truncated(alpha, n)?, tol, max_iter)
    } else {
        top_eigen(&MatrixFreeKernel::new(alpha, n)?, tol, max_iter)
    }
}

/// Trial vectors for Rayleigh quotients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TestVector {
    /// `a_m = m^(-1/2-ε)` with `0 < ε < α`.
    EpsFamily { eps: f64 },
    /// `a_m = m^(-α+1/2)`, square-summable only for `α > 1`.
    AlphaFamily,
}

impl TestVector {
    fn validate(&self, alpha: Alpha) -> Result<()> {
        match *self {
            TestVector::EpsFamily { eps } if !(eps > 0.0 && eps < alpha.get()) => {
                Err(Error::Precondition(format!(
                    "eps family needs 0 < eps < alpha, got eps = {eps}, alpha = {alpha}"
                )))
            }
            TestVector::AlphaFamily if alpha.get() <= 1.0 => Err(Error::Divergence(format!(
                "m^(-α+1/2) is not square-summable for α = {alpha} ≤ 1"
            ))),
            _ => Ok(()),
        }
    }

    fn exponent(&self, alpha: Alpha) -> f64 {
        match *self {
            TestVector::EpsFamily { eps } => -0.5 - eps,
            TestVector::AlphaFamily => 0.5 - alpha.get(),
        }
    }
}

/// `B_α(a, a) / ‖a‖²` over the first `n` coordinates of the trial vector.
pub fn rayleigh_quotient(alpha: Alpha, spec: TestVector, n: usize) -> Result<f64> {
    spec.validate(alpha)?;
    let op = MatrixFreeKernel::new(alpha, n)?;
    let p = spec.exponent(alpha);
    let a: Vec<f64> = (1..=n).map(|m| (m as f64).powf(p)).collect();
    let mut ka = vec![0.0; n];
    op.apply(&a, &mut ka);
    let form = compensated(a.iter().zip(&ka).map(|(x, y)| x * y));
    let norm_sq = compensated(a.iter().map(|x| x * x));
    Ok(form / norm_sq)
}

/// The `n → ∞` quotient for [`TestVector::AlphaFamily`]: `2 - ζ(2α)/ζ(2α-1)`.
pub fn alpha_family_limit(alpha: Alpha) -> Result<f64> {
    TestVector::AlphaFamily.validate(alpha)?;
    improved_lower_raw(alpha.get(), ZETA_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxMaxSum {
    /// `Σ_{m,n ≤ N} max(m, n)^(-2α)`
    pub truncated: f64,
    /// `2ζ(2α-1) - ζ(2α)`
    pub closed_form: f64,
}

/// `Σ_{m,n ≤ N} max(m, n)^(-2α)`, summed as `Σ_k (2k-1) k^(-2α)`, against
/// its limit `2ζ(2α-1) - ζ(2α)`.
pub fn maxmax_double_sum(alpha: Alpha, n: u64) -> Result<MaxMaxSum> {
    let a = alpha.get();
    if a <= 1.0 {
        return Err(Error::Divergence(format!(
            "Σ max(m,n)^(-2α) diverges for α = {a} ≤ 1"
        )));
    }
    if n == 0 {
        return Err(domain("n", 0.0, "must be a positive integer"));
    }
    let mut acc = CompensatedSum::new();
    for k in 1..=n {
        let kf = k as f64;
        acc.add((2.0 * kf - 1.0) * kf.powf(-2.0 * a));
    }
    Ok(MaxMaxSum {
        truncated: acc.value(),
        closed_form: 2.0 * zeta(2.0 * a - 1.0, ZETA_TOL)? - zeta(2.0 * a, ZETA_TOL)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailureCheck {
    pub alpha: Alpha,
    pub improved_lower: f64,
    pub two_over_alpha: f64,
    /// `improved_lower > 2/α`: the bound `‖B_α‖ ≤ 2/α` is false here.
    pub violates: bool,
}

pub fn failure_check(alpha: Alpha) -> Result<FailureCheck> {
    let improved_lower = improved_lower_raw(alpha.get(), ZETA_TOL)?;
    let two_over_alpha = alpha.two_over();
    Ok(FailureCheck {
        alpha,
        improved_lower,
        two_over_alpha,
        violates: improved_lower > two_over_alpha,
    })
}
