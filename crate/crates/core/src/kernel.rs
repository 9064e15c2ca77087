//! The kernel `K_α(x, y) = (xy)^(α-1/2) / max(x, y)^(2α)` and its continuous
//! bilinear form.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quad::adaptive_simpson;

/// The kernel parameter `α`, strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha.is_finite() {
            Ok(Self(alpha))
        } else {
            Err(domain("alpha", alpha, "must satisfy 0 < alpha < ∞"))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// `2/α`, the norm of the continuous form.
    #[inline]
    pub fn two_over(self) -> f64 {
        2.0 / self.0
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `K_α(x, y)` for `x, y > 0`.
pub fn kernel_eval(alpha: Alpha, x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(
            "x",
            x,
            "kernel arguments must be positive and finite",
        ));
    }
    if !(y > 0.0 && y.is_finite()) {
        return Err(domain(
            "y",
            y,
            "kernel arguments must be positive and finite",
        ));
    }
    Ok(kernel_unchecked(alpha.get(), x, y))
}

/// `(min/max)^(α-1/2) / max`, which equals `K_α` and cannot overflow.
#[inline]
pub(crate) fn kernel_unchecked(alpha: f64, x: f64, y: f64) -> f64 {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    if lo == hi {
        return 1.0 / hi;
    }
    (lo / hi).powf(alpha - 0.5) / hi
}

/// `(α/π) ∫ x^(it) / (α² + t²) dt = max(x, 1/x)^(-α)`.
pub fn i_alpha(alpha: Alpha, x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain("x", x, "must be positive and finite"));
    }
    Ok(x.max(1.0 / x).powf(-alpha.get()))
}

/// Tolerance and recursion depth for the adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureBudget {
    tol: f64,
    max_refinements: u32,
}

impl QuadratureBudget {
    pub fn new(tol: f64, max_refinements: u32) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(domain("tol", tol, "must be positive"));
        }
        if max_refinements == 0 {
            return Err(domain("max_refinements", 0.0, "must be positive"));
        }
        Ok(Self {
            tol,
            max_refinements,
        })
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_refinements(&self) -> u32 {
        self.max_refinements
    }
}

impl Default for QuadratureBudget {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_refinements: 50,
        }
    }
}

/// `C_α = ∫_0^∞ K_α(1, y) y^(-1/2) dy` by adaptive quadrature.
///
/// The range splits at `y = 1`; the half `(1, ∞)` is mapped onto `(0, 1)` by
/// `y = 1/u`. Both halves then have an integrable power singularity at the
/// origin, which the substitution `u = t^q` with `q = ⌈2/α⌉` removes. Each
/// half is integrated to `tol / 2`.
pub fn continuous_norm_quadrature(alpha: Alpha, budget: QuadratureBudget) -> Result<f64> {
    let a = alpha.get();
    let q = (2.0 / a).ceil().max(1.0);
    let weight = |y: f64| kernel_unchecked(a, 1.0, y) / y.sqrt();

    // t ↦ w(t^q) q t^(q-1); the mapped integrand vanishes at t = 0
    let lower = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        weight(t.powf(q)) * q * t.powf(q - 1.0)
    };
    // y = 1/u, then u = t^q: w(1/u) / u² du
    let upper = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let u = t.powf(q);
        weight(1.0 / u) / (u * u) * q * t.powf(q - 1.0)
    };

    let half = 0.5 * budget.tol;
    let run = |f: &dyn Fn(f64) -> f64| adaptive_simpson(f, 0.0, 1.0, half, budget.max_refinements);
    match (run(&lower), run(&upper)) {
        (Ok(l), Ok(u)) => Ok(l.value + u.value),
        (l, u) => {
            let estimate = value_of(&l) + value_of(&u);
            Err(Error::Accuracy {
                tol: budget.tol,
                estimate,
                budget: budget_of(&l) + budget_of(&u),
            })
        }
    }
}

fn value_of(r: &Result<crate::quad::Quadrature>) -> f64 {
    match r {
        Ok(q) => q.value,
        Err(Error::Accuracy { estimate, .. }) => *estimate,
        Err(_) => f64::NAN,
    }
}

fn budget_of(r: &Result<crate::quad::Quadrature>) -> f64 {
    match r {
        Ok(q) => q.error_estimate,
        Err(Error::Accuracy { budget, .. }) => *budget,
        Err(_) => f64::INFINITY,
    }
}

/// `H_α(f, f) / ‖f‖²` for `f(t) = t^(-1/2-ε)` on `(1, ∞)`.
///
/// With `‖f‖² = 1/(2ε)` the double integral is exactly `1/(ε(α+ε))`, so the
/// ratio is `2/(α+ε)`. The leading part `(1/(α-ε) + 1/(α+ε))‖f‖²` differs
/// from it by `1/(α²-ε²)`.
pub fn continuous_extremal_ratio(alpha: Alpha, eps: f64) -> Result<f64> {
    let a = alpha.get();
    if !(eps > 0.0 && eps < a) {
        return Err(Error::Precondition(format!(
            "extremal family needs 0 < eps < alpha, got eps = {eps}, alpha = {a}"
        )));
    }
    let norm_sq = 1.0 / (2.0 * eps);
    let form = 1.0 / (eps * (a + eps));
    Ok(form / norm_sq)
}

/// The leading term `1/(α-ε) + 1/(α+ε)` of the extremal ratio.
pub fn continuous_extremal_leading(alpha: Alpha, eps: f64) -> Result<f64> {
    let a = alpha.get();
    if !(eps > 0.0 && eps < a) {
        return Err(Error::Precondition(format!(
            "extremal family needs 0 < eps < alpha, got eps = {eps}, alpha = {a}"
        )));
    }
    Ok(1.0 / (a - eps) + 1.0 / (a + eps))
}
