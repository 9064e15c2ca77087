//! Bracketing root refinement and the named roots: `α₀` (`αζ(1+α) = 2`),
//! the zeros `α₁`, `α₂` of the auxiliary functions `h₁`, `h₂`, and the
//! crossings of the bound curves with `2/α`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bounds::{h1, h2};
use crate::error::{domain, Error, Result};
use crate::special::zeta;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub value: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// `|f(value)|`.
    pub residual: f64,
    pub iterations: usize,
}

impl RootResult {
    pub fn width(&self) -> f64 {
        self.bracket_hi - self.bracket_lo
    }
}

/// Default bracket width for the named roots.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Spacing of the pre-refinement scan over the default bracket.
pub const PRECHECK_STEP: f64 = 0.01;
const DEFAULT_MAX_ITER: usize = 200;

/// Refines a root of `f` inside `[a, b]` until the bracket is at most `tol` wide.
///
/// Each iteration tries a secant step, kept only if it lands strictly inside
/// the current bracket, then bisects. Requires `f(a) f(b) < 0`.
pub fn refine_root<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RootResult> {
    refine_fallible(|x| Ok(f(x)), a, b, tol, max_iter)
}

fn refine_fallible<F: Fn(f64) -> Result<f64>>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RootResult> {
    if !(a < b) {
        return Err(Error::Precondition(format!(
            "bracket needs a < b, got [{a}, {b}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(domain("tol", tol, "must be positive"));
    }
    let (mut lo, mut hi) = (a, b);
    let (mut flo, mut fhi) = (f(lo)?, f(hi)?);
    if flo == 0.0 {
        return Ok(exact(lo, 0));
    }
    if fhi == 0.0 {
        return Ok(exact(hi, 0));
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::Bracket {
            lo,
            hi,
            detail: format!("f({lo}) = {flo} and f({hi}) = {fhi} share a sign"),
        });
    }

    let mut iterations = 0;
    while hi - lo > tol {
        if iterations == max_iter {
            let value = interpolate(lo, hi, flo, fhi);
            return Err(Error::Convergence {
                iterations,
                estimate: value,
                residual: f(value)?.abs(),
            });
        }
        iterations += 1;

        let x = interpolate(lo, hi, flo, fhi);
        if lo < x && x < hi {
            let fx = f(x)?;
            if fx == 0.0 {
                return Ok(exact(x, iterations));
            }
            if fx.signum() == flo.signum() {
                lo = x;
                flo = fx;
            } else {
                hi = x;
                fhi = fx;
            }
        }

        let mid = lo + 0.5 * (hi - lo);
        if !(lo < mid && mid < hi) {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(exact(mid, iterations));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }

    let value = interpolate(lo, hi, flo, fhi).clamp(lo, hi);
    Ok(RootResult {
        value,
        bracket_lo: lo,
        bracket_hi: hi,
        residual: f(value)?.abs(),
        iterations,
    })
}

fn exact(x: f64, iterations: usize) -> RootResult {
    RootResult {
        value: x,
        bracket_lo: x,
        bracket_hi: x,
        residual: 0.0,
        iterations,
    }
}

fn interpolate(lo: f64, hi: f64, flo: f64, fhi: f64) -> f64 {
    let x = hi - fhi * (hi - lo) / (fhi - flo);
    if x.is_finite() {
        x
    } else {
        lo + 0.5 * (hi - lo)
    }
}

/// Expected shape of `f` over the default bracket, checked before refining.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Increasing,
    Decreasing,
    /// Only a single sign change is required.
    SingleCrossing,
}

/// Scans `[a, b]` at spacing `step`, checks `shape`, and returns the grid
/// cell holding the unique sign change.
fn isolate<F: Fn(f64) -> Result<f64>>(
    f: &F,
    a: f64,
    b: f64,
    step: f64,
    shape: Shape,
) -> Result<(f64, f64)> {
    let cells = ((b - a) / step).round() as usize;
    let xs: Vec<f64> = (0..=cells)
        .map(|i| if i == cells { b } else { a + i as f64 * step })
        .collect();
    let ys = xs.iter().map(|&x| f(x)).collect::<Result<Vec<f64>>>()?;

    let monotone = match shape {
        Shape::Increasing => ys.windows(2).all(|w| w[0] < w[1]),
        Shape::Decreasing => ys.windows(2).all(|w| w[0] > w[1]),
        Shape::SingleCrossing => true,
    };
    if !monotone {
        return Err(Error::Bracket {
            lo: a,
            hi: b,
            detail: format!("expected {shape:?} on a {step} grid"),
        });
    }
    let changes: Vec<usize> = (0..cells)
        .filter(|&i| ys[i] == 0.0 || ys[i].signum() != ys[i + 1].signum())
        .collect();
    match changes.as_slice() {
        [i] => Ok((xs[*i], xs[*i + 1])),
        _ => Err(Error::Bracket {
            lo: a,
            hi: b,
            detail: format!(
                "{} sign changes on a {step} grid, expected one",
                changes.len()
            ),
        }),
    }
}

fn solve_named<F: Fn(f64) -> Result<f64>>(
    f: F,
    a: f64,
    b: f64,
    shape: Shape,
    tol: f64,
) -> Result<RootResult> {
    let (lo, hi) = isolate(&f, a, b, PRECHECK_STEP, shape)?;
    refine_fallible(f, lo, hi, tol, DEFAULT_MAX_ITER)
}

fn zeta_tol(tol: f64) -> f64 {
    tol / 100.0
}

/// `α₀`: the root of `αζ(1+α) - 2` on `[1, 2]`.
pub fn solve_alpha0(tol: f64) -> Result<RootResult> {
    let zt = zeta_tol(tol);
    solve_named(
        |a| Ok(a * zeta(1.0 + a, zt)? - 2.0),
        1.0,
        2.0,
        Shape::Increasing,
        tol,
    )
}

/// Roots `(α₁, α₂)` of `h₁` and `h₂` on `[1, 2]`.
pub fn solve_h_roots(tol: f64) -> Result<(RootResult, RootResult)> {
    let a1 = solve_named(h1, 1.0, 2.0, Shape::Decreasing, tol)?;
    let a2 = solve_named(h2, 1.0, 2.0, Shape::Increasing, tol)?;
    if !(a1.value > a2.value) {
        return Err(Error::Precondition(format!(
            "expected α₁ > α₂, got {} and {}",
            a1.value, a2.value
        )));
    }
    Ok((a1, a2))
}

/// Crossings with `2/α` of `ζ(1+α)`, `ζ(1+2α)`, and the improved lower bound
/// `2 - ζ(2α)/ζ(2α-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossings {
    pub zeta_vs_2a: RootResult,
    pub zeta2_vs_2a: RootResult,
    pub improved_vs_2a: RootResult,
}

/// Left end of the bracket for the improved-bound crossing. At `α = 1` the
/// difference tends to zero as `ζ(2α-1)` blows up, so the scan starts one
/// grid step to the right.
pub const IMPROVED_BRACKET_LO: f64 = 1.0 + PRECHECK_STEP;

pub fn solve_crossings(tol: f64) -> Result<Crossings> {
    let zt = zeta_tol(tol);
    let zeta_vs_2a = solve_named(
        |a| Ok(zeta(1.0 + a, zt)? - 2.0 / a),
        1.0,
        2.0,
        Shape::SingleCrossing,
        tol,
    )?;
    let zeta2_vs_2a = solve_named(
        |a| Ok(zeta(1.0 + 2.0 * a, zt)? - 2.0 / a),
        1.0,
        2.0,
        Shape::Increasing,
        tol,
    )?;
    let improved_vs_2a = solve_named(
        |a| Ok(improved_lower_raw(a, zt)? - 2.0 / a),
        IMPROVED_BRACKET_LO,
        2.0,
        Shape::SingleCrossing,
        tol,
    )?;
    Ok(Crossings {
        zeta_vs_2a,
        zeta2_vs_2a,
        improved_vs_2a,
    })
}

/// `2 - ζ(2α)/ζ(2α-1)` for `α > 1`.
pub(crate) fn improved_lower_raw(alpha: f64, tol: f64) -> Result<f64> {
    if !(alpha > 1.0) {
        return Err(Error::Divergence(format!(
            "ζ(2α-1) has its pole at α = 1, got α = {alpha}"
        )));
    }
    Ok(2.0 - zeta(2.0 * alpha, tol)? / zeta(2.0 * alpha - 1.0, tol)?)
}

static ALPHA0: OnceLock<f64> = OnceLock::new();

/// `α₀ = 1.4838...`, computed on first use and cached for the process.
pub fn alpha0() -> f64 {
    *ALPHA0.get_or_init(|| {
        solve_alpha0(1e-13)
            .expect("αζ(1+α) - 2 changes sign exactly once on [1, 2]")
            .value
    })
}
