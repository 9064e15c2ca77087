//! Simpson quadrature: a fixed composite rule and an adaptive variant.

use crate::error::{Error, Result};

/// Composite Simpson rule on `[a, b]` with `panels` panels (rounded up to even).
pub fn composite_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = (panels.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut odd = crate::sum::CompensatedSum::new();
    let mut even = crate::sum::CompensatedSum::new();
    for i in 1..n {
        let x = a + h * i as f64;
        if i % 2 == 1 {
            odd.add(f(x));
        } else {
            even.add(f(x));
        }
    }
    h / 3.0 * (f(a) + f(b) + 4.0 * odd.value() + 2.0 * even.value())
}

/// Outcome of [`adaptive_simpson`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the per-panel Richardson error estimates.
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
///
/// Each bisection hands `tol / 2` to both halves; a panel is accepted when
/// the two-level difference is below `15 * tol`. Exceeding `max_depth`
/// levels on any panel returns [`Error::Accuracy`] with the best estimate.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<Quadrature> {
    if !(tol > 0.0) {
        return Err(crate::error::domain("tol", tol, "must be positive"));
    }
    let fa = f(a);
    let fm = f(0.5 * (a + b));
    let fb = f(b);
    let whole = simpson(a, b, fa, fm, fb);
    let mut state = State {
        evaluations: 3,
        error: 0.0,
        exhausted: false,
    };
    let value = recurse(&f, a, b, fa, fm, fb, whole, tol, max_depth, &mut state);
    if state.exhausted {
        return Err(Error::Accuracy {
            tol,
            estimate: value,
            budget: state.error,
        });
    }
    Ok(Quadrature {
        value,
        error_estimate: state.error,
        evaluations: state.evaluations,
    })
}

struct State {
    evaluations: usize,
    error: f64,
    exhausted: bool,
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    state: &mut State,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    state.evaluations += 2;
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let diff = left + right - whole;
    if diff.abs() <= 15.0 * tol {
        state.error += diff.abs() / 15.0;
        return left + right + diff / 15.0;
    }
    if depth == 0 {
        state.exhausted = true;
        state.error += diff.abs() / 15.0;
        return left + right + diff / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, state)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, state)
}
