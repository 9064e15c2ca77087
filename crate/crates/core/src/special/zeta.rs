use super::euler_maclaurin::power_tail;
use crate::error::{domain, Result};

/// Largest number of directly summed terms before the Euler–Maclaurin tail.
pub const ZETA_MAX_TERMS: u64 = 1_000_000;

/// Riemann zeta function `ζ(s)` for real `s > 1`, absolute error at most `tol`.
///
/// Direct summation up to a cutoff chosen so that the second-order
/// Euler–Maclaurin tail has remainder bound at most `tol / 2`.
pub fn zeta(s: f64, tol: f64) -> Result<f64> {
    check(s)?;
    Ok(power_tail(-s, 0, tol)?.value)
}

/// `ζ(s) - 1`, computed without the cancellation of subtracting from `ζ(s)`.
pub fn zeta_minus_one(s: f64, tol: f64) -> Result<f64> {
    check(s)?;
    Ok(power_tail(-s, 1, tol)?.value)
}

fn check(s: f64) -> Result<()> {
    if s > 1.0 && s.is_finite() {
        Ok(())
    } else {
        Err(domain("s", s, "zeta is summed as a series, need 1 < s < ∞"))
    }
}
