//! Bernoulli polynomials, Euler–Maclaurin evaluation of power sums, and the
//! Riemann zeta function on the real half-line `s > 1`.

mod bernoulli;
mod euler_maclaurin;
mod zeta;

pub use bernoulli::{bernoulli_number, bernoulli_poly, BernoulliDegree};
pub use euler_maclaurin::{
    em_partial_sum, em_tail_sum, power_tail, remainder_sign_check, EmResult, PowerSum,
    RemainderSign, SIGN_CHECK_PANELS, SIGN_CHECK_THRESHOLD,
};
pub use zeta::{zeta, zeta_minus_one, ZETA_MAX_TERMS};
