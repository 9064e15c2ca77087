//! Numerics for the discrete Hilbert-type bilinear forms
//!
//! ```text
//! B_α(a, b) = Σ_m Σ_n a_m b_n (mn)^(α-1/2) / max(m, n)^(2α)
//! ```
//!
//! on ℓ² × ℓ². The crate evaluates the two-sided bounds for the norm of
//! `B_α`, the Euler–Maclaurin machinery behind the upper bound, finite-section
//! spectral lower bounds, the crossing points of the competing bounds, and
//! the scalar bounds for composition operators that follow from them.
//!
//! Modules:
//!
//! * [`special`]: Bernoulli polynomials, power-sum Euler–Maclaurin evaluation
//!   with remainder signs, and the Riemann zeta function for real `s > 1`.
//! * [`kernel`]: the kernel `K_α`, the Poisson-type integral, and the
//!   continuous form norm.
//! * [`bounds`]: the majorant sequence `S_α(m)`, closed-form estimates, and
//!   the assembled [`bounds::BoundReport`].
//! * [`normest`]: truncated kernel matrices, power iteration, Rayleigh
//!   quotients and the max-kernel double-sum identity.
//! * [`roots`]: bracketing root refinement for `α₀`, `α₁`, `α₂` and the
//!   crossings of the bound curves.
//! * [`verify`]: invariant suites that re-derive the inequalities from
//!   direct sums.
//!
//! Data-parallel loops go through [`exec::Execution`]; with the default
//! `parallel` feature they run on rayon, otherwise sequentially. Results do
//! not depend on the execution mode.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod exec;
pub mod kernel;
pub mod normest;
pub mod quad;
pub mod roots;
pub mod special;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use kernel::Alpha;
