//! Invariant suites behind `verify`: each re-derives a family of inequalities
//! or identities from direct sums and records every violated case.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{h1, h2, lemma4_estimate, restated_factor_check, s_alpha_sup_with, Estimate};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::kernel::Alpha;
use crate::normest::{maxmax_double_sum, rayleigh_quotient, TestVector};
use crate::roots::alpha0;
use crate::special::{power_tail, remainder_sign_check, zeta, RemainderSign};
use crate::sum::{compensated, CompensatedSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemma4,
    Signs,
    MonotoneH,
    Identity,
    SupFormula,
    Transference,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Lemma4,
        Suite::Signs,
        Suite::MonotoneH,
        Suite::Identity,
        Suite::SupFormula,
        Suite::Transference,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma4 => "lemma4",
            Suite::Signs => "signs",
            Suite::MonotoneH => "monotone_h",
            Suite::Identity => "identity",
            Suite::SupFormula => "sup_formula",
            Suite::Transference => "transference",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub inputs: BTreeMap<String, f64>,
    pub expected: String,
    pub observed: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOutcome {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn map(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn failure(
    inputs: &[(&str, f64)],
    expected: impl Into<String>,
    observed: &[(&str, f64)],
) -> Failure {
    Failure {
        inputs: map(inputs),
        expected: expected.into(),
        observed: map(observed),
    }
}

/// Rounding allowance for an inequality between two computed values.
fn slack(a: f64, b: f64) -> f64 {
    16.0 * f64::EPSILON * a.abs().max(b.abs())
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn check(&mut self, ok: bool, make: impl FnOnce() -> Failure) {
        self.cases += 1;
        if !ok {
            self.failures.push(make());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }

    fn finish(self, suite: Suite) -> VerifyOutcome {
        VerifyOutcome {
            suite: suite.name().to_string(),
            cases: self.cases,
            failures: self.failures,
        }
    }
}

pub fn run_suite(suite: Suite) -> Result<VerifyOutcome> {
    run_suite_with(suite, Execution::default())
}

pub fn run_suite_with(suite: Suite, exec: Execution) -> Result<VerifyOutcome> {
    let tally = match suite {
        Suite::Lemma4 => lemma4(exec)?,
        Suite::Signs => signs()?,
        Suite::MonotoneH => monotone_h()?,
        Suite::Identity => identity()?,
        Suite::SupFormula => sup_formula(exec)?,
        Suite::Transference => transference()?,
    };
    Ok(tally.finish(suite))
}

/// `α = 0.1, 0.2, ..., 3.0`.
pub const LEMMA4_ALPHA_STEPS: usize = 30;
pub const LEMMA4_M_MAX: u64 = 1000;

fn lemma4(exec: Execution) -> Result<Tally> {
    let per_alpha = exec.map_indices(LEMMA4_ALPHA_STEPS, |i| lemma4_tally((i + 1) as f64 / 10.0));
    let mut tally = Tally::default();
    for t in per_alpha {
        tally.merge(t?);
    }
    Ok(tally)
}

/// The `lemma4` checks at a single `α`, all `m ≤ 1000`.
pub fn lemma4_at(a: f64) -> Result<VerifyOutcome> {
    Ok(lemma4_tally(a)?.finish(Suite::Lemma4))
}

fn lemma4_tally(a: f64) -> Result<Tally> {
    let alpha = Alpha::new(a)?;
    let mut tally = Tally::default();
    let m_max = LEMMA4_M_MAX;
    let p_tail = -a - 1.0;

    let z = zeta(1.0 + a, 1e-14)?;
    let zl = lemma4_estimate(Estimate::ZetaLower, alpha, 1)?;
    tally.check(z >= zl - slack(z, zl), || {
        failure(
            &[("alpha", a)],
            "zeta(1+alpha) >= zeta_lower",
            &[("zeta", z), ("estimate", zl)],
        )
    });

    // tails T(m) = Σ_{n>m} n^(-α-1), from T(m_max) downwards
    let far = power_tail(p_tail, m_max, 1e-20 * (m_max as f64).powf(-a))?.value;
    let mut tails = vec![0.0; m_max as usize + 1];
    let mut acc = CompensatedSum::new();
    acc.add(far);
    tails[m_max as usize] = far;
    for m in (1..m_max).rev() {
        acc.add(((m + 1) as f64).powf(p_tail));
        tails[m as usize] = acc.value();
    }

    let mut head = CompensatedSum::new();
    for m in 1..=m_max {
        let mf = m as f64;
        let scale = mf.powf(a);
        let tail = scale * tails[m as usize];
        let bound = lemma4_estimate(Estimate::TailUpper, alpha, m)?;
        tally.check(tail <= bound + slack(tail, bound), || {
            failure(
                &[("alpha", a), ("m", mf)],
                "m^a * sum_{n>m} n^(-a-1) <= tail_upper",
                &[("direct", tail), ("estimate", bound)],
            )
        });

        head.add(mf.powf(a - 1.0));
        let partial = head.value() / scale;
        for which in [Estimate::PartialUpper12, Estimate::PartialUpper23] {
            if !which.applies(a) {
                continue;
            }
            let bound = lemma4_estimate(which, alpha, m)?;
            tally.check(partial <= bound + slack(partial, bound), || {
                failure(
                    &[("alpha", a), ("m", mf)],
                    format!("m^-a * sum_(n<=m) n^(a-1) <= {which:?}"),
                    &[("direct", partial), ("estimate", bound)],
                )
            });
        }
    }
    Ok(tally)
}

pub const SIGN_EXPONENTS: [f64; 3] = [-0.5, -2.0, -3.0];
pub const SIGN_OFFSETS: [f64; 3] = [1.0, 5.0, 50.0];

fn signs() -> Result<Tally> {
    let mut tally = Tally::default();
    for k in [1u8, 2] {
        let expected = if k == 1 {
            RemainderSign::Positive
        } else {
            RemainderSign::Negative
        };
        for e in SIGN_EXPONENTS {
            for x0 in SIGN_OFFSETS {
                let got = remainder_sign_check(e, k, x0)?;
                tally.check(got == expected, || {
                    failure(
                        &[("k", k as f64), ("g_exponent", e), ("x0", x0)],
                        format!("sign = {expected:?}"),
                        &[("sign", sign_code(got))],
                    )
                });
            }
        }
    }
    Ok(tally)
}

fn sign_code(s: RemainderSign) -> f64 {
    match s {
        RemainderSign::Negative => -1.0,
        RemainderSign::Positive => 1.0,
        RemainderSign::Unknown => 0.0,
    }
}

fn monotone_h() -> Result<Tally> {
    let mut tally = Tally::default();
    let grid: Vec<f64> = (0..=1000).map(|i| 1.0 + i as f64 / 1000.0).collect();
    for w in grid.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (h1a, h1b) = (h1(a)?, h1(b)?);
        tally.check(h1a > h1b, || {
            failure(
                &[("alpha", a), ("next", b)],
                "h1 strictly decreasing",
                &[("h1", h1a), ("h1_next", h1b)],
            )
        });
        let (h2a, h2b) = (h2(a)?, h2(b)?);
        tally.check(h2a < h2b, || {
            failure(
                &[("alpha", a), ("next", b)],
                "h2 strictly increasing",
                &[("h2", h2a), ("h2_next", h2b)],
            )
        });
    }
    let ends = [h1(1.0)?, h1(2.0)?, h2(1.0)?, h2(2.0)?];
    tally.check(
        ends[0] > 0.0 && ends[1] < 0.0 && ends[2] < 0.0 && ends[3] > 0.0,
        || {
            failure(
                &[],
                "h1 and h2 change sign on [1, 2]",
                &[
                    ("h1(1)", ends[0]),
                    ("h1(2)", ends[1]),
                    ("h2(1)", ends[2]),
                    ("h2(2)", ends[3]),
                ],
            )
        },
    );
    Ok(tally)
}

pub const IDENTITY_ALPHAS: [f64; 3] = [1.25, 1.5, 2.0];
pub const IDENTITY_SIZES: [u64; 4] = [100, 1_000, 10_000, 100_000];

fn identity() -> Result<Tally> {
    let mut tally = Tally::default();
    for a in IDENTITY_ALPHAS {
        let alpha = Alpha::new(a)?;
        let mut prev: Option<(f64, f64)> = None;
        for n in IDENTITY_SIZES {
            let s = maxmax_double_sum(alpha, n)?;
            let gap = s.closed_form - s.truncated;
            let nf = n as f64;
            tally.check(gap > 0.0, || {
                failure(
                    &[("alpha", a), ("n", nf)],
                    "truncated < 2 zeta(2a-1) - zeta(2a)",
                    &[("truncated", s.truncated), ("closed_form", s.closed_form)],
                )
            });
            if let Some((pt, pg)) = prev {
                tally.check(s.truncated >= pt && gap < pg, || {
                    failure(
                        &[("alpha", a), ("n", nf)],
                        "truncated nondecreasing, gap shrinking",
                        &[
                            ("truncated", s.truncated),
                            ("previous", pt),
                            ("gap", gap),
                            ("previous_gap", pg),
                        ],
                    )
                });
            }
            prev = Some((s.truncated, gap));

            // the alpha-family quotient is the truncated identity over its norm
            let q = rayleigh_quotient(alpha, TestVector::AlphaFamily, n as usize)?;
            let norm_sq = compensated((1..=n).map(|m| (m as f64).powf(1.0 - 2.0 * a)));
            let expected = s.truncated / norm_sq;
            tally.check((q - expected).abs() <= 1e-12 * expected, || {
                failure(
                    &[("alpha", a), ("n", nf)],
                    "rayleigh(alpha family) = truncated / norm^2",
                    &[("rayleigh", q), ("ratio", expected)],
                )
            });
        }
    }
    Ok(tally)
}

pub const SUP_ALPHAS: [f64; 8] = [0.5, 1.0, 1.2, 1.5, 2.0, 2.5, 3.0, 4.0];
pub const SUP_M_MAX: u64 = 100_000;
pub const SUP_TOLERANCE: f64 = 1e-6;

fn sup_formula(exec: Execution) -> Result<Tally> {
    let mut tally = Tally::default();
    let results = exec.map_slice(&SUP_ALPHAS, |&a| -> Result<(f64, f64)> {
        let alpha = Alpha::new(a)?;
        let sup = s_alpha_sup_with(alpha, SUP_M_MAX, 1e-12, exec)?.sup;
        Ok((sup, alpha.two_over().max(zeta(1.0 + a, 1e-13)?)))
    });
    for (a, r) in SUP_ALPHAS.iter().zip(results) {
        let (sup, formula) = r?;
        tally.check((sup - formula).abs() <= SUP_TOLERANCE, || {
            failure(
                &[("alpha", *a), ("m_max", SUP_M_MAX as f64)],
                "sup S = max(2/a, zeta(1+a))",
                &[("sup", sup), ("formula", formula)],
            )
        });
    }
    Ok(tally)
}

pub const TRANSFER_RADII: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 0.9];

fn transference() -> Result<Tally> {
    let mut tally = Tally::default();
    let a0 = alpha0();
    let mut alphas: Vec<f64> = (1..=14).map(|i| i as f64 / 10.0).collect();
    alphas.extend([a0, 1.6, 2.0, 3.0, 6.0, 10.0]);
    for &a in &alphas {
        for r in TRANSFER_RADII {
            let c = restated_factor_check(Alpha::new(a)?, r)?;
            tally.check(c.holds, || {
                failure(
                    &[("alpha", a), ("r", r)],
                    "sqrt(upper(a_r)) <= sqrt(upper(a)) * sqrt((1+r)/(1-r))",
                    &[("transferred", c.transferred), ("product", c.product)],
                )
            });
            if a <= a0 || r == 0.0 {
                tally.check(!c.not_sharp, || {
                    failure(
                        &[("alpha", a), ("r", r)],
                        "no non-sharpness certificate when a <= a0 or r = 0",
                        &[("ratio", c.ratio)],
                    )
                });
            }
        }
    }
    let c = restated_factor_check(Alpha::new(6.0)?, 0.9)?;
    tally.check(c.not_sharp, || {
        failure(
            &[("alpha", 6.0), ("r", 0.9)],
            "upper(a_r) / lower(a) < (1+r)/(1-r)",
            &[("ratio", c.ratio)],
        )
    });
    Ok(tally)
}
