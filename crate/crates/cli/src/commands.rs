use std::fmt::Write as _;

use hilbert_forms::bounds::{
    bound_gaps, composition_bounds, s_alpha_sup, theorem_bounds, BoundReport, CompositionBounds,
    CompositionQuery, SupArgmax, SupResult, ZETA_TOL,
};
use hilbert_forms::normest::{
    alpha_family_limit, rayleigh_quotient, section_top_eigen, TestVector,
};
use hilbert_forms::roots::{alpha0, solve_alpha0, solve_crossings, solve_h_roots, RootResult};
use hilbert_forms::special::zeta;
use hilbert_forms::verify::{run_suite, Suite, VerifyOutcome};
use hilbert_forms::{Alpha, Execution};
use serde::Serialize;

use crate::args::{Cli, Command, Grid, SandwichGrid};
use crate::report::{Cell, Report};
use crate::CliError;

pub const DEFAULT_SCALAR_TOL: f64 = 1e-10;
pub const DEFAULT_SPECTRAL_TOL: f64 = 1e-8;

/// Output of [`run`]: the report for stdout or `--output`, plus notes for stderr.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Option<Report>,
    pub diagnostics: String,
    /// Set when a verification suite found failures.
    pub failed: Option<String>,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = |default: f64| -> Result<f64, CliError> {
        match cli.tol {
            None => Ok(default),
            Some(t) if t > 0.0 && t.is_finite() => Ok(t),
            Some(t) => Err(CliError::Usage(format!(
                "--tol must be positive and finite, got {t}"
            ))),
        }
    };
    let mut diagnostics = String::new();
    let mut failed = None;
    let report = match &cli.command {
        None if cli.seed_info => {
            return Ok(Outcome {
                report: Some(seed_info()?),
                diagnostics,
                failed,
            })
        }
        None => return Err(CliError::Usage("a subcommand is required".into())),
        Some(cmd) => {
            if cli.seed_info {
                diagnostics.push_str(&seed_info()?.to_csv());
            }
            match *cmd {
                Command::Bounds { alpha } => bounds_report(alpha)?,
                Command::Scan(grid) => scan_report(&run_scan(grid, tol(DEFAULT_SCALAR_TOL)?)?),
                Command::Sup { alpha, m_max } => {
                    sup_report(alpha, m_max, tol(DEFAULT_SCALAR_TOL)?)?
                }
                Command::Eig { alpha, n, max_iter } => {
                    eig_report(alpha, n, max_iter, tol(DEFAULT_SPECTRAL_TOL)?)?
                }
                Command::Rayleigh { alpha, n, eps } => rayleigh_report(alpha, n, eps)?,
                Command::Roots => roots_report(tol(DEFAULT_SCALAR_TOL)?)?,
                Command::Verify { ref suite } => {
                    let suite: Suite = suite.parse().map_err(|_| {
                        CliError::Usage(format!(
                            "unknown suite {suite:?}; expected one of {}",
                            Suite::ALL.map(Suite::name).join(", ")
                        ))
                    })?;
                    let outcome = run_suite(suite)?;
                    for f in &outcome.failures {
                        let _ = writeln!(
                            diagnostics,
                            "FAIL {suite}: inputs {:?} expected {} observed {:?}",
                            f.inputs, f.expected, f.observed
                        );
                    }
                    if !outcome.passed() {
                        failed = Some(format!(
                            "{} of {} cases in {suite}",
                            outcome.failures.len(),
                            outcome.cases
                        ));
                    }
                    verify_report(&outcome)
                }
                Command::Sandwich(grid) => sandwich_report(&run_sandwich(grid)?),
            }
        }
    };
    Ok(Outcome {
        report: Some(report),
        diagnostics,
        failed,
    })
}

fn alpha_arg(alpha: f64) -> Result<Alpha, CliError> {
    Alpha::new(alpha).map_err(|e| CliError::Usage(format!("--alpha: {e}")))
}

/// `min + i (max - min)/(steps - 1)` for `i = 0..steps`.
pub fn grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {steps}"
        )));
    }
    if !(min.is_finite() && max.is_finite() && min < max) {
        return Err(CliError::Usage(format!(
            "need alpha_min < alpha_max, got {min} and {max}"
        )));
    }
    let h = (max - min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                max
            } else {
                min + i as f64 * h
            }
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
struct BoundsOutput {
    #[serde(flatten)]
    bounds: BoundReport,
    composition: CompositionBounds,
}

fn bounds_report(alpha: f64) -> Result<Report, CliError> {
    let a = alpha_arg(alpha)?;
    let bounds = theorem_bounds(a)?;
    let composition = composition_bounds(CompositionQuery::new(a.get() + 0.5)?)?;
    let row = vec![
        Cell::from(a.get()),
        bounds.lower.into(),
        bounds.upper.into(),
        bounds.exact.into(),
        method_name(&bounds.lower_method).into(),
        method_name(&bounds.upper_method).into(),
        composition.re_w.into(),
        composition.lower.into(),
        composition.upper.into(),
        composition.sharp.into(),
    ];
    Ok(Report::new(
        vec![
            "alpha",
            "lower",
            "upper",
            "exact",
            "lower_method",
            "upper_method",
            "re_w",
            "composition_lower",
            "composition_upper",
            "composition_sharp",
        ],
        vec![row],
        &BoundsOutput {
            bounds,
            composition,
        },
    ))
}

fn method_name<T: Serialize>(m: &T) -> String {
    match serde_json::to_value(m) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub alpha: f64,
    pub two_over_alpha: f64,
    pub zeta_1p_alpha: f64,
    pub zeta_1p_2alpha: f64,
    /// `2 - ζ(2α)/ζ(2α-1)`, defined only for `α > 1`.
    pub improved_lower: Option<f64>,
    pub lower: f64,
    pub upper: f64,
}

pub fn run_scan(g: Grid, tol: f64) -> Result<Vec<ScanRow>, CliError> {
    let alphas = grid(g.alpha_min, g.alpha_max, g.steps)?;
    for &a in &alphas {
        alpha_arg(a)?;
    }
    let zt = (tol / 100.0).max(ZETA_TOL);
    let rows = Execution::default().map_slice(&alphas, |&a| -> hilbert_forms::Result<ScanRow> {
        let alpha = Alpha::new(a)?;
        let z2 = zeta(1.0 + 2.0 * a, zt)?;
        let improved_lower = if a > 1.0 {
            Some(2.0 - zeta(2.0 * a, zt)? / zeta(2.0 * a - 1.0, zt)?)
        } else {
            None
        };
        let bounds = theorem_bounds(alpha)?;
        Ok(ScanRow {
            alpha: a,
            two_over_alpha: alpha.two_over(),
            zeta_1p_alpha: zeta(1.0 + a, zt)?,
            zeta_1p_2alpha: z2,
            improved_lower,
            lower: bounds.lower,
            upper: bounds.upper,
        })
    });
    rows.into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

fn scan_report(rows: &[ScanRow]) -> Report {
    let cells = rows
        .iter()
        .map(|r| {
            vec![
                r.alpha.into(),
                r.two_over_alpha.into(),
                r.zeta_1p_alpha.into(),
                r.zeta_1p_2alpha.into(),
                r.improved_lower.into(),
                r.lower.into(),
                r.upper.into(),
            ]
        })
        .collect();
    Report::new(
        vec![
            "alpha",
            "two_over_alpha",
            "zeta_1p_alpha",
            "zeta_1p_2alpha",
            "improved_lower",
            "lower",
            "upper",
        ],
        cells,
        &rows,
    )
}

#[derive(Debug, Clone, Serialize)]
struct SupOutput {
    alpha: f64,
    m_max: u64,
    #[serde(flatten)]
    result: SupResult,
    /// `max(2/α, ζ(1+α))`
    formula: f64,
}

fn sup_report(alpha: f64, m_max: u64, tol: f64) -> Result<Report, CliError> {
    let a = alpha_arg(alpha)?;
    if m_max == 0 {
        return Err(CliError::Usage("--m-max must be positive".into()));
    }
    let result = s_alpha_sup(a, m_max, tol)?;
    let formula = a.two_over().max(zeta(1.0 + a.get(), ZETA_TOL)?);
    let argmax = match result.argmax {
        SupArgmax::Index(m) => Cell::Int(m),
        SupArgmax::Limit => Cell::from("limit"),
    };
    Ok(Report::new(
        vec!["alpha", "m_max", "sup", "argmax", "formula"],
        vec![vec![
            a.get().into(),
            m_max.into(),
            result.sup.into(),
            argmax,
            formula.into(),
        ]],
        &SupOutput {
            alpha: a.get(),
            m_max,
            result,
            formula,
        },
    ))
}

#[derive(Debug, Clone, Serialize)]
struct EigOutput {
    alpha: f64,
    n: usize,
    value: f64,
    iterations: usize,
    residual: f64,
    lower: f64,
    upper: f64,
}

fn eig_report(alpha: f64, n: usize, max_iter: usize, tol: f64) -> Result<Report, CliError> {
    let a = alpha_arg(alpha)?;
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let eig = section_top_eigen(a, n, tol, max_iter)?;
    let bounds = theorem_bounds(a)?;
    let out = EigOutput {
        alpha: a.get(),
        n,
        value: eig.value,
        iterations: eig.iterations,
        residual: eig.residual,
        lower: bounds.lower,
        upper: bounds.upper,
    };
    Ok(Report::new(
        vec![
            "alpha",
            "n",
            "value",
            "iterations",
            "residual",
            "lower",
            "upper",
        ],
        vec![vec![
            out.alpha.into(),
            n.into(),
            out.value.into(),
            out.iterations.into(),
            out.residual.into(),
            out.lower.into(),
            out.upper.into(),
        ]],
        &out,
    ))
}

#[derive(Debug, Clone, Serialize)]
struct RayleighOutput {
    alpha: f64,
    n: usize,
    vector: TestVector,
    quotient: f64,
    /// The `n → ∞` limit where it has a closed form.
    limit: f64,
}

fn rayleigh_report(alpha: f64, n: usize, eps: Option<f64>) -> Result<Report, CliError> {
    let a = alpha_arg(alpha)?;
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let vector = match eps {
        Some(eps) if eps > 0.0 && eps < a.get() => TestVector::EpsFamily { eps },
        Some(eps) => {
            return Err(CliError::Usage(format!(
                "--eps must lie in (0, alpha), got {eps}"
            )))
        }
        None if a.get() > 1.0 => TestVector::AlphaFamily,
        None => {
            return Err(CliError::Usage(
                "the m^(-α+1/2) family needs alpha > 1; pass --eps".into(),
            ))
        }
    };
    let quotient = rayleigh_quotient(a, vector, n)?;
    let limit = match vector {
        TestVector::EpsFamily { eps } => 2.0 / (a.get() + eps),
        TestVector::AlphaFamily => alpha_family_limit(a)?,
    };
    let (family, eps_cell) = match vector {
        TestVector::EpsFamily { eps } => ("eps", Cell::from(eps)),
        TestVector::AlphaFamily => ("alpha", Cell::Empty),
    };
    Ok(Report::new(
        vec!["alpha", "n", "family", "eps", "quotient", "limit"],
        vec![vec![
            a.get().into(),
            n.into(),
            family.into(),
            eps_cell,
            quotient.into(),
            limit.into(),
        ]],
        &RayleighOutput {
            alpha: a.get(),
            n,
            vector,
            quotient,
            limit,
        },
    ))
}

#[derive(Debug, Clone, Serialize)]
struct NamedRoot {
    name: &'static str,
    #[serde(flatten)]
    root: RootResult,
}

fn roots_report(tol: f64) -> Result<Report, CliError> {
    let a0 = solve_alpha0(tol)?;
    let (a1, a2) = solve_h_roots(tol)?;
    let c = solve_crossings(tol)?;
    let named = [
        ("alpha0", a0),
        ("alpha1", a1),
        ("alpha2", a2),
        ("zeta_vs_2a", c.zeta_vs_2a),
        ("zeta2_vs_2a", c.zeta2_vs_2a),
        ("improved_vs_2a", c.improved_vs_2a),
    ]
    .map(|(name, root)| NamedRoot { name, root });
    let rows = named
        .iter()
        .map(|r| {
            vec![
                r.name.into(),
                r.root.value.into(),
                r.root.bracket_lo.into(),
                r.root.bracket_hi.into(),
                r.root.residual.into(),
                r.root.iterations.into(),
            ]
        })
        .collect();
    Ok(Report::new(
        vec![
            "name",
            "value",
            "bracket_lo",
            "bracket_hi",
            "residual",
            "iterations",
        ],
        rows,
        &named,
    ))
}

fn verify_report(outcome: &VerifyOutcome) -> Report {
    Report::new(
        vec!["suite", "cases", "failures", "passed"],
        vec![vec![
            outcome.suite.clone().into(),
            outcome.cases.into(),
            outcome.failures.len().into(),
            outcome.passed().into(),
        ]],
        outcome,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichRow {
    pub alpha: f64,
    /// `(lower - 1)·4^α`
    pub lower_gap_4a: f64,
    /// `(upper - 1)·2^α`
    pub upper_gap_2a: f64,
}

pub fn run_sandwich(g: SandwichGrid) -> Result<Vec<SandwichRow>, CliError> {
    if g.alpha_min.is_nan() || g.alpha_min < 2.0 {
        return Err(CliError::Usage(format!(
            "--alpha-min must be at least 2, got {}",
            g.alpha_min
        )));
    }
    let alphas = grid(g.alpha_min, g.alpha_max, g.steps)?;
    let rows =
        Execution::default().map_slice(&alphas, |&a| -> hilbert_forms::Result<SandwichRow> {
            let (lower, upper) = bound_gaps(Alpha::new(a)?)?;
            Ok(SandwichRow {
                alpha: a,
                lower_gap_4a: lower * 4f64.powf(a),
                upper_gap_2a: upper * 2f64.powf(a),
            })
        });
    rows.into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

fn sandwich_report(rows: &[SandwichRow]) -> Report {
    let cells = rows
        .iter()
        .map(|r| vec![r.alpha.into(), r.lower_gap_4a.into(), r.upper_gap_2a.into()])
        .collect();
    Report::new(vec!["alpha", "lower_gap_4a", "upper_gap_2a"], cells, &rows)
}

#[derive(Debug, Clone, Serialize)]
struct SeedInfo {
    version: &'static str,
    alpha0: f64,
    alpha1: f64,
    alpha2: f64,
}

fn seed_info() -> Result<Report, CliError> {
    let (a1, a2) = solve_h_roots(DEFAULT_SCALAR_TOL)?;
    let info = SeedInfo {
        version: env!("CARGO_PKG_VERSION"),
        alpha0: alpha0(),
        alpha1: a1.value,
        alpha2: a2.value,
    };
    Ok(Report::new(
        vec!["version", "alpha0", "alpha1", "alpha2"],
        vec![vec![
            info.version.into(),
            info.alpha0.into(),
            info.alpha1.into(),
            info.alpha2.into(),
        ]],
        &info,
    ))
}
