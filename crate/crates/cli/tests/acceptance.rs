//! Acceptance checks. Each criterion prints one PASS or FAIL line; the binary
//! exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use hilbert_forms::bounds::{composition_bounds, theorem_bounds, CompositionQuery};
use hilbert_forms::kernel::{continuous_norm_quadrature, QuadratureBudget};
use hilbert_forms::normest::{
    build_truncated, failure_check, maxmax_double_sum, rayleigh_quotient, section_top_eigen,
    top_eigen, TestVector,
};
use hilbert_forms::roots::{alpha0, solve_alpha0, solve_crossings, solve_h_roots};
use hilbert_forms::special::zeta;
use hilbert_forms::verify::{run_suite, Suite};
use hilbert_forms::Alpha;
use hilbert_forms_cli::args::Grid;
use hilbert_forms_cli::commands::run_scan;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn alpha(a: f64) -> Alpha {
    Alpha::new(a).expect("valid alpha")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(label: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure(
        (got - want).abs() <= tol,
        format!(
            "{label}: got {got}, want {want} within {tol} (off by {:e})",
            (got - want).abs()
        ),
    )
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    ensure(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )?;
    Ok(format!("{detail} in {elapsed:.2?}"))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn named_constants() -> Check {
    timed(Duration::from_secs(1), || {
        let tol = 1e-10;
        let a0 = solve_alpha0(tol).map_err(err)?;
        let (a1, a2) = solve_h_roots(tol).map_err(err)?;
        for (name, r) in [("alpha0", &a0), ("alpha1", &a1), ("alpha2", &a2)] {
            ensure(
                r.width() <= tol,
                format!("{name} bracket width {:e}", r.width()),
            )?;
        }
        ensure(
            format!("{:.2}", a0.value) == "1.48",
            format!("alpha0 = {}", a0.value),
        )?;
        ensure(
            format!("{:.3}", a1.value) == "1.553",
            format!("alpha1 = {}", a1.value),
        )?;
        ensure(
            format!("{:.3}", a2.value) == "1.507",
            format!("alpha2 = {}", a2.value),
        )?;
        ensure(a1.value > a2.value, "alpha1 <= alpha2")?;
        Ok(format!(
            "alpha0 = {}, alpha1 = {}, alpha2 = {}",
            a0.value, a1.value, a2.value
        ))
    })
}

fn exact_regime() -> Check {
    timed(Duration::from_secs(1), || {
        for a in [0.5, 1.0, 1.48] {
            let b = theorem_bounds(alpha(a)).map_err(err)?;
            within(&format!("lower at {a}"), b.lower, 2.0 / a, 1e-9)?;
            within(&format!("upper at {a}"), b.upper, 2.0 / a, 1e-9)?;
        }
        Ok("norm 4 at 1/2, 2 at 1, 2/1.48 at 1.48".into())
    })
}

fn three_halves() -> Check {
    let b = theorem_bounds(alpha(1.5)).map_err(err)?;
    let z = zeta(2.5, 1e-14).map_err(err)?;
    ensure(z > 1.34 && z < 1.35, format!("zeta(5/2) = {z}"))?;
    within("lower", b.lower, 4.0 / 3.0, 1e-9)?;
    within("upper", b.upper, z, 1e-9)?;
    Ok(format!("[{}, {}]", b.lower, b.upper))
}

fn failure_threshold() -> Check {
    timed(Duration::from_secs(5), || {
        let at = failure_check(alpha(1.7)).map_err(err)?;
        ensure(
            at.violates,
            format!(
                "no violation at 1.7: {} vs {}",
                at.improved_lower, at.two_over_alpha
            ),
        )?;
        for i in 1..=48 {
            let a = 1.0 + i as f64 / 100.0;
            let c = failure_check(alpha(a)).map_err(err)?;
            ensure(
                !c.violates,
                format!(
                    "violation at {a}: {} > {}",
                    c.improved_lower, c.two_over_alpha
                ),
            )?;
        }
        let crossing = solve_crossings(1e-10).map_err(err)?.improved_vs_2a.value;
        ensure(
            crossing > alpha0() && crossing <= 1.7,
            format!("improved crossing {crossing} outside (alpha0, 1.7]"),
        )?;
        Ok(format!("improved bound crosses 2/alpha at {crossing}"))
    })
}

fn sign_changes(xs: &[f64], f: impl Fn(usize) -> f64) -> Vec<usize> {
    (0..xs.len() - 1)
        .filter(|&i| f(i).signum() != f(i + 1).signum())
        .collect()
}

fn scan_crossings() -> Check {
    let rows = run_scan(
        Grid {
            alpha_min: 1.0,
            alpha_max: 2.0,
            steps: 1001,
        },
        1e-10,
    )
    .map_err(err)?;
    let alphas: Vec<f64> = rows.iter().map(|r| r.alpha).collect();
    let h = 1e-3;
    let first = sign_changes(&alphas, |i| rows[i].zeta_1p_alpha - rows[i].two_over_alpha);
    let second = sign_changes(&alphas, |i| rows[i].zeta_1p_2alpha - rows[i].two_over_alpha);
    ensure(
        first.len() == 1,
        format!("zeta(1+a) - 2/a changes sign {} times", first.len()),
    )?;
    ensure(
        second.len() == 1,
        format!("zeta(1+2a) - 2/a changes sign {} times", second.len()),
    )?;
    let (i, j) = (first[0], second[0]);
    ensure(
        (alphas[i] - alpha0()).abs() <= h || (alphas[i + 1] - alpha0()).abs() <= h,
        format!(
            "first crossing near {} but alpha0 = {}",
            alphas[i],
            alpha0()
        ),
    )?;
    for k in [i, j] {
        ensure(
            alphas[k] > 1.0 && alphas[k + 1] < 2.0,
            format!("crossing at grid edge {}", alphas[k]),
        )?;
    }
    Ok(format!(
        "crossings in [{}, {}] and [{}, {}]",
        alphas[i],
        alphas[i + 1],
        alphas[j],
        alphas[j + 1]
    ))
}

fn continuous_norm() -> Check {
    let budget = QuadratureBudget::new(1e-10, 50).map_err(err)?;
    let mut worst = 0.0f64;
    for a in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let q = continuous_norm_quadrature(alpha(a), budget).map_err(err)?;
        within(&format!("alpha {a}"), q, 2.0 / a, 1e-8)?;
        worst = worst.max((q - 2.0 / a).abs());
    }
    Ok(format!("max deviation {worst:e}"))
}

fn suite_check(suite: Suite, limit: Duration) -> Check {
    timed(limit, || {
        let out = run_suite(suite).map_err(err)?;
        match out.failures.first() {
            None => Ok(format!("{} cases, 0 failures", out.cases)),
            Some(f) => Err(format!(
                "{} of {} cases failed; first: inputs {:?}, expected {}, observed {:?}",
                out.failures.len(),
                out.cases,
                f.inputs,
                f.expected,
                f.observed
            )),
        }
    })
}

fn spectral_sandwich() -> Check {
    let tol = 1e-12;
    let max_iter = 1_000_000;
    let mut checked = 0;
    for a in [0.5, 1.0, 1.5, 2.0] {
        let al = alpha(a);
        let upper = theorem_bounds(al).map_err(err)?.upper;
        let mut vectors: Vec<TestVector> = (1..=6)
            .map(|j| TestVector::EpsFamily {
                eps: a / 2f64.powi(j),
            })
            .collect();
        if a > 1.0 {
            vectors.push(TestVector::AlphaFamily);
        }
        let mut prev = 0.0;
        for n in (1..=11).map(|p| 1usize << p) {
            let eig = section_top_eigen(al, n, tol, max_iter).map_err(err)?.value;
            ensure(
                eig >= prev,
                format!("alpha {a}: eigenvalue drops from {prev} to {eig} at n = {n}"),
            )?;
            ensure(
                eig <= upper + 1e-9,
                format!("alpha {a}, n {n}: {eig} above upper bound {upper}"),
            )?;
            for v in &vectors {
                let rq = rayleigh_quotient(al, *v, n).map_err(err)?;
                ensure(
                    rq <= eig,
                    format!("alpha {a}, n {n}: Rayleigh quotient {rq} for {v:?} exceeds {eig}"),
                )?;
            }
            prev = eig;
            checked += 1;
        }
    }
    let two = top_eigen(
        &build_truncated(alpha(0.5), 2).map_err(err)?,
        1e-14,
        max_iter,
    )
    .map_err(err)?;
    within(
        "2x2 at alpha 1/2",
        two.value,
        (3.0 + 5f64.sqrt()) / 4.0,
        1e-10,
    )?;
    Ok(format!("{checked} sections; 2x2 value {}", two.value))
}

fn maxmax_identity() -> Check {
    let mut lines = Vec::new();
    let mut bad = Vec::new();
    for a in [1.25, 1.5, 2.0] {
        let s = maxmax_double_sum(alpha(a), 100_000).map_err(err)?;
        let gap = s.closed_form - s.truncated;
        lines.push(format!("alpha {a}: gap {gap:e}"));
        if !(s.truncated < s.closed_form && gap <= 1e-4) {
            bad.push(format!(
                "alpha {a}: truncated {} vs closed form {} (gap {gap:e} > 1e-4)",
                s.truncated, s.closed_form
            ));
        }
    }
    if bad.is_empty() {
        Ok(lines.join("; "))
    } else {
        Err(bad.join("; "))
    }
}

fn composition_corollary() -> Check {
    let c = composition_bounds(CompositionQuery::new(1.0).map_err(err)?).map_err(err)?;
    within("upper", c.upper, 2.0, 1e-9)?;
    within(
        "lower",
        c.lower,
        (std::f64::consts::PI.powi(2) / 6.0).sqrt(),
        1e-9,
    )?;
    Ok(format!("[{}, {}]", c.lower, c.upper))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("named constants", named_constants),
        ("exact-norm regime", exact_regime),
        ("alpha = 3/2 bounds", three_halves),
        ("failure threshold", failure_threshold),
        ("scan crossings", scan_crossings),
        ("continuous norm", continuous_norm),
        ("sum estimates suite", || {
            suite_check(Suite::Lemma4, Duration::from_secs(60))
        }),
        ("remainder sign suite", || {
            suite_check(Suite::Signs, Duration::MAX)
        }),
        ("sup formula suite", || {
            suite_check(Suite::SupFormula, Duration::MAX)
        }),
        ("spectral sandwich", spectral_sandwich),
        ("max-max identity", maxmax_identity),
        ("composition corollary", composition_corollary),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
