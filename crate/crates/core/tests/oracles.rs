//! Comparisons against independent oracles: brute-force sums, closed forms,
//! and values frozen from 40-digit mpmath runs.

#![allow(clippy::excessive_precision)]

use approx::assert_relative_eq;
use hilbert_forms::bounds::{s_alpha, theorem_bounds};
use hilbert_forms::kernel::continuous_extremal_ratio;
use hilbert_forms::normest::{build_truncated, maxmax_double_sum, top_eigen};
use hilbert_forms::quad::composite_simpson;
use hilbert_forms::special::{em_partial_sum, em_tail_sum, zeta, PowerSum, RemainderSign};
use hilbert_forms::sum::compensated;
use hilbert_forms::Alpha;
use proptest::prelude::*;

const BRUTE_TERMS: u64 = 10_000_000;

/// `Σ_{n>m} n^p` enclosed by a direct sum to `BRUTE_TERMS` plus the
/// integral-test bracket for what remains.
fn brute_tail(p: f64, m: u64) -> (f64, f64) {
    let head = compensated((m + 1..=BRUTE_TERMS).map(|n| (n as f64).powf(p)));
    let n = BRUTE_TERMS as f64;
    let q = -(p + 1.0);
    (head + (n + 1.0).powf(-q) / q, head + n.powf(-q) / q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn tail_sum_matches_brute_force(p in -4.0f64..-1.5, m in 1u64..=100, order in 1u8..=2) {
        let em = em_tail_sum(&PowerSum::new(p, m, order).unwrap()).unwrap();
        let (lo, hi) = brute_tail(p, m);
        let slack = 1e-12 * hi;
        prop_assert!(em.value - hi <= em.remainder_bound + slack);
        prop_assert!(lo - em.value <= em.remainder_bound + slack);
        match em.remainder_sign {
            RemainderSign::Negative => prop_assert!(em.value >= lo - slack),
            RemainderSign::Positive => prop_assert!(em.value <= hi + slack),
            RemainderSign::Unknown => {}
        }
    }
}

#[test]
fn partial_sum_against_direct() {
    for p in [0.5, -0.5, 1.5] {
        let em = em_partial_sum(&PowerSum::new(p, 1, 2).unwrap(), 50).unwrap();
        let direct = compensated((1..=50).map(|n| (n as f64).powf(p)));
        let (lo, hi) = em.enclosure();
        assert!(
            lo - 1e-12 <= direct && direct <= hi + 1e-12,
            "p = {p}: {direct} not in [{lo}, {hi}]"
        );
    }
}

#[test]
fn tail_of_inverse_squares() {
    // Σ_{n>10} n^-2 = ψ'(11)
    let exact = 0.095166335681685746;
    let em = em_tail_sum(&PowerSum::new(-2.0, 10, 2).unwrap()).unwrap();
    let (lo, hi) = em.enclosure();
    assert!(lo <= exact && exact <= hi, "{exact} not in [{lo}, {hi}]");
    assert!(em.remainder_bound < 3e-9);
}

#[test]
fn zeta_values() {
    let cases = [
        (2.0, std::f64::consts::PI.powi(2) / 6.0),
        (4.0, std::f64::consts::PI.powi(4) / 90.0),
        (2.5, 1.3414872572509171798),
        (3.0, 1.2020569031595942854),
        (1.1, 10.584448464950800951),
    ];
    for (s, want) in cases {
        assert_relative_eq!(zeta(s, 1e-13).unwrap(), want, max_relative = 1e-12);
    }
}

#[test]
fn s_alpha_at_one_is_zeta() {
    assert_relative_eq!(
        s_alpha(Alpha::new(2.0).unwrap(), 1, 1e-13).unwrap(),
        1.2020569031595942854,
        max_relative = 1e-12
    );
}

#[test]
fn maxmax_closed_forms() {
    // 2ζ(2α-1) - ζ(2α) from mpmath
    for (a, want) in [(1.5, 2.0878112305368586), (2.0, 1.3217905726080504)] {
        let s = maxmax_double_sum(Alpha::new(a).unwrap(), 10).unwrap();
        assert_relative_eq!(s.closed_form, want, max_relative = 1e-12);
        assert!(s.truncated < s.closed_form);
    }
}

#[test]
fn two_by_two_section() {
    // at α = 1/2 the section is [[1, 1/2], [1/2, 1/2]], eigenvalues (3 ± √5)/4
    let m = build_truncated(Alpha::new(0.5).unwrap(), 2).unwrap();
    assert_relative_eq!(m.get(1, 2), 0.5, epsilon = 1e-15);
    let eig = top_eigen(&m, 1e-14, 10_000).unwrap();
    assert_relative_eq!(eig.value, (3.0 + 5f64.sqrt()) / 4.0, epsilon = 1e-12);
}

#[test]
fn three_halves_upper_is_zeta_five_halves() {
    let b = theorem_bounds(Alpha::new(1.5).unwrap()).unwrap();
    assert_relative_eq!(b.upper, 1.3414872572509171798, max_relative = 1e-12);
}

/// `H(f, f)/‖f‖²` for `f(x) = x^(-1/2-ε)` on `[1, ∞)`, by quadrature in
/// `x = e^s` over a long but finite range.
fn extremal_ratio_by_quadrature(alpha: f64, eps: f64) -> f64 {
    let s_max = 60.0 / eps;
    let (a, b) = (alpha - eps, alpha + eps);
    // inner ∫_0^t e^{(α-ε)s} ds has a closed form; integrate the rest numerically
    let outer = |t: f64| ((a * t).exp_m1() / a) * (-b * t).exp();
    let form = 2.0 * composite_simpson(outer, 0.0, s_max, 200_000);
    let norm = composite_simpson(|s| (-2.0 * eps * s).exp(), 0.0, s_max, 200_000);
    form / norm
}

#[test]
fn extremal_ratio_against_quadrature() {
    for (alpha, eps) in [(0.5, 0.25), (1.0, 0.5), (2.0, 0.5)] {
        let closed = continuous_extremal_ratio(Alpha::new(alpha).unwrap(), eps).unwrap();
        assert_relative_eq!(
            closed,
            extremal_ratio_by_quadrature(alpha, eps),
            max_relative = 1e-8
        );
    }
}
