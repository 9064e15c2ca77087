use hilbert_forms::bounds::{s_alpha, s_alpha_sup_with, theorem_bounds};
use hilbert_forms::kernel::kernel_eval;
use hilbert_forms::normest::{build_truncated, rayleigh_quotient, top_eigen, TestVector};
use hilbert_forms::roots::refine_root;
use hilbert_forms::special::{em_partial_sum, PowerSum, RemainderSign};
use hilbert_forms::sum::compensated;
use hilbert_forms::{Alpha, Execution};
use proptest::prelude::*;

proptest! {
    #[test]
    fn partial_sum_enclosure_holds(p in -3.0f64..0.9, order in 1u8..=2, end in 2u64..400) {
        let em = em_partial_sum(&PowerSum::new(p, 1, order).unwrap(), end).unwrap();
        let direct = compensated((1..=end).map(|n| (n as f64).powf(p)));
        let slack = 1e-12 * direct.abs().max(1.0);
        let (lo, hi) = em.enclosure();
        prop_assert!(lo - slack <= direct && direct <= hi + slack);
        if em.remainder_sign == RemainderSign::Negative {
            prop_assert!(em.value + slack >= direct);
        }
    }

    #[test]
    fn kernel_is_symmetric_and_homogeneous(a in 0.05f64..5.0, x in 0.1f64..100.0, y in 0.1f64..100.0, t in 0.1f64..10.0) {
        let al = Alpha::new(a).unwrap();
        let k = kernel_eval(al, x, y).unwrap();
        prop_assert!((k - kernel_eval(al, y, x).unwrap()).abs() <= 1e-14 * k);
        prop_assert!((kernel_eval(al, t * x, t * y).unwrap() * t - k).abs() <= 1e-12 * k);
    }

    #[test]
    fn bounds_are_ordered(a in 0.05f64..6.0) {
        let b = theorem_bounds(Alpha::new(a).unwrap()).unwrap();
        prop_assert!(b.lower <= b.upper);
        prop_assert!(b.lower >= 2.0 / a - 1e-12);
        prop_assert_eq!(b.exact, b.lower == b.upper);
    }

    #[test]
    fn majorant_bounded_by_sup_formula(a in 0.2f64..4.0, m in 1u64..5000) {
        let al = Alpha::new(a).unwrap();
        let sup = theorem_bounds(al).unwrap().upper;
        prop_assert!(s_alpha(al, m, 1e-12).unwrap() <= sup + 1e-9);
    }

    #[test]
    fn section_eigenvalue_dominates_trial_vectors(a in 0.3f64..3.0, n in 2usize..200, j in 1i32..6) {
        let al = Alpha::new(a).unwrap();
        let eig = top_eigen(&build_truncated(al, n).unwrap(), 1e-12, 1_000_000).unwrap().value;
        let rq = rayleigh_quotient(al, TestVector::EpsFamily { eps: a / 2f64.powi(j) }, n).unwrap();
        prop_assert!(rq <= eig + 1e-10);
        prop_assert!(eig <= theorem_bounds(al).unwrap().upper + 1e-9);
    }

    #[test]
    fn root_bracket_contains_sign_change(c in -0.9f64..0.9) {
        let f = |x: f64| x.powi(3) - c;
        let r = refine_root(f, -1.0, 1.0, 1e-12, 200).unwrap();
        prop_assert!(f(r.bracket_lo) * f(r.bracket_hi) <= 0.0);
        prop_assert!(r.width() <= 1e-12);
    }
}

#[test]
fn execution_modes_agree() {
    let al = Alpha::new(2.5).unwrap();
    let seq = s_alpha_sup_with(al, 20_000, 1e-12, Execution::Sequential).unwrap();
    let par = s_alpha_sup_with(al, 20_000, 1e-12, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
    let a = build_truncated(al, 300)
        .unwrap()
        .with_execution(Execution::Sequential);
    let b = build_truncated(al, 300)
        .unwrap()
        .with_execution(Execution::Parallel);
    assert_eq!(
        top_eigen(&a, 1e-12, 10_000).unwrap(),
        top_eigen(&b, 1e-12, 10_000).unwrap()
    );
}
