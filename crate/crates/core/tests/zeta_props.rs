mod common;

use common::{gamma_word, point};
use hyperlattice::hypgeom::mobius_apply;
use hyperlattice::zeta::{eisenstein_raw, epstein_from_counts, RepCounter};
use hyperlattice::QuadForm;
use num_complex::Complex64;
use proptest::prelude::*;

fn base_form() -> impl Strategy<Value = QuadForm> {
    prop::sample::select(vec![(1, 1, -1), (1, 0, -2), (1, 0, -3), (2, 1, -2), (1, 3, -1)])
        .prop_map(|(a, b, c)| QuadForm::new(a, b, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn representation_numbers_are_class_invariants(q in base_form(), g in gamma_word(4)) {
        let a = RepCounter::new(q).unwrap().counts_upto(120).unwrap();
        let b = RepCounter::new(q.transform(&g).unwrap()).unwrap().counts_upto(120).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn orbit_representatives_solve_the_equation(q in base_form(), n in 1u64..400) {
        for (x, y) in RepCounter::new(q).unwrap().orbits(n).unwrap() {
            let [a, b, c] = q.coeffs().map(i128::from);
            prop_assert_eq!(a * x * x + b * x * y + c * y * y, n as i128);
        }
    }

    #[test]
    fn eisenstein_invariant_within_tails(g in gamma_word(3), z in point()) {
        let gz = mobius_apply(&g, z).unwrap();
        prop_assume!(gz.y() > 0.05 && z.y() > 0.05);
        let a = eisenstein_raw(z, 2.0, 300).unwrap();
        let b = eisenstein_raw(gz, 2.0, 300).unwrap();
        prop_assert!((a.value - b.value).abs() <= a.tail_bound + b.tail_bound + 1e-9 * a.value);
    }
}

#[test]
fn epstein_partial_sums_monotone_and_within_tails() {
    let q = QuadForm::new(1, 1, -1).unwrap();
    let counts = RepCounter::new(q).unwrap().counts_upto(8000).unwrap();
    for s in [1.5, 2.0, 3.0] {
        let s = Complex64::new(s, 0.0);
        let mut prev: Option<hyperlattice::zeta::DirichletTail> = None;
        for n in [500usize, 1000, 2000, 4000, 8000] {
            let z = epstein_from_counts(&counts[..n], s);
            if let Some(p) = prev {
                assert!(z.partial.re >= p.partial.re);
                assert!(z.partial.re - p.partial.re <= p.tail_bound, "s = {s}, N = {n}");
                assert!(z.tail_bound < p.tail_bound);
            }
            prev = Some(z);
        }
    }
}

#[test]
fn epstein_bounded_by_riemann_comparison() {
    let q = QuadForm::new(1, 1, -1).unwrap();
    let counts = RepCounter::new(q).unwrap().counts_upto(4000).unwrap();
    let z = epstein_from_counts(&counts, Complex64::new(3.0, 0.0));
    let rmax = *counts.iter().max().unwrap() as f64;
    let zeta3 = hyperlattice::zeta::riemann_zeta(3.0).unwrap();
    assert!(z.partial.norm() <= zeta3 * rmax + z.tail_bound);
}
