use hyperlattice::specfun::{complex_gamma, gamma, huber_closed, huber_closed_approx, ln_gamma};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #[test]
    fn huber_transform_even_in_t(t in 0.05f64..40.0, x in 1.0f64..1e5) {
        let a = huber_closed(t, x).unwrap().value;
        let b = huber_closed(-t, x).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()), "{a} vs {b}");
    }

    #[test]
    fn remainder_small_and_decaying(t in 0.5f64..40.0, x in 2.0f64..1e4) {
        let h = huber_closed(t, x).unwrap();
        // V = O((1+|t|)^{-1} X^{-2})
        let v = h.remainder.norm() / h.leading.norm();
        prop_assert!(v <= 1.0 / ((1.0 + t) * x * x), "V = {v}");
        let h2 = huber_closed(t, 4.0 * x).unwrap();
        prop_assert!(h2.remainder.norm() / h2.leading.norm() < v);
    }

    #[test]
    fn remainder_bound_one_global_constant(t in 0.5f64..60.0, x in 2.0f64..1e6) {
        // |V(R,t)| <= c (1+|t|)^{-2} X^{-3/2}; c measured at about 1.12,
        // attained at the corner t = 0.5, X = 2
        let h = huber_closed(t, x).unwrap();
        let c = h.remainder.norm() * (1.0 + t).powi(2) * x.powf(1.5);
        prop_assert!(c <= 1.2, "c = {c}");
    }

    #[test]
    fn leading_amplitude_decays_in_t(t in 1.0f64..30.0, x in 2.0f64..1e3) {
        let a = huber_closed(t, x).unwrap().leading.norm();
        let b = huber_closed(2.0 * t, x).unwrap().leading.norm();
        prop_assert!(b < a);
    }

    #[test]
    fn approximation_error_shrinks(t in 0.5f64..20.0, x in 3.0f64..300.0) {
        let exact = huber_closed(t, x).unwrap().value;
        let approx = huber_closed_approx(t, x).unwrap();
        prop_assert!((exact - approx).abs() <= 5.0 * x.powf(-1.5));
    }

    #[test]
    fn gamma_recurrence(re in -6.0f64..6.0, im in 0.1f64..40.0) {
        let z = Complex64::new(re, im);
        let lhs = complex_gamma(z + 1.0).unwrap();
        let rhs = z * complex_gamma(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }

    #[test]
    fn gamma_conjugate_symmetry(re in -6.0f64..6.0, im in 0.1f64..40.0) {
        let z = Complex64::new(re, im);
        let a = ln_gamma(z).unwrap().exp();
        let b = ln_gamma(z.conj()).unwrap().exp().conj();
        prop_assert!((a - b).norm() <= 1e-13 * a.norm());
    }

    #[test]
    fn real_gamma_duplication(x in 0.1f64..20.0) {
        // Γ(x)Γ(x + 1/2) = 2^{1−2x} √π Γ(2x)
        let lhs = gamma(x).unwrap() * gamma(x + 0.5).unwrap();
        let rhs = 2f64.powf(1.0 - 2.0 * x) * std::f64::consts::PI.sqrt() * gamma(2.0 * x).unwrap();
        prop_assert!((lhs / rhs - 1.0).abs() < 1e-12);
    }
}
