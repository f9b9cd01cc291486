mod common;

use common::{gamma_word, point};
use hyperlattice::hypgeom::{
    cosh_dist, cosh_dist_to_imaginary_axis, dist, mobius_apply, reduce_to_fundamental_domain,
};
use hyperlattice::UpperHalfPoint;
use proptest::prelude::*;

proptest! {
    #[test]
    fn triangle_inequality(a in point(), b in point(), c in point()) {
        prop_assert!(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-9);
    }

    #[test]
    fn distance_symmetric_and_positive(a in point(), b in point()) {
        prop_assert!((dist(a, b) - dist(b, a)).abs() < 1e-12);
        prop_assert!(dist(a, b) >= 0.0);
        prop_assert!(dist(a, a) == 0.0);
    }

    #[test]
    fn modular_maps_are_isometries(g in gamma_word(5), a in point(), b in point()) {
        let (ga, gb) = (mobius_apply(&g, a).unwrap(), mobius_apply(&g, b).unwrap());
        let (d0, d1) = (cosh_dist(a, b), cosh_dist(ga, gb));
        prop_assert!((d0 - d1).abs() <= 1e-8 * d0, "{d0} vs {d1}");
    }

    #[test]
    fn reduction_lands_in_domain(g in gamma_word(6), z in point()) {
        let w = mobius_apply(&g, z).unwrap();
        let r = reduce_to_fundamental_domain(w);
        prop_assert!(r.x().abs() <= 0.5 + 1e-12);
        prop_assert!(r.x() * r.x() + r.y() * r.y() >= 1.0 - 1e-12);
        let r0 = reduce_to_fundamental_domain(z);
        prop_assert!((r.y() - r0.y()).abs() <= 1e-7 * r0.y());
    }

    #[test]
    fn axis_distance_is_minimum(w in point(), s in -4.0f64..4.0) {
        let on_axis = UpperHalfPoint::new(0.0, s.exp()).unwrap();
        prop_assert!(cosh_dist_to_imaginary_axis(w) <= cosh_dist(w, on_axis) + 1e-12);
        let foot = UpperHalfPoint::new(0.0, w.abs()).unwrap();
        prop_assert!((cosh_dist_to_imaginary_axis(w) - cosh_dist(w, foot)).abs() < 1e-12 * cosh_dist(w, foot));
    }
}
