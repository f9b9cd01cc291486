mod common;

use common::{gamma_word, point};
use hyperlattice::hypgeom::mobius_apply;
use hyperlattice::modgroup::{ball_enumerate, cache_load, cache_store, classical_count, BallCache};
use hyperlattice::UpperHalfPoint;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn count_is_symmetric(z in point(), w in point(), x in 2.0f64..60.0) {
        prop_assert_eq!(classical_count(z, w, x).unwrap(), classical_count(w, z, x).unwrap());
    }

    #[test]
    fn count_is_monotone(z in point(), x in 2.0f64..60.0, dx in 0.0f64..20.0) {
        prop_assert!(classical_count(z, z, x).unwrap() <= classical_count(z, z, x + dx).unwrap());
    }

    #[test]
    fn count_is_invariant_under_moving_both_points(g in gamma_word(4), z in point(), w in point(), x in 2.0f64..40.0) {
        // N(X; gz, w) = N(X; z, w) since the ball is a union of cosets
        let gz = mobius_apply(&g, z).unwrap();
        let a = classical_count(z, w, x).unwrap();
        let b = classical_count(gz, w, x).unwrap();
        prop_assume!(a == classical_count(z, w, x * (1.0 + 1e-9)).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn enumeration_matches_count(z in point(), x in 2.0f64..40.0) {
        let v = ball_enumerate(z, z, x).unwrap();
        prop_assert_eq!(v.len() as u64, classical_count(z, z, x).unwrap());
        prop_assert!(v.windows(2).all(|p| p[0] < p[1]));
    }
}

#[test]
fn enumeration_independent_of_thread_count() {
    let z = UpperHalfPoint::new(0.123, 1.37).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| ball_enumerate(z, UpperHalfPoint::i(), 800.0).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(7));
}

#[test]
fn cache_roundtrip_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.txt");
    let cache = BallCache::build(UpperHalfPoint::i(), UpperHalfPoint::new(0.25, 2.0).unwrap(), 120.0).unwrap();
    cache_store(&path, &cache).unwrap();
    assert_eq!(cache_load(&path).unwrap(), cache);
}
