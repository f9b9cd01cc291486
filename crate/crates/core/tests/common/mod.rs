#![allow(dead_code)]

use hyperlattice::{GammaMatrix, UpperHalfPoint};
use proptest::prelude::*;

/// Words `T^{k1} S T^{k2} S …` with small exponents.
pub fn gamma_word(max_len: usize) -> impl Strategy<Value = GammaMatrix> {
    prop::collection::vec(-3i64..=3, 1..=max_len).prop_map(|ks| {
        let mut g = GammaMatrix::IDENTITY;
        for k in ks {
            let t = GammaMatrix::new(1, k, 0, 1).unwrap();
            g = g.mul(&t).unwrap().mul(&GammaMatrix::S).unwrap();
        }
        g
    })
}

pub fn point() -> impl Strategy<Value = UpperHalfPoint> {
    (-2.0f64..2.0, 0.2f64..3.0).prop_map(|(x, y)| UpperHalfPoint::new(x, y).unwrap())
}
