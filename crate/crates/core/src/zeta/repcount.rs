//! Representation numbers `r(Q, n)`: solutions of `Q(x, y) = n` counted
//! modulo the automorphs `±M_Q^k`.
//!
//! Write `Q = a (x − w₁y)(x − w₂y)`. The automorph scales the two linear
//! factors by `ε` and `ε⁻¹` (with `ε = (t + u√d)/2`), so every orbit has a
//! member whose factor ratio lies in `[1, ε²)`, and that member has
//! `|y| <= |a|(1 + ε)√(n/|a|)/√d`. Enumerating every solution in that
//! strip and reducing each one to a canonical orbit representative with
//! exact integer steps gives the orbit count without any rounding
//! decisions: solutions outside the fundamental window only ever land on
//! orbits that are already present.

use std::collections::BTreeSet;

use num_integer::Roots;
use rayon::prelude::*;

use crate::conjcls::{automorph, pell_fundamental, QuadForm};
use crate::error::{Error, Result};
use crate::modgroup::GammaMatrix;

/// Largest `y` half-range scanned before giving up.
const STRIP_CAP: i128 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepCount {
    pub n: u64,
    pub count: u64,
}

type Vec2 = (i128, i128);

fn apply(m: &GammaMatrix, v: Vec2) -> Vec2 {
    let [a, b, c, d] = m.entries().map(i128::from);
    (a * v.0 + b * v.1, c * v.0 + d * v.1)
}

fn l1(v: Vec2) -> i128 {
    v.0.abs() + v.1.abs()
}

/// Ordering key of `±v`: smallest `(|x| + |y|, x, y)` of the pair.
fn key(v: Vec2) -> (i128, i128, i128) {
    let p = (l1(v), v.0, v.1);
    let m = (l1(v), -v.0, -v.1);
    p.min(m)
}

/// The orbit representative of `v` under `±M^k`. `|x| + |y|` is convex
/// along an orbit, so a descent finds the minimum level and the ties at
/// that level are adjacent.
pub(crate) fn canonical(m: &GammaMatrix, v: Vec2) -> (i128, i128) {
    let minv = m.inverse();
    let mut v = v;
    loop {
        let (f, b) = (apply(m, v), apply(&minv, v));
        if l1(f) < l1(v) {
            v = f;
        } else if l1(b) < l1(v) {
            v = b;
        } else {
            break;
        }
    }
    let level = l1(v);
    let mut best = key(v);
    for step in [m, &minv] {
        let mut w = apply(step, v);
        while l1(w) == level {
            best = best.min(key(w));
            w = apply(step, w);
        }
    }
    (best.1, best.2)
}

/// Precomputed data for counting representations by one form.
#[derive(Debug, Clone)]
pub struct RepCounter {
    q: QuadForm,
    m: GammaMatrix,
    /// `|a|(1 + ε)/√(d|a|)`: the strip half-width is this times `√n`.
    strip: f64,
}

impl RepCounter {
    pub fn new(q: QuadForm) -> Result<Self> {
        let m = automorph(&q)?;
        let d = q.disc() as f64;
        let (t, u) = pell_fundamental(q.disc())?;
        let eps = (t as f64 + u as f64 * d.sqrt()) / 2.0;
        let a = q.a().unsigned_abs() as f64;
        Ok(Self {
            q,
            m,
            strip: a * (1.0 + eps) / (d * a).sqrt(),
        })
    }

    pub fn form(&self) -> QuadForm {
        self.q
    }

    /// Canonical representatives of every orbit of solutions of `Q = n`.
    pub fn orbits(&self, n: u64) -> Result<Vec<(i128, i128)>> {
        if n == 0 {
            return Err(Error::Domain("representation count needs n >= 1".into()));
        }
        let half = (self.strip * (n as f64).sqrt() * (1.0 + 1e-9)).ceil() as i128 + 1;
        if half > STRIP_CAP {
            return Err(Error::BoxGrowthCap { n });
        }
        let [a, b, c] = self.q.coeffs().map(i128::from);
        let d = self.q.disc() as i128;
        let n = n as i128;
        let mut reps = BTreeSet::new();
        for y in -half..=half {
            // a x² + b y x + (c y² − n) = 0
            let disc = d * y * y + 4 * a * n;
            if disc < 0 {
                continue;
            }
            let r = disc.sqrt();
            if r * r != disc {
                continue;
            }
            for num in [-b * y + r, -b * y - r] {
                if num % (2 * a) == 0 {
                    let x = num / (2 * a);
                    debug_assert_eq!(a * x * x + b * x * y + c * y * y, n);
                    reps.insert(canonical(&self.m, (x, y)));
                }
            }
        }
        Ok(reps.into_iter().collect())
    }

    pub fn count(&self, n: u64) -> Result<u64> {
        Ok(self.orbits(n)?.len() as u64)
    }

    /// `r(Q, n)` for `n = 1..=nmax`, computed in parallel.
    pub fn counts_upto(&self, nmax: u64) -> Result<Vec<u64>> {
        (1..=nmax).into_par_iter().map(|n| self.count(n)).collect()
    }
}

/// `r(Q, n)`, all solutions (primitive or not) modulo `Aut(Q)`.
pub fn rep_count(q: &QuadForm, n: u64) -> Result<u64> {
    RepCounter::new(*q)?.count(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn form(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(a, b, c).unwrap()
    }

    /// Box search with orbit closure by explicit powers of `M`.
    fn naive(q: &QuadForm, n: i128, bound: i128) -> usize {
        let m = automorph(q).unwrap();
        let [a, b, c] = q.coeffs().map(i128::from);
        let mut seen = HashSet::new();
        for x in -bound..=bound {
            for y in -bound..=bound {
                if a * x * x + b * x * y + c * y * y != n {
                    continue;
                }
                let mut orbit = vec![(x, y)];
                for step in [m, m.inverse()] {
                    let mut w = (x, y);
                    for _ in 0..12 {
                        w = apply(&step, w);
                        orbit.push(w);
                    }
                }
                let rep = orbit
                    .iter()
                    .flat_map(|&(p, q)| [(p, q), (-p, -q)])
                    .map(|(p, q)| (p.abs() + q.abs(), p, q))
                    .min()
                    .unwrap();
                seen.insert(rep);
            }
        }
        seen.len()
    }

    #[test]
    fn golden_small_n() {
        let q = form(1, 1, -1);
        let got: Vec<u64> = (1..=12).map(|n| rep_count(&q, n).unwrap()).collect();
        assert_eq!(got, [1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 2, 0]);
        let q = form(1, 0, -2);
        let got: Vec<u64> = (1..=12).map(|n| rep_count(&q, n).unwrap()).collect();
        assert_eq!(got, [1, 1, 0, 1, 0, 0, 2, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn agrees_with_box_search() {
        for q in [form(1, 1, -1), form(1, 0, -2), form(2, 1, -2), form(1, 0, -3), form(-1, 3, 1)] {
            let counter = RepCounter::new(q).unwrap();
            for n in 1..=50u64 {
                assert_eq!(
                    counter.count(n).unwrap() as usize,
                    naive(&q, n as i128, 80),
                    "{q} n = {n}"
                );
            }
        }
    }

    #[test]
    fn canonical_is_orbit_invariant() {
        let q = form(1, 1, -1);
        let m = automorph(&q).unwrap();
        let v = (7, 3);
        let c = canonical(&m, v);
        let mut w = v;
        for _ in 0..6 {
            w = apply(&m, w);
            assert_eq!(canonical(&m, w), c);
            assert_eq!(canonical(&m, (-w.0, -w.1)), c);
        }
    }

    #[test]
    fn equivalent_forms_agree() {
        let q = form(1, 1, -1);
        let q2 = q.transform(&GammaMatrix::T).unwrap();
        let (c1, c2) = (RepCounter::new(q).unwrap(), RepCounter::new(q2).unwrap());
        assert_eq!(c1.counts_upto(200).unwrap(), c2.counts_upto(200).unwrap());
    }

    #[test]
    fn zero_rejected() {
        assert!(rep_count(&form(1, 1, -1), 0).is_err());
    }
}
