//! The nonholomorphic Eisenstein series of the modular group by direct
//! summation, and its periods along closed geodesics.

use std::f64::consts::{PI, SQRT_2};

use num_integer::Integer;
use rayon::prelude::*;

use crate::conjcls::ConjClass;
use crate::error::{Error, Result};
use crate::hypgeom::{reduce_to_fundamental_domain, UpperHalfPoint};
use crate::specfun::gauss_legendre_on;

/// A truncated Eisenstein sum with its tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EisensteinValue {
    pub value: f64,
    pub tail_bound: f64,
    /// The point actually summed at (the reduced representative).
    pub point: UpperHalfPoint,
}

fn check_s(s: f64) -> Result<()> {
    if s >= 1.5 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Eisenstein series needs s >= 1.5, got {s}")))
    }
}

/// `½ Σ_{gcd(c,d)=1, c²+d² <= N²} y^s / |cz + d|^{2s}` at `z` itself.
///
/// The omitted terms are bounded through `|cz + d|² >= m (c² + d²)`, with
/// `m` the smaller eigenvalue of the form `c²|z|² + 2cdx + d²`, and a
/// lattice-point comparison with the integral over `|v| > N − √2`.
pub fn eisenstein_raw(z: UpperHalfPoint, s: f64, n: u32) -> Result<EisensteinValue> {
    check_s(s)?;
    if n < 2 {
        return Err(Error::Domain("Eisenstein truncation needs N >= 2".into()));
    }
    let (x, y) = (z.x(), z.y());
    let nn = n as i64 * n as i64;
    // the (0, ±1) pair contributes y^s; every other pair has c >= 1 up to sign
    let rows: Vec<f64> = (1..=n as i64)
        .into_par_iter()
        .map(|c| {
            let dmax = ((nn - c * c) as f64).sqrt().floor() as i64;
            let cx = c as f64 * x;
            let cy2 = (c as f64 * y).powi(2);
            let mut acc = 0.0;
            for d in -dmax..=dmax {
                if c.gcd(&d) == 1 {
                    let p = cx + d as f64;
                    acc += (p * p + cy2).powf(-s);
                }
            }
            acc
        })
        .collect();
    let value = y.powf(s) * (1.0 + rows.iter().sum::<f64>());

    let z2 = x * x + y * y;
    let tr = z2 + 1.0;
    let m = y * y / ((tr + (tr * tr - 4.0 * y * y).max(0.0).sqrt()) / 2.0);
    let r = n as f64 - SQRT_2;
    let tail = 0.5 * (y / m).powf(s)
        * 2.0
        * PI
        * (r.powf(2.0 - 2.0 * s) / (2.0 * s - 2.0) + SQRT_2 / 2.0 * r.powf(1.0 - 2.0 * s) / (2.0 * s - 1.0));
    Ok(EisensteinValue {
        value,
        tail_bound: tail,
        point: z,
    })
}

/// `E(z, s)` for `s >= 1.5`, summed at the reduced representative of `z`.
pub fn eisenstein_series(z: UpperHalfPoint, s: f64, n: u32) -> Result<EisensteinValue> {
    eisenstein_raw(reduce_to_fundamental_domain(z), s, n)
}

/// A geodesic period with the summed truncation bound of its integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodValue {
    pub value: f64,
    pub tail_bound: f64,
    pub nodes: usize,
}

/// `∫ E(z(r), s) dr` over the axis segment `r ∈ [0, μ/ν]` by
/// Gauss–Legendre quadrature in the arc-length parameter.
pub fn eisenstein_period_numeric(cls: &ConjClass, s: f64, nodes: usize, n: u32) -> Result<PeriodValue> {
    period_with(cls, nodes, |z| eisenstein_series(z, s, n).map(|e| (e.value, e.tail_bound)))
}

/// Quadrature of an arbitrary integrand along the segment; used with the
/// constant function to check the arc length.
pub fn period_with(
    cls: &ConjClass,
    nodes: usize,
    f: impl Fn(UpperHalfPoint) -> Result<(f64, f64)>,
) -> Result<PeriodValue> {
    if nodes < 8 {
        return Err(Error::Domain(format!("period quadrature needs >= 8 nodes, got {nodes}")));
    }
    let mut value = 0.0;
    let mut tail = 0.0;
    for (r, w) in gauss_legendre_on(0.0, cls.segment_length(), nodes) {
        let (v, t) = f(cls.geodesic_point(r))?;
        value += w * v;
        tail += w * t;
    }
    Ok(PeriodValue {
        value,
        tail_bound: tail,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjcls::{make_class, QuadForm};
    use crate::hypgeom::mobius_apply;
    use crate::modgroup::GammaMatrix;

    fn pt(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn truncation_consistency() {
        let a = eisenstein_series(UpperHalfPoint::i(), 2.0, 400).unwrap();
        let b = eisenstein_series(UpperHalfPoint::i(), 2.0, 800).unwrap();
        assert!((a.value - b.value).abs() < 1e-5);
        assert!(b.value - a.value <= a.tail_bound);
        assert!(b.tail_bound < a.tail_bound);
    }

    #[test]
    fn known_value_at_i() {
        // Σ'_{(c,d)≠0} (c² + d²)^{-s} = 4ζ(s)β(s) = ζ(2s) · Σ_coprime, so
        // E(i, 2) = 2ζ(2)β(2)/ζ(4) with β(2) Catalan's constant
        let e = eisenstein_series(UpperHalfPoint::i(), 2.0, 800).unwrap();
        let (z2, z4, catalan) = (PI * PI / 6.0, PI.powi(4) / 90.0, 0.915_965_594_177_219_f64);
        let want = 2.0 * z2 * catalan / z4;
        assert!((e.value - want).abs() < e.tail_bound + 1e-12, "{} vs {}", e.value, want);
    }

    #[test]
    fn modular_invariance() {
        let z = pt(0.31, 0.47);
        let base = eisenstein_raw(z, 2.0, 600).unwrap();
        for g in [GammaMatrix::T, GammaMatrix::S, GammaMatrix::new(2, 1, 5, 3).unwrap()] {
            let gz = mobius_apply(&g, z).unwrap();
            let v = eisenstein_raw(gz, 2.0, 600).unwrap();
            assert!(
                (v.value - base.value).abs() <= v.tail_bound + base.tail_bound,
                "{g}: {} vs {}",
                v.value,
                base.value
            );
        }
    }

    #[test]
    fn constant_term_dominates_high_in_cusp() {
        for y in [5.0, 10.0, 20.0] {
            let e = eisenstein_series(pt(0.2, y), 2.0, 200).unwrap();
            let ratio = e.value / y.powf(2.0);
            assert!(ratio > 1.0 && ratio < 1.0 + 2.0 / y, "y = {y}: {ratio}");
        }
    }

    #[test]
    fn period_quadrature() {
        let cls = make_class(QuadForm::new(1, 1, -1).unwrap(), 1).unwrap();
        let one = period_with(&cls, 16, |_| Ok((1.0, 0.0))).unwrap();
        assert!((one.value - cls.mu()).abs() < 1e-13);
        let a = eisenstein_period_numeric(&cls, 2.0, 32, 200).unwrap();
        let b = eisenstein_period_numeric(&cls, 2.0, 64, 200).unwrap();
        assert!((a.value / b.value - 1.0).abs() < 1e-6);
        assert!(a.value > 0.0);
        assert!(eisenstein_period_numeric(&cls, 2.0, 4, 200).is_err());
    }

    #[test]
    fn domain() {
        assert!(eisenstein_series(UpperHalfPoint::i(), 1.2, 100).is_err());
    }
}
