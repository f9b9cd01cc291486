//! Geometry of the upper half-plane: points, real Möbius maps, and distances.

use crate::error::{Error, Result};

/// A point `x + iy` with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint {
    x: f64,
    y: f64,
}

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && y > 0.0 {
            Ok(Self { x, y })
        } else {
            Err(Error::InvalidPoint { x, y })
        }
    }

    /// The point `i`.
    pub fn i() -> Self {
        Self { x: 0.0, y: 1.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn abs(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Anything acting on the upper half-plane by a determinant-one fractional
/// linear map.
pub trait Mobius {
    /// Entries `(m11, m12, m21, m22)` as floats.
    fn entries_f64(&self) -> [f64; 4];
}

/// Real 2x2 matrix normalized to determinant one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealMatrix2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl RealMatrix2 {
    /// Builds the matrix and rescales it to determinant one. A non-positive
    /// determinant would not preserve the upper half-plane and is rejected.
    pub fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Result<Self> {
        let det = m11 * m22 - m12 * m21;
        if !(det.is_finite() && det > 0.0) {
            return Err(Error::Domain(format!(
                "real matrix needs positive determinant, got {det}"
            )));
        }
        let s = det.sqrt().recip();
        Ok(Self {
            m11: m11 * s,
            m12: m12 * s,
            m21: m21 * s,
            m22: m22 * s,
        })
    }

    pub fn identity() -> Self {
        Self {
            m11: 1.0,
            m12: 0.0,
            m21: 0.0,
            m22: 1.0,
        }
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Inverse, valid because the determinant is one.
    pub fn inverse(&self) -> Self {
        Self {
            m11: self.m22,
            m12: -self.m12,
            m21: -self.m21,
            m22: self.m11,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            m11: self.m11 * o.m11 + self.m12 * o.m21,
            m12: self.m11 * o.m12 + self.m12 * o.m22,
            m21: self.m21 * o.m11 + self.m22 * o.m21,
            m22: self.m21 * o.m12 + self.m22 * o.m22,
        }
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }
}

impl Mobius for RealMatrix2 {
    fn entries_f64(&self) -> [f64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }
}

/// `(m11 z + m12) / (m21 z + m22)`.
pub fn mobius_apply<M: Mobius + ?Sized>(m: &M, z: UpperHalfPoint) -> Result<UpperHalfPoint> {
    let [a, b, c, d] = m.entries_f64();
    let (x, y) = (z.x, z.y);
    // denominator c z + d
    let dr = c * x + d;
    let di = c * y;
    let den = dr * dr + di * di;
    let nr = a * x + b;
    let ni = a * y;
    let det = a * d - b * c;
    let rx = (nr * dr + ni * di) / den;
    let ry = det * y / den;
    UpperHalfPoint::new(rx, ry)
}

/// `cosh ρ(z, w) = 1 + |z - w|² / (2 Im z Im w)`.
pub fn cosh_dist(z: UpperHalfPoint, w: UpperHalfPoint) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y)
}

/// Hyperbolic distance.
pub fn dist(z: UpperHalfPoint, w: UpperHalfPoint) -> f64 {
    // 2 asinh(sinh(ρ/2)) stays accurate for nearby points
    2.0 * sinh_half_dist(z, w).asinh()
}

/// `sinh(ρ/2) = |z - w| / (2 sqrt(Im z Im w))`.
pub fn sinh_half_dist(z: UpperHalfPoint, w: UpperHalfPoint) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    dx.hypot(dy) / (2.0 * (z.y * w.y).sqrt())
}

/// Cosh of the distance from `w` to the imaginary axis, `|w| / Im w`.
pub fn cosh_dist_to_imaginary_axis(w: UpperHalfPoint) -> f64 {
    w.abs() / w.y
}

/// Moves `z` into the standard fundamental domain of the modular group
/// (`|x| <= 1/2`, `|z| >= 1`) by translations and inversions.
pub fn reduce_to_fundamental_domain(z: UpperHalfPoint) -> UpperHalfPoint {
    let (mut x, mut y) = (z.x, z.y);
    for _ in 0..10_000 {
        x -= x.round();
        let r2 = x * x + y * y;
        if r2 >= 1.0 {
            break;
        }
        x = -x / r2;
        y /= r2;
    }
    UpperHalfPoint { x, y }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn rejects_bad_points() {
        assert!(UpperHalfPoint::new(0.0, 0.0).is_err());
        assert!(UpperHalfPoint::new(0.0, -1.0).is_err());
        assert!(UpperHalfPoint::new(f64::NAN, 1.0).is_err());
        assert!(UpperHalfPoint::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn mobius_examples() {
        let id = RealMatrix2::identity();
        assert_eq!(mobius_apply(&id, p(0.3, 2.0)).unwrap(), p(0.3, 2.0));
        let t = RealMatrix2::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(mobius_apply(&t, UpperHalfPoint::i()).unwrap(), p(1.0, 1.0));
        let s = RealMatrix2::new(0.0, -1.0, 1.0, 0.0).unwrap();
        let w = mobius_apply(&s, UpperHalfPoint::i()).unwrap();
        assert!(w.x().abs() < 1e-15 && (w.y() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn normalizes_determinant() {
        let m = RealMatrix2::new(2.0, 1.0, 0.0, 2.0).unwrap();
        assert!((m.det() - 1.0).abs() < 1e-15);
        assert!(RealMatrix2::new(0.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn distance_examples() {
        let i = UpperHalfPoint::i();
        assert_eq!(cosh_dist(i, p(0.0, 2.0)), 1.25);
        assert_eq!(cosh_dist(i, p(1.0, 1.0)), 1.5);
        assert_eq!(cosh_dist(i, i), 1.0);
        assert!((dist(i, p(0.0, 4.0)) - 4f64.ln()).abs() < 1e-15);
        assert_eq!(dist(i, i), 0.0);
        assert_eq!(sinh_half_dist(i, p(1.0, 1.0)), 0.5);
    }

    #[test]
    fn axis_distance_examples() {
        assert_eq!(cosh_dist_to_imaginary_axis(p(0.0, 3.7)), 1.0);
        assert!((cosh_dist_to_imaginary_axis(p(1.0, 1.0)) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(cosh_dist_to_imaginary_axis(p(3.0, 4.0)), 1.25);
    }

    #[test]
    fn fundamental_domain() {
        let z = reduce_to_fundamental_domain(p(3.3, 0.01));
        assert!(z.x().abs() <= 0.5 && z.abs() >= 1.0 - 1e-12);
    }
}
