//! Enumeration of group balls `{γ : 2 cosh ρ(z, γw) <= X}`.
//!
//! With `σ_z = (√y, x/√y; 0, 1/√y)` the Frobenius norm of `σ_z⁻¹ γ σ_w` is
//! `2 cosh ρ(z, γw)`. Multiplying out, `y_z y_w ‖σ_z⁻¹ γ σ_w‖²` equals
//!
//! ```text
//! y_z² (c² y_w² + P²) + y_w² (a − x_z c)² + (a x_w + b − x_z P)²,   P = c x_w + d
//! ```
//!
//! which is a polynomial in the (dyadic rational) inputs, so threshold
//! decisions near a jump can be settled exactly with rationals.
//!
//! The scan runs over bottom rows `(c, d)`: the bottom part of the norm is
//! `B = (y_z / y_w)|cw + d|²`, and for a fixed coprime row the admissible top
//! rows form the line `(a0 + kc, b0 + kd)`, on which the top part is a
//! quadratic in `k` whose minimum is exactly `1/B`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::matrix::GammaMatrix;
use crate::error::{Error, Result};
use crate::hypgeom::UpperHalfPoint;

/// Relative width of the band around a threshold inside which floating
/// comparisons are replaced by exact rational ones.
pub const GUARD: f64 = 1e-9;

/// Largest entry magnitude the scanner accepts.
const ENTRY_LIMIT: f64 = (1u64 << 40) as f64;

/// Integer slack when rounding real scan bounds.
const ROUND_SLACK: f64 = 1e-7;

fn rat(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite float")
}

/// A counting threshold together with its exact rational value.
#[derive(Debug, Clone)]
pub struct Threshold {
    value: f64,
    exact: BigRational,
}

impl Threshold {
    /// Threshold given directly as a float (taken to be exact).
    pub fn new(value: f64) -> Self {
        Self {
            value,
            exact: rat(value),
        }
    }

    /// `2 + X² (t0² − 4)`: the Frobenius bound equivalent to
    /// `sinh(ρ/2) / sinh(μ/2) <= X` when `2 cosh(μ/2) = t0`.
    pub fn displacement(x: f64, t0: i64) -> Self {
        let k = (t0 as f64) * (t0 as f64) - 4.0;
        let value = 2.0 + x * x * k;
        let xr = rat(x);
        let kr = BigRational::from_integer(BigInt::from(t0) * BigInt::from(t0) - BigInt::from(4));
        let exact = BigRational::from_integer(BigInt::from(2)) + &xr * &xr * kr;
        Self { value, exact }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> &BigRational {
        &self.exact
    }
}

/// Evaluates `‖σ_z⁻¹ γ σ_w‖²` in floating point and exactly.
#[derive(Debug, Clone)]
pub struct FrobeniusNorm {
    z: UpperHalfPoint,
    w: UpperHalfPoint,
}

impl FrobeniusNorm {
    pub fn new(z: UpperHalfPoint, w: UpperHalfPoint) -> Self {
        Self { z, w }
    }

    pub fn z(&self) -> UpperHalfPoint {
        self.z
    }

    pub fn w(&self) -> UpperHalfPoint {
        self.w
    }

    /// `2 cosh ρ(z, γw)`.
    pub fn eval(&self, g: &GammaMatrix) -> f64 {
        let (xz, yz, xw, yw) = (self.z.x(), self.z.y(), self.w.x(), self.w.y());
        let [a, b, c, d] = g.entries().map(|v| v as f64);
        let p = c * xw + d;
        let e1 = a - xz * c;
        let e2 = a * xw + b - xz * p;
        (yz * yz * (c * c * yw * yw + p * p) + yw * yw * e1 * e1 + e2 * e2) / (yz * yw)
    }

    /// Exact comparison of `2 cosh ρ(z, γw)` against a rational bound.
    pub fn cmp_exact(&self, g: &GammaMatrix, bound: &BigRational) -> Ordering {
        let (xz, yz, xw, yw) = (
            rat(self.z.x()),
            rat(self.z.y()),
            rat(self.w.x()),
            rat(self.w.y()),
        );
        let [a, b, c, d] = g.entries().map(|v| BigRational::from_integer(BigInt::from(v)));
        let p = &c * &xw + &d;
        let e1 = &a - &xz * &c;
        let e2 = &a * &xw + &b - &xz * &p;
        let lhs = &yz * &yz * (&c * &c * &yw * &yw + &p * &p) + &yw * &yw * &e1 * &e1 + &e2 * &e2;
        lhs.cmp(&(bound * &yz * &yw))
    }

    /// `2 cosh ρ(z, γw) <= thr`, using the float value `q` unless it falls
    /// inside the guard band.
    pub fn le_guarded(&self, g: &GammaMatrix, q: f64, thr: &Threshold) -> bool {
        let t = thr.value;
        if q < t * (1.0 - GUARD) {
            true
        } else if q > t * (1.0 + GUARD) {
            false
        } else {
            self.cmp_exact(g, &thr.exact) != Ordering::Greater
        }
    }
}

/// Counts the entries of an ascending key list lying below a threshold.
/// Keys inside the guard band are decided by `exact_le(index)`.
pub fn guarded_count(keys: &[f64], thr: f64, exact_le: impl Fn(usize) -> bool) -> usize {
    let lo = keys.partition_point(|&q| q < thr * (1.0 - GUARD));
    let hi = keys.partition_point(|&q| q <= thr * (1.0 + GUARD));
    lo + (lo..hi).filter(|&i| exact_le(i)).count()
}

/// `(u, v)` with `u·x + v·y = gcd(x, y)`.
fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (x as i128, y as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

struct Scan<'a> {
    norm: &'a FrobeniusNorm,
    thr: &'a Threshold,
    /// Threshold widened by the guard band, used for the scan ranges.
    t: f64,
    /// Largest admissible bottom part `B` (from `B + 1/B <= t`).
    bmax: f64,
}

impl Scan<'_> {
    fn row(&self, c: i64, emit: &mut impl FnMut(GammaMatrix, f64)) {
        let (xz, yz, xw, yw) = (
            self.norm.z.x(),
            self.norm.z.y(),
            self.norm.w.x(),
            self.norm.w.y(),
        );
        let cf = c as f64;
        let (dlo, dhi) = if c == 0 {
            (1, 1)
        } else {
            let rad = self.bmax * yw / yz - cf * cf * yw * yw;
            if rad < -ROUND_SLACK {
                return;
            }
            let r = rad.max(0.0).sqrt();
            let centre = -cf * xw;
            (
                (centre - r - ROUND_SLACK).ceil() as i64,
                (centre + r + ROUND_SLACK).floor() as i64,
            )
        };
        let alpha = yw / yz;
        let beta = 1.0 / (yz * yw);
        for d in dlo..=dhi {
            let (a0, b0) = if c == 0 {
                (1, 0)
            } else {
                let (g, u, v) = ext_gcd(d, c);
                if g != 1 {
                    continue;
                }
                (u, -v)
            };
            let df = d as f64;
            let p = cf * xw + df;
            let bottom = (yz / yw) * (cf * cf * yw * yw + p * p);
            let rem = self.t - bottom - 1.0 / bottom;
            if rem < 0.0 {
                continue;
            }
            let (a0f, b0f) = (a0 as f64, b0 as f64);
            let e1 = a0f - xz * cf;
            let e2 = a0f * xw + b0f - xz * p;
            let quad = alpha * cf * cf + beta * p * p;
            let kstar = -(alpha * e1 * cf + beta * e2 * p) / quad;
            let half = (rem / quad).sqrt();
            let klo = (kstar - half - ROUND_SLACK).ceil() as i64;
            let khi = (kstar + half + ROUND_SLACK).floor() as i64;
            for k in klo..=khi {
                let g = GammaMatrix::from_canonical(a0 + k * c, b0 + k * d, c, d);
                let q = self.norm.eval(&g);
                if self.norm.le_guarded(&g, q, self.thr) {
                    emit(g, q);
                }
            }
        }
    }
}

fn check_bound(what: &'static str, lo: f64, hi: f64) -> Result<()> {
    if lo.abs().max(hi.abs()) > ENTRY_LIMIT || !lo.is_finite() || !hi.is_finite() {
        Err(Error::BoundTooLarge { what, lo, hi })
    } else {
        Ok(())
    }
}

fn prepare<'a>(norm: &'a FrobeniusNorm, thr: &'a Threshold) -> Result<Option<(Scan<'a>, i64)>> {
    // 2 cosh ρ >= 2 always
    if thr.exact < BigRational::from_integer(BigInt::from(2)) {
        return Ok(None);
    }
    let t = thr.value.max(2.0) * (1.0 + GUARD);
    let bmax = 0.5 * (t + (t * t - 4.0).max(0.0).sqrt());
    let (xz, yz, xw, yw) = (norm.z.x(), norm.z.y(), norm.w.x(), norm.w.y());
    let cmax_f = (bmax / (yz * yw)).sqrt() + ROUND_SLACK;
    check_bound("c", 0.0, cmax_f)?;
    let dspan = cmax_f * xw.abs() + (bmax * yw / yz).sqrt() + 1.0;
    check_bound("d", -dspan, dspan)?;
    let aspan = (t * yz / yw).sqrt() + xz.abs() * cmax_f + 1.0;
    check_bound("a", -aspan, aspan)?;
    let bspan = (t * yz * yw).sqrt() + xz.abs() * (dspan + cmax_f * xw.abs()) + aspan * xw.abs() + 1.0;
    check_bound("b", -bspan, bspan)?;
    Ok(Some((
        Scan {
            norm,
            thr,
            t,
            bmax,
        },
        cmax_f.floor() as i64,
    )))
}

/// Visits every canonical `γ` with `2 cosh ρ(z, γw) <= thr` and collects the
/// values returned by `f(γ, 2 cosh ρ)`. The output order is deterministic:
/// ascending `c`, then `d`, then `k`, regardless of the worker count.
pub fn ball_visit<T, F>(z: UpperHalfPoint, w: UpperHalfPoint, thr: &Threshold, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(GammaMatrix, f64) -> Option<T> + Sync,
{
    let norm = FrobeniusNorm::new(z, w);
    let Some((scan, cmax)) = prepare(&norm, thr)? else {
        return Ok(Vec::new());
    };
    let rows: Vec<Vec<T>> = (0..=cmax)
        .into_par_iter()
        .map(|c| {
            let mut out = Vec::new();
            scan.row(c, &mut |g, q| {
                if let Some(v) = f(g, q) {
                    out.push(v);
                }
            });
            out
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// All canonical `γ` with `2 cosh ρ(z, γw) <= x`, sorted and duplicate-free.
pub fn ball_enumerate(z: UpperHalfPoint, w: UpperHalfPoint, x: f64) -> Result<Vec<GammaMatrix>> {
    let mut v = ball_visit(z, w, &Threshold::new(x), |g, _| Some(g))?;
    v.sort_unstable();
    Ok(v)
}

/// `N(X; z, w)`, the size of the ball.
pub fn classical_count(z: UpperHalfPoint, w: UpperHalfPoint, x: f64) -> Result<u64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("classical_count needs X > 0, got {x}")));
    }
    let thr = Threshold::new(x);
    let norm = FrobeniusNorm::new(z, w);
    let Some((scan, cmax)) = prepare(&norm, &thr)? else {
        return Ok(0);
    };
    Ok((0..=cmax)
        .into_par_iter()
        .map(|c| {
            let mut n = 0u64;
            scan.row(c, &mut |_, _| n += 1);
            n
        })
        .sum())
}

/// One row of a classical error series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalRow {
    pub x: f64,
    pub n: u64,
    pub mainterm: f64,
    pub error: f64,
    pub err_norm_half: f64,
    pub err_norm_twothirds: f64,
}

/// `E(X; z, w) = N(X; z, w) − main_coeff · X` on an ascending grid.
/// For the modular group `main_coeff` is 3.
pub fn classical_error_series(
    z: UpperHalfPoint,
    w: UpperHalfPoint,
    grid: &[f64],
    main_coeff: f64,
) -> Result<Vec<ClassicalRow>> {
    if grid.windows(2).any(|p| !(p[0] < p[1])) {
        return Err(Error::Domain("grid must be strictly ascending".into()));
    }
    let Some(&xmax) = grid.last() else {
        return Ok(Vec::new());
    };
    let norm = FrobeniusNorm::new(z, w);
    let mut elems = ball_visit(z, w, &Threshold::new(xmax), |g, q| Some((q, g)))?;
    elems.sort_unstable_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
    let keys: Vec<f64> = elems.iter().map(|e| e.0).collect();
    Ok(grid
        .iter()
        .map(|&x| {
            let bound = rat(x);
            let n = guarded_count(&keys, x, |i| norm.cmp_exact(&elems[i].1, &bound) != Ordering::Greater) as u64;
            let mainterm = main_coeff * x;
            let error = n as f64 - mainterm;
            ClassicalRow {
                x,
                n,
                mainterm,
                error,
                err_norm_half: error / x.sqrt(),
                err_norm_twothirds: error / x.powf(2.0 / 3.0),
            }
        })
        .collect())
}

/// Sum of squares `a² + b² + c² + d²`, i.e. `2 cosh ρ(i, γi)`.
pub fn frobenius_sq_at_i(g: &GammaMatrix) -> i128 {
    g.entries().iter().map(|&v| (v as i128) * (v as i128)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn stabilizer_of_i() {
        let i = UpperHalfPoint::i();
        let b = ball_enumerate(i, i, 2.0).unwrap();
        assert_eq!(b, vec![GammaMatrix::S, GammaMatrix::IDENTITY]);
        assert_eq!(ball_enumerate(i, i, 1.5).unwrap().len(), 0);
        assert_eq!(classical_count(i, i, 2.0).unwrap(), 2);
        assert_eq!(classical_count(i, p(0.0, 2.0), 1.0).unwrap(), 0);
    }

    #[test]
    fn frobenius_identity() {
        let z = p(0.3, 1.7);
        let w = p(-0.8, 0.4);
        let g = GammaMatrix::new(2, 3, 5, 8).unwrap();
        let n = FrobeniusNorm::new(z, w).eval(&g);
        let gw = crate::hypgeom::mobius_apply(&g, w).unwrap();
        let direct = 2.0 * crate::hypgeom::cosh_dist(z, gw);
        assert!((n - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn ext_gcd_identity() {
        for (x, y) in [(7, 3), (-5, 12), (0, 1), (1, 0), (-9, 4)] {
            let (g, u, v) = ext_gcd(x, y);
            assert_eq!(u * x + v * y, g);
            assert_eq!(g, num_integer::gcd(x, y));
        }
    }

    #[test]
    fn guard_band_exact_at_jump() {
        let i = UpperHalfPoint::i();
        // a² + b² + c² + d² = 3 for (1 1; 0 1): the boundary is included
        let n5 = classical_count(i, i, 3.0).unwrap();
        let below = classical_count(i, i, 3.0 - 1e-12).unwrap();
        assert!(n5 > below);
    }

    #[test]
    fn bound_too_large() {
        let z = p(0.0, 1e-20);
        assert!(matches!(
            classical_count(z, z, 10.0),
            Err(Error::BoundTooLarge { .. })
        ));
    }

    #[test]
    fn series_matches_counts() {
        let z = p(0.1, 0.9);
        let w = p(0.5, 1.3);
        let grid = [2.5, 7.0, 30.0, 120.0];
        let rows = classical_error_series(z, w, &grid, 3.0).unwrap();
        for r in rows {
            assert_eq!(r.n, classical_count(z, w, r.x).unwrap());
            assert_eq!(r.error, r.n as f64 - 3.0 * r.x);
        }
        let i = UpperHalfPoint::i();
        let rows = classical_error_series(i, i, &[2.0], 3.0).unwrap();
        assert_eq!(rows[0].error, -4.0);
    }
}
