//! Averages of the error over points of the closed geodesic.
//!
//! Both averages use the `K` midpoints of equal subsegments of the axis
//! segment of length `μ/ν`. The geodesic average approximates
//! `(ν/μ) ∫ e(H, X; z) ds(z)` by the midpoint rule; the discrete average is
//! `(1/K) Σ_m e(H, X; z_m)/X^{1/2}` together with the integrated variant
//! `(1/Y) ∫₁^Y e(H, x; z)/x^{1/2} dy`, `Y = X + √(X² − 1)`,
//! `y = x + √(x² − 1)`.

use rayon::prelude::*;

use crate::conjcls::{ConjClass, ConjCounter};
use crate::error::{Error, Result};
use crate::report::fmt_g;
use crate::specfun::gauss_legendre_on;

use super::series::check_grid;

/// Plain average of per-node values; the weights `μ/(νK)` of the midpoint
/// rule divided by the segment length `μ/ν` are exactly `1/K`.
pub fn node_average(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn node_counters(cls: &ConjClass, k: usize, xmax: f64) -> Result<Vec<ConjCounter>> {
    cls.geodesic_sample(k)
        .into_par_iter()
        .map(|z| ConjCounter::coset(cls, z, xmax.max(1.0)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicRow {
    pub x: f64,
    /// `(1/K) Σ e(H, X; z_m)`.
    pub average: f64,
    /// `(μ/ν) · average`, the quadrature of `∫ e ds`.
    pub integral: f64,
    /// `average / X^{1/2}`.
    pub normalized: f64,
    /// Spread `max_m e_m − min_m e_m` of the node values; any other
    /// midpoint rule on the same segment lands within it.
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicAverage {
    pub descriptor: String,
    pub k: usize,
    pub rows: Vec<GeodesicRow>,
    /// Running maximum of `average / X^{1/2}` and where it was attained.
    pub running_max: (f64, f64),
}

impl GeodesicAverage {
    pub const CSV_HEADER: &'static str = "X,average,integral,normalized,budget";

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# {} K={} running_max={} at X={}\n{}\n",
            self.descriptor,
            self.k,
            fmt_g(self.running_max.0),
            fmt_g(self.running_max.1),
            Self::CSV_HEADER
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_g(r.x),
                fmt_g(r.average),
                fmt_g(r.integral),
                fmt_g(r.normalized),
                fmt_g(r.budget)
            ));
        }
        out
    }
}

/// Per-node error table: `errors[i][m] = e(H, X_i; z_m)`.
fn node_errors(cls: &ConjClass, counters: &[ConjCounter], grid: &[f64]) -> Result<Vec<Vec<f64>>> {
    let c = cls.main_coeff();
    grid.iter()
        .map(|&x| {
            counters
                .iter()
                .map(|ctr| Ok(ctr.count(x)? as f64 - c * x))
                .collect()
        })
        .collect()
}

pub fn geodesic_average(cls: &ConjClass, k: usize, grid: &[f64]) -> Result<GeodesicAverage> {
    if k < 8 {
        return Err(Error::Domain(format!("geodesic average needs K >= 8, got {k}")));
    }
    check_grid(grid)?;
    let counters = node_counters(cls, k, *grid.last().unwrap())?;
    let errors = node_errors(cls, &counters, grid)?;
    let mut running_max = (f64::NEG_INFINITY, f64::NAN);
    let rows = grid
        .iter()
        .zip(&errors)
        .map(|(&x, e)| {
            let average = node_average(e);
            let lo = e.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = e.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let normalized = average / x.sqrt();
            if x > 0.0 && normalized > running_max.0 {
                running_max = (normalized, x);
            }
            GeodesicRow {
                x,
                average,
                integral: cls.segment_length() * average,
                normalized,
                budget: hi - lo,
            }
        })
        .collect();
    Ok(GeodesicAverage {
        descriptor: cls.descriptor(),
        k,
        rows,
        running_max,
    })
}

/// `r ↦ ∫₀^r f`, tabulated on a fixed step and completed by Gauss–Legendre
/// on the last partial step.
struct Primitive {
    f: fn(f64) -> f64,
    cum: Vec<f64>,
}

impl Primitive {
    const STEP: f64 = 0.125;
    const NODES: usize = 12;

    fn piece(f: fn(f64) -> f64, a: f64, b: f64) -> f64 {
        gauss_legendre_on(a, b, Self::NODES).iter().map(|&(r, w)| w * f(r)).sum()
    }

    fn new(f: fn(f64) -> f64, r_max: f64) -> Self {
        let n = (r_max / Self::STEP).ceil() as usize + 1;
        let mut cum = Vec::with_capacity(n + 1);
        cum.push(0.0);
        for j in 0..n {
            let a = j as f64 * Self::STEP;
            cum.push(cum[j] + Self::piece(f, a, a + Self::STEP));
        }
        Self { f, cum }
    }

    fn eval(&self, r: f64) -> f64 {
        let j = ((r / Self::STEP).floor() as usize).min(self.cum.len() - 1);
        let a = j as f64 * Self::STEP;
        if r == a {
            self.cum[j]
        } else {
            self.cum[j] + Self::piece(self.f, a, r)
        }
    }
}

fn jump_weight(r: f64) -> f64 {
    r.exp() / r.cosh().sqrt()
}

fn main_weight(r: f64) -> f64 {
    r.exp() * r.cosh().sqrt()
}

/// `(1/Y) ∫₁^Y e(H, x; z)/x^{1/2} dy` at one point with `x = cosh r`,
/// `y = e^r`: each member contributes `∫_{r_γ}^R e^r (cosh r)^{−1/2} dr`,
/// the main term `c ∫₀^R e^r (cosh r)^{1/2} dr`.
struct IntegratedAverage {
    jump_f: Primitive,
    main_f: Primitive,
}

impl IntegratedAverage {
    fn new(r_max: f64) -> Self {
        Self {
            jump_f: Primitive::new(jump_weight, r_max),
            main_f: Primitive::new(main_weight, r_max),
        }
    }

    /// Values on `grid` for one node, given its ascending ratios.
    fn curve(&self, ratios: &[f64], c: f64, grid: &[f64]) -> Vec<f64> {
        let r_max = grid.last().unwrap().acosh();
        let f_at: Vec<f64> = ratios
            .iter()
            .map(|q| q.max(1.0).acosh())
            .take_while(|&r| r <= r_max)
            .map(|r| self.jump_f.eval(r))
            .collect();
        let mut out = Vec::with_capacity(grid.len());
        let (mut k, mut prefix) = (0usize, 0.0f64);
        for &x in grid {
            let r = x.acosh();
            while k < f_at.len() && ratios[k] <= x {
                prefix += f_at[k];
                k += 1;
            }
            let fr = self.jump_f.eval(r);
            let integral = k as f64 * fr - prefix - c * self.main_f.eval(r);
            out.push(integral / r.exp());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteRow {
    pub x: f64,
    /// `(1/K) Σ e(H, X; z_m) / X^{1/2}`.
    pub average: f64,
    /// `(1/K) Σ M_{H, z_m}(X)`, the integrated variant.
    pub integrated: f64,
}

/// Sign observables of a discrete-average run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignStats {
    /// Fraction of grid points where the pointwise average is negative.
    pub frac_negative_average: f64,
    /// Fraction of grid points where the integrated variant is negative.
    pub frac_negative_integrated: f64,
    pub min_integrated: f64,
    pub max_integrated: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteAverage {
    pub descriptor: String,
    pub k: usize,
    pub rows: Vec<DiscreteRow>,
    pub signs: SignStats,
}

impl DiscreteAverage {
    pub const CSV_HEADER: &'static str = "X,average,integrated";

    pub fn to_csv(&self) -> String {
        let s = &self.signs;
        let mut out = format!(
            "# {} K={} frac_neg_average={} frac_neg_integrated={} min_integrated={} max_integrated={}\n{}\n",
            self.descriptor,
            self.k,
            fmt_g(s.frac_negative_average),
            fmt_g(s.frac_negative_integrated),
            fmt_g(s.min_integrated),
            fmt_g(s.max_integrated),
            Self::CSV_HEADER
        );
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", fmt_g(r.x), fmt_g(r.average), fmt_g(r.integrated)));
        }
        out
    }
}

pub fn discrete_average(cls: &ConjClass, k: usize, grid: &[f64]) -> Result<DiscreteAverage> {
    if k < 1 {
        return Err(Error::Domain("discrete average needs K >= 1".into()));
    }
    check_grid(grid)?;
    if grid[0] < 1.0 {
        return Err(Error::Domain("discrete average needs X >= 1".into()));
    }
    let xmax = *grid.last().unwrap();
    let counters = node_counters(cls, k, xmax)?;
    let errors = node_errors(cls, &counters, grid)?;
    let c = cls.main_coeff();
    let integ = IntegratedAverage::new(xmax.acosh());
    let per_node: Vec<Vec<f64>> = counters
        .par_iter()
        .map(|ctr| integ.curve(ctr.ratios(), c, grid))
        .collect();
    let rows: Vec<DiscreteRow> = grid
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let integrated: Vec<f64> = per_node.iter().map(|v| v[i]).collect();
            DiscreteRow {
                x,
                average: node_average(&errors[i]) / x.sqrt(),
                integrated: node_average(&integrated),
            }
        })
        .collect();
    let n = rows.len() as f64;
    let signs = SignStats {
        frac_negative_average: rows.iter().filter(|r| r.average < 0.0).count() as f64 / n,
        frac_negative_integrated: rows.iter().filter(|r| r.integrated < 0.0).count() as f64 / n,
        min_integrated: rows.iter().map(|r| r.integrated).fold(f64::INFINITY, f64::min),
        max_integrated: rows.iter().map(|r| r.integrated).fold(f64::NEG_INFINITY, f64::max),
    };
    Ok(DiscreteAverage {
        descriptor: cls.descriptor(),
        k,
        rows,
        signs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjcls::{make_class, QuadForm};
    use crate::xlab::series::linear_grid;

    fn golden_class() -> ConjClass {
        make_class(QuadForm::new(1, 1, -1).unwrap(), 1).unwrap()
    }

    #[test]
    fn unit_values_average_to_one() {
        for k in [1, 7, 16, 33, 1000] {
            assert_eq!(node_average(&vec![1.0; k]), 1.0);
        }
    }

    #[test]
    fn primitive_accuracy() {
        let p = Primitive::new(|r| r.cosh(), 3.0);
        for r in [0.0, 0.125, 0.3, 1.0, 2.99] {
            assert!((p.eval(r) - r.sinh()).abs() < 1e-13 * (1.0 + r.sinh()));
        }
    }

    #[test]
    fn single_node_is_midpoint_error() {
        let cls = golden_class();
        let grid = linear_grid(1.0, 30.0, 30);
        let avg = discrete_average(&cls, 1, &grid).unwrap();
        let mid = cls.geodesic_point(cls.segment_length() / 2.0);
        let ctr = ConjCounter::coset(&cls, mid, 30.0).unwrap();
        for r in &avg.rows {
            let e = ctr.count(r.x).unwrap() as f64 - cls.main_coeff() * r.x;
            assert_eq!(r.average, e / r.x.sqrt());
        }
    }

    #[test]
    fn integrated_before_first_jump() {
        let cls = golden_class();
        let z = crate::hypgeom::UpperHalfPoint::new(0.123, 1.37).unwrap();
        let ctr = ConjCounter::coset(&cls, z, 10.0).unwrap();
        let x = ctr.ratios()[0] * 0.999;
        assert!(x > 1.0);
        let integ = IntegratedAverage::new(10f64.acosh());
        let got = integ.curve(ctr.ratios(), cls.main_coeff(), &[x])[0];
        // main-term part by composite Simpson in r
        let r_end = x.acosh();
        let n = 20_000;
        let h = r_end / n as f64;
        let mut s = main_weight(0.0) + main_weight(r_end);
        for j in 1..n {
            s += if j % 2 == 1 { 4.0 } else { 2.0 } * main_weight(j as f64 * h);
        }
        let want = -cls.main_coeff() * s * h / 3.0 / r_end.exp();
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn geodesic_refinement_within_budget() {
        let cls = golden_class();
        let grid = linear_grid(2.0, 40.0, 20);
        let a = geodesic_average(&cls, 16, &grid).unwrap();
        let b = geodesic_average(&cls, 32, &grid).unwrap();
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            assert!((ra.average - rb.average).abs() <= ra.budget.max(rb.budget) + 1e-12);
        }
        assert!(a.running_max.0.is_finite());
        assert!(geodesic_average(&cls, 4, &grid).is_err());
    }

    #[test]
    fn sign_stats_in_range() {
        let cls = golden_class();
        let d = discrete_average(&cls, 8, &linear_grid(1.0, 60.0, 40)).unwrap();
        let s = d.signs;
        assert!((0.0..=1.0).contains(&s.frac_negative_average));
        assert!((0.0..=1.0).contains(&s.frac_negative_integrated));
        assert!(s.min_integrated <= s.max_integrated);
        assert!(discrete_average(&cls, 8, &[0.5, 2.0]).is_err());
    }
}
