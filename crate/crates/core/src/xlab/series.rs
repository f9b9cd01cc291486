//! Error series `E(H, X; z) = N(H, X; z) − (6/π)(μ/ν) X` on a grid.
//!
//! The modular group has no eigenvalue `1/4`, so the modified error `e`
//! coincides with `E` and the two names are used interchangeably here.

use crate::conjcls::{ConjClass, ConjCounter};
use crate::error::{Error, Result};
use crate::hypgeom::UpperHalfPoint;
use crate::report::fmt_g;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountRow {
    pub x: f64,
    /// `log X`, the radial parameter with `X = e^r`.
    pub r: f64,
    pub n: u64,
    pub mainterm: f64,
    pub e: f64,
    /// `E / X^{1/2}`.
    pub e_norm: f64,
}

impl CountRow {
    pub fn new(x: f64, n: u64, main_coeff: f64) -> Self {
        let mainterm = main_coeff * x;
        let e = n as f64 - mainterm;
        Self {
            x,
            r: x.ln(),
            n,
            mainterm,
            e,
            e_norm: e / x.sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountSeries {
    pub descriptor: String,
    pub center: UpperHalfPoint,
    pub rows: Vec<CountRow>,
}

impl CountSeries {
    pub const CSV_HEADER: &'static str = "X,r,N,mainterm,E,e_norm";

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# {} z={},{}\n{}\n",
            self.descriptor,
            fmt_g(self.center.x()),
            fmt_g(self.center.y()),
            Self::CSV_HEADER
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_g(r.x),
                fmt_g(r.r),
                r.n,
                fmt_g(r.mainterm),
                fmt_g(r.e),
                fmt_g(r.e_norm)
            ));
        }
        out
    }

    /// Largest `|E| / X^{2/3}` over rows with `X` in `[lo, hi]`.
    pub fn max_ratio_two_thirds(&self, lo: f64, hi: f64) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.x >= lo && r.x <= hi)
            .map(|r| r.e.abs() / r.x.powf(2.0 / 3.0))
            .fold(0.0, f64::max)
    }
}

/// Outcome of cross-checking coset counts against the filter oracle.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Validation {
    pub checked: usize,
    /// `(X, coset count, filter count)` for every disagreement.
    pub mismatches: Vec<(f64, u64, u64)>,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    if grid.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::Domain("grid values must be finite and nonnegative".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Counts every grid point with the coset algorithm from one enumeration
/// at the largest `X`.
pub fn error_series(cls: &ConjClass, z: UpperHalfPoint, grid: &[f64]) -> Result<CountSeries> {
    check_grid(grid)?;
    let xmax = *grid.last().unwrap();
    let counter = ConjCounter::coset(cls, z, xmax.max(1.0))?;
    series_from_counter(cls, &counter, grid)
}

pub(crate) fn series_from_counter(cls: &ConjClass, counter: &ConjCounter, grid: &[f64]) -> Result<CountSeries> {
    let coeff = cls.main_coeff();
    let rows = grid
        .iter()
        .map(|&x| Ok(CountRow::new(x, counter.count(x)?, coeff)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountSeries {
        descriptor: cls.descriptor(),
        center: counter.center(),
        rows,
    })
}

/// Recounts every `stride`-th row with `X <= cap` through the filter
/// oracle and reports disagreements.
pub fn validate_series(
    cls: &ConjClass,
    series: &CountSeries,
    stride: usize,
    cap: f64,
) -> Result<Validation> {
    let picked: Vec<&CountRow> = series
        .rows
        .iter()
        .step_by(stride.max(1))
        .filter(|r| r.x <= cap)
        .collect();
    let Some(top) = picked.iter().map(|r| r.x).reduce(f64::max) else {
        return Ok(Validation::default());
    };
    let oracle = ConjCounter::filter(cls, series.center, top.max(1.0))?;
    let mut v = Validation::default();
    for r in picked {
        let want = oracle.count(r.x)?;
        v.checked += 1;
        if want != r.n {
            v.mismatches.push((r.x, r.n, want));
        }
    }
    Ok(v)
}

/// `n` points from `lo` to `hi` inclusive, evenly spaced.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// `n` points from `lo` to `hi` inclusive, evenly spaced in `log X`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut g: Vec<f64> = linear_grid(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect();
    // pin the endpoints against exp/ln rounding
    if n >= 1 {
        g[0] = lo;
        g[n - 1] = if n == 1 { lo } else { hi };
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjcls::{make_class, QuadForm};

    fn golden_class() -> ConjClass {
        make_class(QuadForm::new(1, 1, -1).unwrap(), 1).unwrap()
    }

    #[test]
    fn rows_below_one_are_empty() {
        let cls = golden_class();
        let s = error_series(&cls, UpperHalfPoint::i(), &[0.25, 0.5, 0.99]).unwrap();
        for r in &s.rows {
            assert_eq!(r.n, 0);
            assert_eq!(r.e, -cls.main_coeff() * r.x);
        }
    }

    #[test]
    fn matches_filter_at_fifty() {
        let cls = golden_class();
        let grid = linear_grid(1.0, 50.0, 50);
        let s = error_series(&cls, UpperHalfPoint::i(), &grid).unwrap();
        let v = validate_series(&cls, &s, 1, 50.0).unwrap();
        assert_eq!(v.checked, 50);
        assert!(v.passed(), "{:?}", v.mismatches);
        assert!(s.rows.windows(2).all(|w| w[0].n <= w[1].n));
    }

    #[test]
    fn grid_checks() {
        let cls = golden_class();
        assert!(error_series(&cls, UpperHalfPoint::i(), &[2.0, 1.0]).is_err());
        assert!(error_series(&cls, UpperHalfPoint::i(), &[]).is_err());
        let g = log_grid(1.0, 1e4, 5);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[4], 1e4);
        assert!((g[2] - 100.0).abs() < 1e-9);
    }

    #[test]
    fn csv_shape() {
        let cls = golden_class();
        let s = error_series(&cls, UpperHalfPoint::i(), &[1.0, 2.0]).unwrap();
        let csv = s.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# Q=1,1,-1"));
        assert_eq!(lines[1], CountSeries::CSV_HEADER);
        assert_eq!(lines.len(), 4);
    }
}
