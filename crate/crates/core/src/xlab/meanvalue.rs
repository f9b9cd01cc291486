//! Radial mean values `M_H(T) = (1/T) ∫₀ᵀ e(H, x(r); z) / x(r)^{1/2} dr`.
//!
//! In `exp` mode `x = e^r`. The count is a step function of `r` with a
//! jump of one at each `r_γ = log ratio_γ`, so
//! `∫₀ᵀ N e^{−r/2} dr = Σ_{r_γ <= T} 2(e^{−r_γ/2} − e^{−T/2})`, and the
//! main term integrates to `2c(e^{T/2} − 1)`; the curve is a finite
//! closed-form sum. In `cosh` mode `x = 2 cosh r` and the integral is
//! taken by the midpoint rule with step at most `0.01`.

use std::fmt;
use std::str::FromStr;

use crate::conjcls::{ConjClass, ConjCounter};
use crate::error::{Error, Result};
use crate::hypgeom::UpperHalfPoint;
use crate::report::fmt_g;

/// Largest midpoint-rule step in `cosh` mode.
pub const COSH_MAX_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MeanMode {
    #[default]
    Exp,
    Cosh,
}

impl MeanMode {
    /// `x(r)`.
    pub fn x_of(self, r: f64) -> f64 {
        match self {
            MeanMode::Exp => r.exp(),
            MeanMode::Cosh => 2.0 * r.cosh(),
        }
    }
}

impl fmt::Display for MeanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeanMode::Exp => "exp",
            MeanMode::Cosh => "cosh",
        })
    }
}

impl FromStr for MeanMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(MeanMode::Exp),
            "cosh" => Ok(MeanMode::Cosh),
            _ => Err(Error::Domain(format!("unknown mean-value mode {s:?} (exp | cosh)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanValueCurve {
    pub mode: MeanMode,
    pub descriptor: String,
    pub center: UpperHalfPoint,
    /// `(T, M_H(T))`.
    pub rows: Vec<(f64, f64)>,
    /// `sup |e(H, x(r); z) / x(r)^{1/2}|` over `r ∈ [0, T_max]`: exact in
    /// `exp` mode, over jumps and quadrature nodes in `cosh` mode.
    pub sup_abs: f64,
}

impl MeanValueCurve {
    pub const CSV_HEADER: &'static str = "T,M";

    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# {} z={},{} mode={}\n{}\n",
            self.descriptor,
            fmt_g(self.center.x()),
            fmt_g(self.center.y()),
            self.mode,
            Self::CSV_HEADER
        );
        for (t, m) in &self.rows {
            out.push_str(&format!("{},{}\n", fmt_g(*t), fmt_g(*m)));
        }
        out
    }

    /// `M_H` at the row closest to `t`.
    pub fn at(&self, t: f64) -> Option<f64> {
        self.rows
            .iter()
            .min_by(|a, b| (a.0 - t).abs().total_cmp(&(b.0 - t).abs()))
            .map(|r| r.1)
    }

    pub fn last(&self) -> Option<(f64, f64)> {
        self.rows.last().copied()
    }
}

/// `T_k = k · step` up to `t_max`, with `t_max` itself appended when it is
/// not a multiple of the step.
pub fn t_grid(t_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(t_max > 0.0 && step > 0.0 && t_max.is_finite()) {
        return Err(Error::Domain(format!("mean value needs T_max, step > 0 (got {t_max}, {step})")));
    }
    let k = (t_max / step + 1e-9).floor() as usize;
    let mut g: Vec<f64> = (1..=k).map(|j| j as f64 * step).collect();
    if g.last().is_none_or(|&l| t_max - l > 1e-9 * t_max) {
        g.push(t_max);
    }
    Ok(g)
}

pub fn mean_value(cls: &ConjClass, z: UpperHalfPoint, t_max: f64, step: f64, mode: MeanMode) -> Result<MeanValueCurve> {
    let grid = t_grid(t_max, step)?;
    let counter = ConjCounter::coset(cls, z, mode.x_of(t_max))?;
    mean_value_from_counter(cls, &counter, &grid, mode)
}

/// Mean-value curve on an explicit ascending `T` grid from an existing
/// enumeration, which must reach `x(T_max)`.
pub fn mean_value_from_counter(
    cls: &ConjClass,
    counter: &ConjCounter,
    grid: &[f64],
    mode: MeanMode,
) -> Result<MeanValueCurve> {
    super::series::check_grid(grid)?;
    let t_max = *grid.last().unwrap();
    if mode.x_of(t_max) > counter.xmax() * (1.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "enumeration reaches X = {} but T = {t_max} needs {}",
            counter.xmax(),
            mode.x_of(t_max)
        )));
    }
    let c = cls.main_coeff();
    let (rows, sup_abs) = match mode {
        MeanMode::Exp => exp_curve(counter.ratios(), c, grid),
        MeanMode::Cosh => cosh_curve(counter, c, grid)?,
    };
    Ok(MeanValueCurve {
        mode,
        descriptor: cls.descriptor(),
        center: counter.center(),
        rows,
        sup_abs,
    })
}

fn exp_curve(ratios: &[f64], c: f64, grid: &[f64]) -> (Vec<(f64, f64)>, f64) {
    let t_max = *grid.last().unwrap();
    let jumps: Vec<f64> = ratios
        .iter()
        .map(|q| q.ln().max(0.0))
        .take_while(|&r| r <= t_max)
        .collect();
    let mut rows = Vec::with_capacity(grid.len());
    let (mut k, mut acc) = (0usize, 0.0f64);
    for &t in grid {
        while k < jumps.len() && jumps[k] <= t {
            acc += (-jumps[k] / 2.0).exp();
            k += 1;
        }
        let integral = 2.0 * (acc - k as f64 * (-t / 2.0).exp()) - 2.0 * c * ((t / 2.0).exp() - 1.0);
        rows.push((t, integral / t));
    }

    // between jumps N e^{−r/2} − c e^{r/2} is decreasing, so the extremes
    // sit at the two one-sided limits of every jump and at the ends
    let e = |n: usize, r: f64| n as f64 * (-r / 2.0).exp() - c * (r / 2.0).exp();
    let at_zero = jumps.iter().take_while(|&&r| r == 0.0).count();
    let mut sup = e(at_zero, 0.0).abs().max(e(jumps.len(), t_max).abs());
    let mut i = 0;
    while i < jumps.len() {
        let r = jumps[i];
        let mut j = i;
        while j < jumps.len() && jumps[j] == r {
            j += 1;
        }
        sup = sup.max(e(i, r).abs()).max(e(j, r).abs());
        i = j;
    }
    (rows, sup)
}

fn cosh_curve(counter: &ConjCounter, c: f64, grid: &[f64]) -> Result<(Vec<(f64, f64)>, f64)> {
    let mut rows = Vec::with_capacity(grid.len());
    let mut sup = 0.0f64;
    let (mut acc, mut from) = (0.0f64, 0.0f64);
    for &t in grid {
        let pieces = ((t - from) / COSH_MAX_STEP).ceil().max(1.0) as usize;
        let h = (t - from) / pieces as f64;
        for j in 0..pieces {
            let x = 2.0 * (from + (j as f64 + 0.5) * h).cosh();
            let v = (counter.count(x)? as f64 - c * x) / x.sqrt();
            sup = sup.max(v.abs());
            acc += h * v;
        }
        rows.push((t, acc / t));
        from = t;
    }
    Ok((rows, sup))
}
