//! Pointwise certification of the two sign properties
//! `Re(G(t)Γ(it)) > 0` and `Re(G(t)Γ(it) / (1 + it)) < 0` on a grid.

use num_complex::Complex64;
use rayon::prelude::*;

use super::huber::g_gamma_it;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignSample {
    pub t: f64,
    /// `Re(G(t)Γ(it))`, expected positive.
    pub re_a: f64,
    /// `Re(G(t)Γ(it)/(1+it))`, expected negative.
    pub re_b: f64,
}

#[derive(Debug, Clone)]
pub struct SignReport {
    pub samples: Vec<SignSample>,
    /// Smallest `Re(G Γ)` and where it occurs.
    pub min_a: (f64, f64),
    /// Largest `Re(G Γ / (1+it))` and where it occurs.
    pub max_b: (f64, f64),
    /// Grid points where either inequality fails.
    pub violations: Vec<f64>,
}

impl SignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn sign_sample(t: f64) -> Result<SignSample> {
    let v = g_gamma_it(t)?;
    Ok(SignSample {
        t,
        re_a: v.re,
        re_b: (v / Complex64::new(1.0, t)).re,
    })
}

/// Evaluates both inequalities on every grid point; `0` is rejected.
pub fn sign_lemma_check(t_grid: &[f64]) -> Result<SignReport> {
    if t_grid.contains(&0.0) {
        return Err(Error::Domain("sign grid must exclude t = 0".into()));
    }
    let samples = t_grid
        .par_iter()
        .map(|&t| sign_sample(t))
        .collect::<Result<Vec<_>>>()?;
    let mut min_a = (f64::INFINITY, f64::NAN);
    let mut max_b = (f64::NEG_INFINITY, f64::NAN);
    let mut violations = Vec::new();
    for s in &samples {
        if s.re_a < min_a.0 {
            min_a = (s.re_a, s.t);
        }
        if s.re_b > max_b.0 {
            max_b = (s.re_b, s.t);
        }
        if !(s.re_a > 0.0 && s.re_b < 0.0) {
            violations.push(s.t);
        }
    }
    Ok(SignReport {
        samples,
        min_a,
        max_b,
        violations,
    })
}

/// `t_k = k · step` for `k = 1..`, up to and including `tmax` (within
/// rounding), built from integer multiples to avoid drift.
pub fn step_grid(step: f64, tmax: f64) -> Vec<f64> {
    let n = (tmax / step + 1e-9).floor() as usize;
    (1..=n).map(|k| k as f64 * step).collect()
}
