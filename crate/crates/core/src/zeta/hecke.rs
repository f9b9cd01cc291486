//! Hecke's relation between the Eisenstein period along the closed
//! geodesic of `Q` and the Epstein zeta function of `Q`:
//!
//! ```text
//! Ê(s) = d^{s/2} Γ(s/2)² / (ζ(2s) Γ(s)) · ζ(Q, s)
//! ```

use num_complex::Complex64;

use super::dirichlet::{epstein_zeta, riemann_zeta};
use super::eisenstein::eisenstein_period_numeric;
use crate::conjcls::{make_class, QuadForm};
use crate::error::{Error, Result};
use crate::report::fmt_g;
use crate::specfun::gamma;

/// The Eisenstein period at `s = 1/2` for the modular group.
///
/// The prefactor `d^{s/2}Γ(s/2)²/(ζ(2s)Γ(s))` has a simple zero at
/// `s = 1/2`, where `ζ(2s)` has its pole, while `ζ(Q, s)` stays finite
/// there. The period, which is regular in `s`, therefore vanishes.
pub const EISENSTEIN_PERIOD_AT_HALF: f64 = 0.0;

/// One line explaining [`EISENSTEIN_PERIOD_AT_HALF`], for run manifests.
pub const EISENSTEIN_PERIOD_AT_HALF_NOTE: &str =
    "Ehat(1/2) = 0: Hecke prefactor d^(s/2) Gamma(s/2)^2/(zeta(2s) Gamma(s)) vanishes at s = 1/2 through the pole of zeta(2s), zeta(Q,1/2) finite";

/// `d^{s/2} Γ(s/2)² / (ζ(2s) Γ(s))` for real `s` with `2s > 1`.
pub fn hecke_prefactor(d: i64, s: f64) -> Result<f64> {
    let g = gamma(s / 2.0)?;
    Ok((d as f64).powf(s / 2.0) * g * g / (riemann_zeta(2.0 * s)? * gamma(s)?))
}

/// Truncation parameters of a Hecke check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeckeConfig {
    /// Eisenstein sums run over `c² + d² <= n_eis²`.
    pub n_eis: u32,
    /// Epstein zeta summed to `n = n_zeta`.
    pub n_zeta: u64,
    /// Gauss–Legendre nodes along the geodesic.
    pub nodes: usize,
}

impl Default for HeckeConfig {
    fn default() -> Self {
        Self {
            n_eis: 400,
            n_zeta: 10_000,
            nodes: 64,
        }
    }
}

impl HeckeConfig {
    pub fn doubled(&self) -> Self {
        Self {
            n_eis: 2 * self.n_eis,
            n_zeta: 2 * self.n_zeta,
            nodes: 2 * self.nodes,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeckeReport {
    pub form: QuadForm,
    pub d: i64,
    pub s: f64,
    /// Numerical period.
    pub lhs: f64,
    /// Prefactor times the truncated Epstein zeta.
    pub rhs: f64,
    /// `|lhs − rhs| / |rhs|`.
    pub residual: f64,
    /// Tail bound of the Epstein sum, scaled by the prefactor.
    pub zeta_tail: f64,
    /// Accumulated Eisenstein truncation bound along the segment.
    pub eis_tail: f64,
    pub config: HeckeConfig,
    pub tol: f64,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.residual <= self.tol
    }

    pub const CSV_HEADER: &'static str = "d,s,lhs,rhs,residual,zetaQ_tail,eis_tail,nodes";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.d,
            fmt_g(self.s),
            fmt_g(self.lhs),
            fmt_g(self.rhs),
            fmt_g(self.residual),
            fmt_g(self.zeta_tail),
            fmt_g(self.eis_tail),
            self.config.nodes
        )
    }
}

/// Computes both sides of the relation for the primitive class of `q`.
///
/// Both truncation bounds must sit below `tol/10` relative to the side
/// they affect; otherwise a [`Error::Precision`] explains which one failed.
pub fn hecke_relation_check(q: &QuadForm, s: f64, tol: f64, config: HeckeConfig) -> Result<HeckeReport> {
    if !(s >= 1.5) {
        return Err(Error::Domain(format!("Hecke check needs s >= 1.5, got {s}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let cls = make_class(*q, 1)?;
    let d = q.disc();
    let period = eisenstein_period_numeric(&cls, s, config.nodes, config.n_eis)?;
    let zq = epstein_zeta(q, Complex64::new(s, 0.0), config.n_zeta)?;
    let pre = hecke_prefactor(d, s)?;
    let rhs = pre * zq.partial.re;
    let lhs = period.value;
    let report = HeckeReport {
        form: *q,
        d,
        s,
        lhs,
        rhs,
        residual: (lhs - rhs).abs() / rhs.abs(),
        zeta_tail: pre * zq.tail_bound,
        eis_tail: period.tail_bound,
        config,
        tol,
    };
    if report.zeta_tail > tol / 10.0 * rhs.abs() {
        return Err(Error::Precision(format!(
            "Epstein tail {} exceeds tol/10 of |rhs| = {}; raise n_zeta",
            fmt_g(report.zeta_tail),
            fmt_g(rhs.abs())
        )));
    }
    if report.eis_tail > tol / 10.0 * lhs.abs() {
        return Err(Error::Precision(format!(
            "Eisenstein tail {} exceeds tol/10 of |lhs| = {}; raise n_eis",
            fmt_g(report.eis_tail),
            fmt_g(lhs.abs())
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefactor_vanishes_at_half() {
        // simple zero: prefactor ≈ 2ε d^{1/4} Γ(1/4)² / √π
        let slope = 2.0 * 5f64.powf(0.25) * gamma(0.25).unwrap().powi(2) / std::f64::consts::PI.sqrt();
        for eps in [1e-3, 1e-4, 1e-5] {
            let p = hecke_prefactor(5, 0.5 + eps).unwrap();
            assert!((p / (slope * eps) - 1.0).abs() < 20.0 * eps, "eps = {eps}");
        }
    }

    #[test]
    fn small_check_passes() {
        let cfg = HeckeConfig {
            n_eis: 200,
            n_zeta: 4000,
            nodes: 32,
        };
        let r = hecke_relation_check(&QuadForm::new(1, 1, -1).unwrap(), 2.0, 2e-2, cfg).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.csv_row().starts_with("5,2,"));
    }

    #[test]
    fn precision_shortfall_reported() {
        let cfg = HeckeConfig {
            n_eis: 20,
            n_zeta: 100,
            nodes: 16,
        };
        let r = hecke_relation_check(&QuadForm::new(1, 1, -1).unwrap(), 2.0, 1e-4, cfg);
        assert!(matches!(r, Err(Error::Precision(_))));
    }
}
