//! `N(H, X; z) = #{γ ∈ H : sinh(ρ(z, γz)/2) / sinh(μ/2) <= X}`.
//!
//! With `t0 = |trace g0| = 2 cosh(μ/2)` the condition is the polynomial
//! inequality `2 cosh ρ(z, γz) <= 2 + X²(t0² − 4)`, so both algorithms end in
//! the same exact test on each candidate `γ`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use super::class::ConjClass;
use super::forms::{matrix_to_form, reduce_cycle, QuadForm};
use crate::error::{Error, Result};
use crate::hypgeom::{cosh_dist_to_imaginary_axis, mobius_apply, UpperHalfPoint};
use crate::modgroup::{ball_visit, guarded_count, FrobeniusNorm, GammaMatrix, Threshold};

/// Slack on the float-side window tests of the coset scan. Candidates that
/// pass are re-tested exactly, so this only needs to dominate rounding.
const WINDOW_SLACK: f64 = 1e-7;

/// Membership in the class of `g0^ν`: same trace as `g0^ν` and an oriented
/// fixed-point form in the cycle of `Q`.
#[derive(Debug, Clone)]
pub struct ClassMembership {
    tau_nu: i64,
    cycle: HashSet<QuadForm>,
}

impl ClassMembership {
    pub fn new(cls: &ConjClass) -> Result<Self> {
        Ok(Self {
            tau_nu: cls.tau_nu(),
            cycle: reduce_cycle(&cls.form())?.into_iter().collect(),
        })
    }

    pub fn contains(&self, g: &GammaMatrix) -> bool {
        if g.abs_trace() != self.tau_nu {
            return false;
        }
        match matrix_to_form(g).and_then(|f| f.reduce()) {
            Ok((r, _)) => self.cycle.contains(&r),
            Err(_) => false,
        }
    }
}

/// Members of `H` near `z`, sorted by their displacement ratio
/// `sinh(ρ(z, γz)/2) / sinh(μ/2)`, answering `N(H, X; z)` for `X <= xmax`.
#[derive(Debug, Clone)]
pub struct ConjCounter {
    z: UpperHalfPoint,
    t0: i64,
    xmax: f64,
    ratios: Vec<f64>,
    members: Vec<GammaMatrix>,
}

fn ratio_of(q: f64, t0: i64) -> f64 {
    let k = (t0 * t0 - 4) as f64;
    ((q - 2.0).max(0.0) / k).sqrt()
}

impl ConjCounter {
    fn from_candidates(
        cls: &ConjClass,
        z: UpperHalfPoint,
        xmax: f64,
        cands: impl IntoIterator<Item = GammaMatrix>,
    ) -> Self {
        let t0 = cls.trace0();
        let norm = FrobeniusNorm::new(z, z);
        let thr = Threshold::displacement(xmax, t0);
        let mut v: Vec<(f64, GammaMatrix)> = cands
            .into_iter()
            .filter_map(|g| {
                let q = norm.eval(&g);
                norm.le_guarded(&g, q, &thr).then(|| (ratio_of(q, t0), g))
            })
            .collect();
        v.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let (ratios, members) = v.into_iter().unzip();
        Self {
            z,
            t0,
            xmax,
            ratios,
            members,
        }
    }

    /// Oracle construction: scan the whole group ball of displacement
    /// `xmax` around `z` and keep the members of `H`.
    pub fn filter(cls: &ConjClass, z: UpperHalfPoint, xmax: f64) -> Result<Self> {
        let member = ClassMembership::new(cls)?;
        let thr = Threshold::displacement(xmax, cls.trace0());
        let found = ball_visit(z, z, &thr, |g, _| member.contains(&g).then_some(g))?;
        Ok(Self::from_candidates(cls, z, xmax, found))
    }

    /// Coset construction: enumerate `τ` with `w = σ τ z` in the canonical
    /// window `log|w| ∈ [0, μ)` and `|w|/Im w <= Y`, where
    /// `Y = X sinh(μ/2) / sinh(νμ/2)`, then form `γ = τ⁻¹ g0^ν τ`.
    pub fn coset(cls: &ConjClass, z: UpperHalfPoint, xmax: f64) -> Result<Self> {
        let mu = cls.mu();
        let y_cap = xmax * (mu / 2.0).sinh() / (cls.nu() as f64 * mu / 2.0).sinh();
        if y_cap < 1.0 - WINDOW_SLACK {
            return Ok(Self::from_candidates(cls, z, xmax, []));
        }
        let y_cap = y_cap * (1.0 + WINDOW_SLACK);
        let sigma = cls.sigma();
        let centre = cls.geodesic_point(mu / 2.0);
        let radius = mu / 2.0 + y_cap.acosh() + WINDOW_SLACK;
        let thr = Threshold::new(2.0 * radius.cosh() * (1.0 + WINDOW_SLACK));
        let g_nu = cls.g_nu();
        let found = ball_visit(centre, z, &thr, |tau, _| {
            let w = mobius_apply(&sigma, mobius_apply(&tau, z).ok()?).ok()?;
            let lw = w.abs().ln();
            if lw < -WINDOW_SLACK || lw > mu + WINDOW_SLACK {
                return None;
            }
            if cosh_dist_to_imaginary_axis(w) > y_cap {
                return None;
            }
            Some(tau.conjugate(&g_nu))
        })?;
        let found = found.into_iter().collect::<Result<BTreeSet<_>>>()?;
        Ok(Self::from_candidates(cls, z, xmax, found))
    }

    pub fn center(&self) -> UpperHalfPoint {
        self.z
    }

    pub fn xmax(&self) -> f64 {
        self.xmax
    }

    /// Ascending displacement ratios of the members found.
    pub fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    pub fn members(&self) -> &[GammaMatrix] {
        &self.members
    }

    /// `N(H, X; z)` for `X <= xmax`.
    pub fn count(&self, x: f64) -> Result<u64> {
        if x > self.xmax {
            return Err(Error::Domain(format!(
                "X = {x} beyond the enumerated range {}",
                self.xmax
            )));
        }
        if !(x > 0.0) {
            return Ok(0);
        }
        let norm = FrobeniusNorm::new(self.z, self.z);
        let thr = Threshold::displacement(x, self.t0);
        Ok(guarded_count(&self.ratios, x, |i| {
            norm.cmp_exact(&self.members[i], thr.exact()) != Ordering::Greater
        }) as u64)
    }
}

/// Oracle count by filtering the group ball.
pub fn conj_count_filter(cls: &ConjClass, z: UpperHalfPoint, x: f64) -> Result<u64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("X must be positive, got {x}")));
    }
    ConjCounter::filter(cls, z, x)?.count(x)
}

/// Fast count through coset representatives.
pub fn conj_count_coset(cls: &ConjClass, z: UpperHalfPoint, x: f64) -> Result<u64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("X must be positive, got {x}")));
    }
    ConjCounter::coset(cls, z, x)?.count(x)
}
