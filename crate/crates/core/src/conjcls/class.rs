use std::fmt;

use super::forms::{automorph, pell_fundamental, QuadForm};
use crate::error::{Error, Result};
use crate::hypgeom::{mobius_apply, RealMatrix2, UpperHalfPoint};
use crate::modgroup::GammaMatrix;

/// The conjugacy class of `g0^ν` in PSL(2,Z), with `g0 = M_Q` primitive.
#[derive(Debug, Clone)]
pub struct ConjClass {
    form: QuadForm,
    g0: GammaMatrix,
    g_nu: GammaMatrix,
    nu: u32,
    pell: (i64, i64),
    tau_nu: i64,
    mu: f64,
    w1: f64,
    w2: f64,
    sigma: RealMatrix2,
    sigma_inv: RealMatrix2,
}

/// Roots of `a w² + b w + c`, computed without cancellation.
fn form_roots(q: &QuadForm) -> (f64, f64) {
    let (a, b, c) = (q.a() as f64, q.b() as f64, q.c() as f64);
    let sd = (q.disc() as f64).sqrt();
    let h = -0.5 * (b + if b >= 0.0 { sd } else { -sd });
    let (r1, r2) = (h / a, c / h);
    (r1.min(r2), r1.max(r2))
}

pub fn make_class(q: QuadForm, nu: u32) -> Result<ConjClass> {
    if nu == 0 {
        return Err(Error::Domain("power nu must be positive".into()));
    }
    let g0 = automorph(&q)?;
    let g_nu = g0.pow(nu)?;
    let pell = pell_fundamental(q.disc())?;
    let t = g0.abs_trace();
    let mu = 2.0 * (t as f64 / 2.0).acosh();
    let (w1, w2) = form_roots(&q);

    // The attracting fixed point w of g0 = (A B; C D) has |Cw + D| > 1.
    let [_, _, cc, dd] = g0.entries().map(|v| v as f64);
    let gain = |w: f64| (cc * w + dd).abs();
    let (wa, wr) = if gain(w2) > gain(w1) { (w2, w1) } else { (w1, w2) };
    let kappa = (wr - wa).signum();
    let sigma = RealMatrix2::new(1.0, -wr, kappa, -kappa * wa)?;

    Ok(ConjClass {
        form: q,
        g0,
        g_nu,
        nu,
        pell,
        tau_nu: g_nu.abs_trace(),
        mu,
        w1,
        w2,
        sigma_inv: sigma.inverse(),
        sigma,
    })
}

impl ConjClass {
    pub fn form(&self) -> QuadForm {
        self.form
    }

    pub fn disc(&self) -> i64 {
        self.form.disc()
    }

    /// Primitive generator `M_Q`.
    pub fn g0(&self) -> GammaMatrix {
        self.g0
    }

    /// `g0^ν`.
    pub fn g_nu(&self) -> GammaMatrix {
        self.g_nu
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    /// `(t, u)` with `t² − d u² = 4`.
    pub fn pell(&self) -> (i64, i64) {
        self.pell
    }

    /// `|trace g0|`.
    pub fn trace0(&self) -> i64 {
        self.g0.abs_trace()
    }

    /// `|trace g0^ν|`.
    pub fn tau_nu(&self) -> i64 {
        self.tau_nu
    }

    /// Translation length of `g0`.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Axis endpoints, `w1 < w2`.
    pub fn endpoints(&self) -> (f64, f64) {
        (self.w1, self.w2)
    }

    /// Maps the axis to the imaginary axis; `g0` becomes `z -> e^μ z`.
    pub fn sigma(&self) -> RealMatrix2 {
        self.sigma
    }

    pub fn sigma_inv(&self) -> RealMatrix2 {
        self.sigma_inv
    }

    /// Length `μ/ν` of the segment the periods are taken over.
    pub fn segment_length(&self) -> f64 {
        self.mu / self.nu as f64
    }

    /// `(6/π)(μ/ν)`, the coefficient of `X` in the main term.
    pub fn main_coeff(&self) -> f64 {
        6.0 / std::f64::consts::PI * self.segment_length()
    }

    /// Axis point at arc-length parameter `s`: `σ⁻¹(i e^s)`.
    pub fn geodesic_point(&self, s: f64) -> UpperHalfPoint {
        let p = UpperHalfPoint::new(0.0, s.exp()).expect("positive height");
        mobius_apply(&self.sigma_inv, p).expect("axis point in the upper half-plane")
    }

    /// `K` equally spaced midpoints of the segment `[0, μ/ν)`.
    pub fn geodesic_sample(&self, k: usize) -> Vec<UpperHalfPoint> {
        let h = self.segment_length() / k as f64;
        (0..k)
            .map(|j| self.geodesic_point((j as f64 + 0.5) * h))
            .collect()
    }

    /// Text descriptor `Q=a,b,c nu=ν t,u=t,u mu=μ`.
    pub fn descriptor(&self) -> String {
        let [a, b, c] = self.form.coeffs();
        format!(
            "Q={a},{b},{c} nu={} t,u={},{} mu={}",
            self.nu,
            self.pell.0,
            self.pell.1,
            crate::report::fmt_g(self.mu)
        )
    }
}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}
