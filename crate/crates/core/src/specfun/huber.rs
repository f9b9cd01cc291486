//! The Huber transform `d(f_X, t)` of the indicator `f_X`, in closed form
//! and by direct integration.
//!
//! Notation: `X = cosh R`, `U = √(X² − 1)`, `R = log(X + U)`,
//! `λ = 1/4 + t²`, `κ = −1/2 + it` and `w = e^{−2R} / (1 + e^{−2R})`.
//!
//! Writing the transform as `d = ∫₀^R ξ(s) cosh s ds`, where `ξ` solves
//! `ξ'' + tanh(s) ξ' + λ ξ = 0` with `ξ(0) = 1`, `ξ'(0) = 0` (this is the
//! angular equation `ξ'' + λ sec²v ξ = 0` after `cos v = sech s`), the
//! integral telescopes to `d = −X ξ'(R) / λ`. Expanding `ξ` in the Jost
//! solutions at infinity gives
//!
//! ```text
//! 2d = Re( G(t)Γ(it) e^{itR} X^{1/2} (1 + V) )
//! V  = [F(1/2, 1/2; 1−it; w) − 1]
//!      + (2/κ) e^{−2R} (1−w) (1/2)(1/2−it)/(1−it) F(3/2, 1/2; 2−it; w)
//! ```
//!
//! which is exact for every `X >= 1`; `V = O((1+|t|)⁻¹ X⁻²)`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::gamma::{gamma, ln_gamma};
use super::hyp2f1::{gauss_2f1_minus_one, gauss_2f1_small};
use super::ode::{integrate, Tolerance};
use crate::error::{Error, Result};

/// Largest `X` accepted by the integration oracle.
pub const ORACLE_XMAX: f64 = 1e4;

/// Spectral parameter `t`, with `s = 1/2 + it` and `λ = 1/4 + t²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam {
    pub t: f64,
}

impl SpectralParam {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() {
            Ok(Self { t })
        } else {
            Err(Error::Domain(format!("spectral parameter {t}")))
        }
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(0.5, self.t)
    }

    pub fn lambda(&self) -> f64 {
        0.25 + self.t * self.t
    }
}

/// `2 d(f_X, t)` together with its split into the leading oscillation and
/// the remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuberEval {
    pub x: f64,
    pub r: f64,
    pub u: f64,
    /// `2 d(f_X, t)`.
    pub value: f64,
    /// `G(t)Γ(it) e^{itR} X^{1/2}`.
    pub leading: Complex64,
    /// `G(t)Γ(it) e^{itR} X^{1/2} V`.
    pub remainder: Complex64,
}

/// `(U, R)` for `X >= 1`, accurate near `X = 1`.
fn u_and_r(x: f64) -> (f64, f64) {
    let u = ((x - 1.0) * (x + 1.0)).sqrt();
    (u, (x - 1.0 + u).ln_1p())
}

fn check_x(x: f64) -> Result<()> {
    if x >= 1.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Huber transform needs X >= 1, got {x}")))
    }
}

/// `A(s) = 2^s cos(π(s−1)/2) Γ((s+1)/2) Γ(1−s/2) Γ(s−1/2) / (π Γ(s+1))`.
pub fn a_product(s: f64) -> Result<f64> {
    if !(s > 0.5 && s <= 1.0) {
        return Err(Error::Domain(format!("A(s) needs s in (1/2, 1], got {s}")));
    }
    Ok(2f64.powf(s) * (PI * (s - 1.0) / 2.0).cos() * gamma((s + 1.0) / 2.0)? * gamma(1.0 - s / 2.0)?
        * gamma(s - 0.5)?
        / (PI * gamma(s + 1.0)?))
}

/// `A(s) X^s`, the main part of `2d(f_X, t)` for `s = 1/2 + it ∈ (1/2, 1]`.
pub fn huber_main_coeff(s: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(a_product(s)? * x.powf(s))
}

/// `ln(cosh a + i sinh a)`, overflow-free.
fn ln_cosh_i_sinh(a: f64) -> Complex64 {
    let one_i = Complex64::new(1.0, 1.0);
    let e = (-2.0 * a.abs()).exp();
    let inner = if a >= 0.0 {
        one_i + one_i.conj() * e
    } else {
        one_i.conj() + one_i * e
    };
    Complex64::new(a.abs() - 2f64.ln(), 0.0) + inner.ln()
}

/// `ln G(t)` with `G(t) = (2√2/π) |Γ(3/4 + it/2)|² / Γ(3/2 + it) · cos(iπt/2 − π/4)`.
fn ln_g(t: f64) -> Complex64 {
    let lg34 = ln_gamma(Complex64::new(0.75, t / 2.0)).expect("no pole");
    let lg32 = ln_gamma(Complex64::new(1.5, t)).expect("no pole");
    // cos(iπt/2 − π/4) = (cosh(πt/2) + i sinh(πt/2)) / √2
    let lcos = ln_cosh_i_sinh(PI * t / 2.0) - 0.5 * 2f64.ln();
    Complex64::new((2.0 * SQRT_2 / PI).ln() + 2.0 * lg34.re, 0.0) - lg32 + lcos
}

/// `G(t)`.
pub fn g_function(t: f64) -> Complex64 {
    ln_g(t).exp()
}

/// `G(t) Γ(it)` for `t ≠ 0`, through `t Γ(it) = −i Γ(1 + it)` so that the
/// real part stays accurate as `t → 0`.
pub fn g_gamma_it(t: f64) -> Result<Complex64> {
    if t == 0.0 {
        return Err(Error::Domain("G(t)Γ(it) has a pole at t = 0".into()));
    }
    let l = ln_g(t) + ln_gamma(Complex64::new(1.0, t))?;
    Ok(-Complex64::i() * l.exp() / t)
}

/// `Re(G(t)Γ(it))`, continuous through `t = 0`.
pub fn re_g_gamma_it(t: f64) -> f64 {
    if t == 0.0 {
        // Im ln(G Γ(1+it)) is odd in t; Richardson-extrapolate its slope
        let slope = |h: f64| (ln_g(h) + ln_gamma(Complex64::new(1.0, h)).expect("no pole")).im / h;
        let m = ln_g(0.0).re.exp();
        return m * (4.0 * slope(5e-4) - slope(1e-3)) / 3.0;
    }
    let l = ln_g(t) + ln_gamma(Complex64::new(1.0, t)).expect("no pole");
    l.re.exp() * l.im.sin() / t
}

/// Exact closed form of `2d(f_X, t)` for `t ≠ 0`, `X >= 1`.
pub fn huber_closed(t: f64, x: f64) -> Result<HuberEval> {
    check_x(x)?;
    if t == 0.0 {
        return Err(Error::Domain("t = 0: use huber_t0".into()));
    }
    let (u, r) = u_and_r(x);
    let e2r = (-2.0 * r).exp();
    let w = e2r / (1.0 + e2r);
    let i = Complex64::i();
    let kappa = Complex64::new(-0.5, t);
    let half = Complex64::new(0.5, 0.0);
    let c1 = Complex64::new(1.0, -t);
    let f1m = gauss_2f1_minus_one(half, half, c1, w)?;
    let f2 = gauss_2f1_small(Complex64::new(1.5, 0.0), half, c1 + 1.0, w)?;
    let abc = half * Complex64::new(0.5, -t) / c1;
    let v = f1m + 2.0 / kappa * e2r * (1.0 - w) * abc * f2;
    let leading = g_gamma_it(t)? * (i * t * r).exp() * x.sqrt();
    let remainder = leading * v;
    Ok(HuberEval {
        x,
        r,
        u,
        value: leading.re + remainder.re,
        leading,
        remainder,
    })
}

/// The single-hypergeometric approximation
/// `Re(G(t)Γ(it) e^{itR} F(−1/2, 3/2; 1+it; e^{−R}/(2X))) X^{1/2}`,
/// which differs from the transform by `O(X^{−3/2})`.
pub fn huber_closed_approx(t: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    if t == 0.0 {
        return Err(Error::Domain("t = 0: use huber_t0".into()));
    }
    let (_, r) = u_and_r(x);
    let arg = (-r).exp() / (2.0 * x);
    let f = gauss_2f1_small(
        Complex64::new(-0.5, 0.0),
        Complex64::new(1.5, 0.0),
        Complex64::new(1.0, t),
        arg,
    )?;
    Ok((g_gamma_it(t)? * (Complex64::i() * t * r).exp() * f).re * x.sqrt())
}

/// Integration oracle for `d(f_X, λ)` at any real `λ`, with the given
/// relative tolerance on the state.
pub fn huber_oracle_lambda(lambda: f64, x: f64, rtol: f64) -> Result<f64> {
    check_x(x)?;
    if x > ORACLE_XMAX {
        return Err(Error::OracleRange(x));
    }
    if x == 1.0 {
        return Ok(0.0);
    }
    let (_, r) = u_and_r(x);
    let y = integrate(
        |s, y: &[f64; 3]| [y[1], -s.tanh() * y[1] - lambda * y[0], y[0] * s.cosh()],
        0.0,
        r,
        [1.0, 0.0, 0.0],
        Tolerance {
            rtol,
            atol: rtol * 1e-2,
        },
    )?;
    Ok(y[2])
}

/// `d(f_X, t)` by direct integration (note: `d`, not `2d`).
pub fn huber_oracle(t: f64, x: f64) -> Result<f64> {
    huber_oracle_lambda(0.25 + t * t, x, 1e-13)
}

/// `d(f_X, 0)`, from the integration oracle at `λ = 1/4`.
pub fn huber_t0(x: f64) -> Result<f64> {
    huber_oracle_lambda(0.25, x, 1e-13)
}
