//! Gauss hypergeometric series `₂F₁(a, b; c; x)` for small real `x`.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 200;

fn check(c: Complex64, x: f64) -> Result<()> {
    if !(x.abs() <= 0.6) {
        return Err(Error::Domain(format!("2F1 series needs |x| <= 0.6, got {x}")));
    }
    if c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round() {
        return Err(Error::Domain(format!("2F1 lower parameter {} is a pole", c.re)));
    }
    Ok(())
}

/// `₂F₁(a, b; c; x) − 1`, summed without forming the leading 1 so that the
/// small remainder keeps its relative accuracy.
pub fn gauss_2f1_minus_one(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    check(c, x)?;
    if x == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term.norm() <= 1e-16 * sum.norm() || term == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!(
        "2F1({a}, {b}; {c}; {x}) after {MAX_TERMS} terms"
    )))
}

/// `₂F₁(a, b; c; x)` by its power series, `|x| <= 0.6`.
pub fn gauss_2f1_small(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    Ok(gauss_2f1_minus_one(a, b, c, x)? + 1.0)
}
