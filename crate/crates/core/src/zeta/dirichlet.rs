//! The Epstein zeta function of an indefinite form and the Riemann zeta
//! function, both to the right of their abscissa of convergence.

use num_complex::Complex64;

use super::repcount::RepCounter;
use crate::conjcls::QuadForm;
use crate::error::{Error, Result};

/// A truncated Dirichlet series with a bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletTail {
    pub s: Complex64,
    /// Number of terms summed.
    pub n: u64,
    pub partial: Complex64,
    pub tail_bound: f64,
    /// `max R(m)/m` over `m ∈ [N/2, N]`, where `R(m) = Σ_{k<=m} r(Q, k)`.
    pub c_q: f64,
}

impl DirichletTail {
    pub fn value(&self) -> Complex64 {
        self.partial
    }
}

/// `ζ(Q, s) = Σ r(Q, n) n^{−s}` summed to `n = N`.
///
/// The tail bound comes from partial summation, assuming the cumulative
/// count keeps `R(m) <= C_Q m` beyond `N`, with `C_Q` measured on the
/// upper half of the computed range:
/// `Σ_{n>N} r(n) n^{−σ} <= σ C_Q N^{1−σ}/(σ − 1) − R(N) N^{−σ}`.
pub fn epstein_zeta(q: &QuadForm, s: Complex64, n: u64) -> Result<DirichletTail> {
    if !(s.re >= 1.5) {
        return Err(Error::Domain(format!("Epstein zeta needs Re s >= 1.5, got {s}")));
    }
    if n < 100 {
        return Err(Error::Domain(format!("Epstein zeta needs N >= 100, got {n}")));
    }
    let counts = RepCounter::new(*q)?.counts_upto(n)?;
    Ok(epstein_from_counts(&counts, s))
}

/// Same as [`epstein_zeta`] with precomputed `r(Q, 1..=N)`.
pub fn epstein_from_counts(counts: &[u64], s: Complex64) -> DirichletTail {
    let n = counts.len() as u64;
    let mut partial = Complex64::new(0.0, 0.0);
    let mut cumulative = 0u64;
    let mut c_q = 0.0f64;
    for (k, &r) in counts.iter().enumerate() {
        let m = k as u64 + 1;
        if r > 0 {
            partial += r as f64 * Complex64::new(m as f64, 0.0).powc(-s);
        }
        cumulative += r;
        if 2 * m >= n {
            c_q = c_q.max(cumulative as f64 / m as f64);
        }
    }
    let sigma = s.re;
    let nf = n as f64;
    let tail = sigma * c_q * nf.powf(1.0 - sigma) / (sigma - 1.0) - cumulative as f64 * nf.powf(-sigma);
    DirichletTail {
        s,
        n,
        partial,
        tail_bound: tail.max(0.0),
        c_q,
    }
}

/// `B_{2j}/(2j)!` for `j = 1..=12`.
const BERNOULLI_OVER_FACT: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
];

/// `ζ(s)` for real `s > 1` by Euler–Maclaurin summation with `N = 20`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Domain(format!("riemann_zeta needs s > 1, got {s}")));
    }
    const N: usize = 20;
    let nf = N as f64;
    let head: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    let mut sum = head + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    // the j-th correction carries s(s+1)…(s+2j−2) N^{−s−2j+1}
    let mut rising = s;
    let mut power = nf.powf(-s - 1.0);
    for (j, c) in BERNOULLI_OVER_FACT.iter().enumerate() {
        sum += c * rising * power;
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        power /= nf * nf;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn riemann_special_values() {
        assert!((riemann_zeta(2.0).unwrap() / (PI * PI / 6.0) - 1.0).abs() < 1e-14);
        assert!((riemann_zeta(4.0).unwrap() / (PI.powi(4) / 90.0) - 1.0).abs() < 1e-14);
        assert!((riemann_zeta(3.0).unwrap() - 1.2020569031595942).abs() < 1e-14);
        assert!((riemann_zeta(1.5).unwrap() - 2.6123753486854883).abs() < 1e-13);
        assert!((riemann_zeta(40.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(riemann_zeta(1.0).is_err());
    }

    #[test]
    fn riemann_pole() {
        for eps in [1e-2, 1e-3] {
            let z = riemann_zeta(1.0 + eps).unwrap();
            // ζ(1+ε) = 1/ε + γ + O(ε)
            assert!((z - 1.0 / eps - 0.5772156649015329).abs() < 2.0 * eps);
        }
    }

    #[test]
    fn epstein_s2() {
        let q = QuadForm::new(1, 1, -1).unwrap();
        let z = epstein_zeta(&q, Complex64::new(2.0, 0.0), 10_000).unwrap();
        assert!(z.tail_bound < 1e-2 * z.partial.norm());
        let half = epstein_zeta(&q, Complex64::new(2.0, 0.0), 5_000).unwrap();
        assert!((z.partial - half.partial).norm() <= half.tail_bound);
        assert!(z.partial.re > half.partial.re);
    }

    #[test]
    fn epstein_domain() {
        let q = QuadForm::new(1, 1, -1).unwrap();
        assert!(epstein_zeta(&q, Complex64::new(1.4, 0.0), 1000).is_err());
        assert!(epstein_zeta(&q, Complex64::new(2.0, 0.0), 50).is_err());
    }
}
