//! Evaluation of a truncated spectral expansion `Σ_j 2d(f_X, t_j) c_j` from
//! externally supplied pairs `(t_j, c_j)`, where `c_j` stands for the
//! product of a cusp-form period and the form's value at the center.
//!
//! File format: one `t coeff` pair per line, whitespace separated, `#`
//! starting a comment; `t` positive and strictly increasing.

use std::path::Path;

use crate::error::{Error, Result};
use crate::report::fmt_g;
use crate::specfun::huber_closed;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectralCoeffFile {
    pub rows: Vec<(f64, f64)>,
}

impl SpectralCoeffFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<(f64, f64)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: String| Error::MalformedRow { line: i + 1, reason };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(bad(format!("expected 2 fields, found {}", fields.len())));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| bad(format!("not a finite number: {s:?}")))
            };
            let (t, c) = (num(fields[0])?, num(fields[1])?);
            if t <= 0.0 {
                return Err(bad(format!("t must be positive, got {t}")));
            }
            if let Some(&(prev, _)) = rows.last() {
                if t <= prev {
                    return Err(bad(format!("t = {t} does not exceed previous {prev}")));
                }
            }
            rows.push((t, c));
        }
        Ok(Self { rows })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRow {
    pub x: f64,
    /// `Σ_j 2d(f_X, t_j) c_j`.
    pub series: f64,
    /// Contribution of the leading oscillations alone.
    pub leading: f64,
    /// `series / X^{1/2}`.
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSeries {
    pub rows: Vec<SpectralRow>,
}

impl SpectralSeries {
    pub const CSV_HEADER: &'static str = "X,series,leading,normalized";

    pub fn to_csv(&self) -> String {
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_g(r.x),
                fmt_g(r.series),
                fmt_g(r.leading),
                fmt_g(r.normalized)
            ));
        }
        out
    }
}

pub fn spectral_expansion_eval(coeffs: &SpectralCoeffFile, grid: &[f64]) -> Result<SpectralSeries> {
    if coeffs.rows.is_empty() {
        return Err(Error::Domain("spectral coefficient file has no rows".into()));
    }
    let rows = grid
        .iter()
        .map(|&x| {
            let (mut series, mut leading) = (0.0, 0.0);
            for &(t, c) in &coeffs.rows {
                let h = huber_closed(t, x)?;
                series += c * h.value;
                leading += c * h.leading.re;
            }
            Ok(SpectralRow {
                x,
                series,
                leading,
                normalized: series / x.sqrt(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralSeries { rows })
}
