//! Output formatting shared by the experiment writers: numbers with twelve
//! significant digits and `key = value` run manifests.

use std::fmt::Write as _;

/// Twelve significant digits, `%.12g` style: fixed notation for moderate
/// exponents, scientific otherwise, trailing zeros removed.
pub fn fmt_g(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let prec = (11 - exp).max(0) as usize;
        trim(format!("{v:.prec$}"))
    } else {
        format!("{}e{exp}", trim(mant.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Ordered `key = value` lines describing a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Manifest {
    entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new() -> Self {
        let mut m = Self::default();
        m.set("version", env!("CARGO_PKG_VERSION"));
        m
    }

    /// Sets `key`, replacing an earlier value in place.
    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }

    pub fn parse(text: &str) -> Self {
        let entries = text
            .lines()
            .filter_map(|l| l.split_once(" = "))
            .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
            .collect();
        Self { entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt_g(1.9248473002384139), "1.92484730024");
        assert_eq!(fmt_g(3.0), "3");
        assert_eq!(fmt_g(-4.0), "-4");
        assert_eq!(fmt_g(100000.0), "100000");
        assert_eq!(fmt_g(1e15), "1e15");
        assert_eq!(fmt_g(1.5e-7), "1.5e-7");
        assert_eq!(fmt_g(0.000123456789012345), "0.000123456789012");
        assert_eq!(fmt_g(9.9999999999999), "10");
        assert_eq!(fmt_g(0.0), "0");
    }

    #[test]
    fn manifest_round_trip() {
        let mut m = Manifest::new();
        m.set("command", "conj").set("mu", fmt_g(1.5));
        m.set("command", "hecke");
        let p = Manifest::parse(&m.to_text());
        assert_eq!(p, m);
        assert_eq!(p.get("command"), Some("hecke"));
    }
}
