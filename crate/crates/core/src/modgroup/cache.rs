//! Text persistence for ball enumerations.
//!
//! ```text
//! # hyperlattice ball cache
//! version 1
//! center <x> <y>
//! companion <x> <y>
//! radius <X>
//! count <n>
//! a b c d
//! ...
//! ```
//!
//! Floats are written in Rust's shortest round-trip form, so a store/load
//! cycle is bit-exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::ball::ball_enumerate;
use super::matrix::GammaMatrix;
use crate::error::{Error, Result};
use crate::hypgeom::UpperHalfPoint;

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct BallCache {
    pub center: UpperHalfPoint,
    pub companion: UpperHalfPoint,
    pub radius: f64,
    pub elements: Vec<GammaMatrix>,
}

impl BallCache {
    /// Enumerates the ball and wraps it.
    pub fn build(center: UpperHalfPoint, companion: UpperHalfPoint, radius: f64) -> Result<Self> {
        Ok(Self {
            center,
            companion,
            radius,
            elements: ball_enumerate(center, companion, radius)?,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(32 * self.elements.len() + 128);
        s.push_str("# hyperlattice ball cache\n");
        let _ = writeln!(s, "version {CACHE_VERSION}");
        let _ = writeln!(s, "center {:?} {:?}", self.center.x(), self.center.y());
        let _ = writeln!(s, "companion {:?} {:?}", self.companion.x(), self.companion.y());
        let _ = writeln!(s, "radius {:?}", self.radius);
        let _ = writeln!(s, "count {}", self.elements.len());
        for g in &self.elements {
            let [a, b, c, d] = g.entries();
            let _ = writeln!(s, "{a} {b} {c} {d}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let mut header = |key: &str| -> Result<(usize, Vec<&str>)> {
            let (n, l) = lines.next().ok_or_else(|| Error::MalformedRow {
                line: 0,
                reason: format!("missing header field `{key}`"),
            })?;
            let mut parts = l.split_whitespace();
            if parts.next() != Some(key) {
                return Err(Error::MalformedRow {
                    line: n,
                    reason: format!("expected header field `{key}`"),
                });
            }
            Ok((n, parts.collect()))
        };

        let (_, v) = header("version")?;
        if v.len() != 1 || v[0].parse::<u32>().ok() != Some(CACHE_VERSION) {
            return Err(Error::VersionMismatch {
                found: v.join(" "),
                expected: CACHE_VERSION,
            });
        }
        let floats = |n: usize, v: Vec<&str>, k: usize| -> Result<Vec<f64>> {
            let out: Vec<f64> = v.iter().filter_map(|s| s.parse().ok()).collect();
            if out.len() != k || v.len() != k {
                return Err(Error::MalformedRow {
                    line: n,
                    reason: format!("expected {k} numbers"),
                });
            }
            Ok(out)
        };
        let point = |n: usize, v: Vec<&str>| -> Result<UpperHalfPoint> {
            let p = floats(n, v, 2)?;
            UpperHalfPoint::new(p[0], p[1]).map_err(|e| Error::InvariantViolation {
                line: n,
                reason: e.to_string(),
            })
        };
        let (n, v) = header("center")?;
        let center = point(n, v)?;
        let (n, v) = header("companion")?;
        let companion = point(n, v)?;
        let (n, v) = header("radius")?;
        let radius = floats(n, v, 1)?[0];
        let (n, v) = header("count")?;
        let count: usize = match v.as_slice() {
            [c] => c.parse().map_err(|_| Error::MalformedRow {
                line: n,
                reason: "bad count".into(),
            })?,
            _ => {
                return Err(Error::MalformedRow {
                    line: n,
                    reason: "bad count".into(),
                })
            }
        };

        let mut elements = Vec::with_capacity(count);
        let mut last_line = n;
        for (n, l) in lines {
            last_line = n;
            let nums: Vec<i64> = l.split_whitespace().filter_map(|s| s.parse().ok()).collect();
            if nums.len() != 4 || l.split_whitespace().count() != 4 {
                return Err(Error::MalformedRow {
                    line: n,
                    reason: format!("expected four integers, got `{l}`"),
                });
            }
            let (a, b, c, d) = (nums[0], nums[1], nums[2], nums[3]);
            let det = a as i128 * d as i128 - b as i128 * c as i128;
            if det != 1 {
                return Err(Error::InvariantViolation {
                    line: n,
                    reason: format!("determinant {det}"),
                });
            }
            if !GammaMatrix::is_canonical(a, c) {
                return Err(Error::InvariantViolation {
                    line: n,
                    reason: "non-canonical sign".into(),
                });
            }
            let g = GammaMatrix::new(a, b, c, d)?;
            if let Some(prev) = elements.last() {
                if *prev >= g {
                    return Err(Error::InvariantViolation {
                        line: n,
                        reason: "rows not strictly ascending".into(),
                    });
                }
            }
            elements.push(g);
        }
        if elements.len() != count {
            return Err(Error::MalformedRow {
                line: last_line,
                reason: format!("truncated: header promises {count} rows, found {}", elements.len()),
            });
        }
        Ok(Self {
            center,
            companion,
            radius,
            elements,
        })
    }
}

pub fn cache_store(path: impl AsRef<Path>, cache: &BallCache) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, cache.to_text()).map_err(|e| Error::io(path, e))
}

pub fn cache_load(path: impl AsRef<Path>) -> Result<BallCache> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    BallCache::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BallCache {
        let z = UpperHalfPoint::new(0.1, 1.1).unwrap();
        let w = UpperHalfPoint::new(-0.3, 0.7).unwrap();
        BallCache::build(z, w, 40.0).unwrap()
    }

    #[test]
    fn round_trip() {
        let c = sample();
        assert!(!c.elements.is_empty());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ball.txt");
        cache_store(&path, &c).unwrap();
        assert_eq!(cache_load(&path).unwrap(), c);
    }

    #[test]
    fn truncated_is_malformed() {
        let text = sample().to_text();
        let cut = &text[..text.len() - 3];
        assert!(matches!(BallCache::parse(cut), Err(Error::MalformedRow { .. })));
        let lines: Vec<&str> = text.lines().collect();
        let dropped = lines[..lines.len() - 1].join("\n");
        assert!(matches!(BallCache::parse(&dropped), Err(Error::MalformedRow { .. })));
    }

    #[test]
    fn det_zero_is_violation() {
        let mut text = sample().to_text();
        text = text.replace("count ", "count_old ");
        let n: usize = text
            .lines()
            .find_map(|l| l.strip_prefix("count_old "))
            .unwrap()
            .parse()
            .unwrap();
        text = text.replace(&format!("count_old {n}"), &format!("count {}", n + 1));
        text.push_str("1 2 2 4\n");
        assert!(matches!(BallCache::parse(&text), Err(Error::InvariantViolation { .. })));
    }

    #[test]
    fn version_mismatch() {
        let text = sample().to_text().replace("version 1", "version 7");
        assert!(matches!(BallCache::parse(&text), Err(Error::VersionMismatch { .. })));
    }
}
