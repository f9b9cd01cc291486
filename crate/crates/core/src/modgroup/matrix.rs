use std::fmt;

use crate::error::{Error, Result};
use crate::hypgeom::Mobius;

/// An element of PSL(2,Z), stored with the canonical sign `c > 0`, or
/// `c == 0 && a > 0`. Ordering is lexicographic in `(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

fn narrow(v: i128, ctx: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(ctx))
}

impl GammaMatrix {
    pub const IDENTITY: GammaMatrix = GammaMatrix {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    /// The inversion `z -> -1/z`.
    pub const S: GammaMatrix = GammaMatrix {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };

    /// The translation `z -> z + 1`.
    pub const T: GammaMatrix = GammaMatrix {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };

    /// Checks the determinant exactly and picks the canonical sign.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::Domain(format!(
                "({a} {b}; {c} {d}) has determinant {det}, not 1"
            )));
        }
        if c > 0 || (c == 0 && a > 0) {
            Ok(Self { a, b, c, d })
        } else {
            let neg = |v: i64| v.checked_neg().ok_or(Error::Overflow("sign normalization"));
            Ok(Self {
                a: neg(a)?,
                b: neg(b)?,
                c: neg(c)?,
                d: neg(d)?,
            })
        }
    }

    /// Constructor for entries already known to be canonical with det 1.
    pub(crate) fn from_canonical(a: i64, b: i64, c: i64, d: i64) -> Self {
        debug_assert_eq!(a as i128 * d as i128 - b as i128 * c as i128, 1);
        debug_assert!(c > 0 || (c == 0 && a > 0));
        Self { a, b, c, d }
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Whether the entries satisfy the canonical sign rule.
    pub fn is_canonical(a: i64, c: i64) -> bool {
        c > 0 || (c == 0 && a > 0)
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn abs_trace(&self) -> i64 {
        (self.a + self.d).abs()
    }

    pub fn inverse(&self) -> Self {
        // (d -b; -c a) up to sign
        GammaMatrix::new(self.d, -self.b, -self.c, self.a).expect("inverse of unimodular matrix")
    }

    /// Product with 128-bit intermediates; overflow of the result is reported.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let (e, f, g, h) = (o.a as i128, o.b as i128, o.c as i128, o.d as i128);
        let ctx = "matrix product";
        GammaMatrix::new(
            narrow(a * e + b * g, ctx)?,
            narrow(a * f + b * h, ctx)?,
            narrow(c * e + d * g, ctx)?,
            narrow(c * f + d * h, ctx)?,
        )
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = GammaMatrix::IDENTITY;
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `self^{-1} * g * self`.
    pub fn conjugate(&self, g: &Self) -> Result<Self> {
        self.inverse().mul(g)?.mul(self)
    }
}

impl Mobius for GammaMatrix {
    fn entries_f64(&self) -> [f64; 4] {
        [self.a as f64, self.b as f64, self.c as f64, self.d as f64]
    }
}

impl fmt::Display for GammaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}
