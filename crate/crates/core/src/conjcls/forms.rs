//! Indefinite binary quadratic forms `ax² + bxy + cy²`, Gauss reduction and
//! the automorph `M_Q`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::modgroup::GammaMatrix;

/// Primitive indefinite form with non-square discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    a: i64,
    b: i64,
    c: i64,
}

fn discriminant(a: i64, b: i64, c: i64) -> Result<i64> {
    let d = b as i128 * b as i128 - 4 * a as i128 * c as i128;
    i64::try_from(d).map_err(|_| Error::Overflow("discriminant"))
}

fn isqrt(n: i64) -> i64 {
    (n as u64).isqrt() as i64
}

fn is_square(n: i64) -> bool {
    n >= 0 && {
        let s = isqrt(n);
        s * s == n
    }
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("form arithmetic"))
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let d = discriminant(a, b, c)?;
        if d <= 0 {
            return Err(Error::InvalidDiscriminant(d));
        }
        if is_square(d) {
            return Err(Error::SquareDiscriminant(d));
        }
        if a.gcd(&b).gcd(&c) != 1 {
            return Err(Error::NotPrimitive { a, b, c });
        }
        Ok(Self { a, b, c })
    }

    /// The principal form of discriminant `d`.
    pub fn principal(d: i64) -> Result<Self> {
        check_disc(d)?;
        if d % 4 == 0 {
            QuadForm::new(1, 0, -d / 4)
        } else {
            QuadForm::new(1, 1, -(d - 1) / 4)
        }
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

    pub fn coeffs(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn disc(&self) -> i64 {
        discriminant(self.a, self.b, self.c).expect("checked at construction")
    }

    /// `Q(x, y)` with 128-bit arithmetic.
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    /// The form `Q ∘ g`, i.e. `gᵗ (a b/2; b/2 c) g`.
    pub fn transform(&self, g: &GammaMatrix) -> Result<Self> {
        let [p, q, r, s] = g.entries().map(|v| v as i128);
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let na = a * p * p + b * p * r + c * r * r;
        let nb = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
        let nc = a * q * q + b * q * s + c * s * s;
        Ok(Self {
            a: narrow(na)?,
            b: narrow(nb)?,
            c: narrow(nc)?,
        })
    }

    /// Reduced: `0 < b < √d` and `√d − b < 2|a| < √d + b`.
    pub fn is_reduced(&self) -> bool {
        let d = self.disc() as i128;
        let s = isqrt(self.disc()) as i128;
        let (a2, b) = (2 * (self.a as i128).abs(), self.b as i128);
        if !(0 < b && b <= s) {
            return false;
        }
        let lo = a2 + b;
        let hi = a2 - b;
        lo * lo > d && (hi < 0 || hi * hi < d)
    }

    /// One reduction step `(a, b, c) -> (c, b', (b'² − d) / 4c)` together
    /// with the matrix `(0 −1; 1 k)` realizing it.
    fn rho(&self) -> Result<(Self, GammaMatrix)> {
        let d = self.disc() as i128;
        let s = isqrt(self.disc()) as i128;
        let (b, c) = (self.b as i128, self.c as i128);
        let m = 2 * c.abs();
        let lo = if c * c > d { -c.abs() + 1 } else { s - m + 1 };
        let bp = lo + (-b - lo).rem_euclid(m);
        let k = (bp + b) / (2 * c);
        let nc = (bp * bp - d) / (4 * c);
        let t = GammaMatrix::new(0, -1, 1, narrow(k)?)?;
        Ok((
            Self {
                a: self.c,
                b: narrow(bp)?,
                c: narrow(nc)?,
            },
            t,
        ))
    }

    /// A reduced form equivalent to `self` and the matrix `P` with
    /// `self ∘ P = reduced`.
    pub fn reduce(&self) -> Result<(Self, GammaMatrix)> {
        let mut f = *self;
        let mut p = GammaMatrix::IDENTITY;
        for _ in 0..100_000 {
            if f.is_reduced() {
                return Ok((f, p));
            }
            let (g, t) = f.rho()?;
            f = g;
            p = p.mul(&t)?;
        }
        Err(Error::NonConvergence(format!("reduction of {self}")))
    }

    /// The cycle of reduced forms equivalent to `self`, starting from the
    /// first reduced form reached, and the product of the step matrices
    /// over one full period (an automorph of that first form).
    pub fn cycle_with_automorph(&self) -> Result<(Vec<QuadForm>, GammaMatrix)> {
        let (r0, _) = self.reduce()?;
        let mut cycle = vec![r0];
        let mut p = GammaMatrix::IDENTITY;
        let mut f = r0;
        loop {
            let (g, t) = f.rho()?;
            p = p.mul(&t)?;
            if g == r0 {
                return Ok((cycle, p));
            }
            cycle.push(g);
            f = g;
            if cycle.len() > 1_000_000 {
                return Err(Error::NonConvergence(format!("cycle of {self}")));
            }
        }
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn check_disc(d: i64) -> Result<()> {
    if d <= 0 || !(d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) {
        return Err(Error::InvalidDiscriminant(d));
    }
    if is_square(d) {
        return Err(Error::SquareDiscriminant(d));
    }
    Ok(())
}

/// The cyclic sequence of reduced forms properly equivalent to `q`.
pub fn reduce_cycle(q: &QuadForm) -> Result<Vec<QuadForm>> {
    Ok(q.cycle_with_automorph()?.0)
}

/// Least positive solution `(t, u)` of `t² − d u² = 4`.
///
/// Read off from the period of the principal cycle: the product of the
/// reduction steps over one period generates the proper automorphs.
pub fn pell_fundamental(d: i64) -> Result<(i64, i64)> {
    let q = QuadForm::principal(d)?;
    let (cycle, p) = q.cycle_with_automorph()?;
    let r0 = cycle[0];
    let t = p.abs_trace();
    let u = (p.c() / r0.a()).abs();
    debug_assert_eq!(
        t as i128 * t as i128 - d as i128 * u as i128 * u as i128,
        4
    );
    Ok((t, u))
}

/// `M_Q = ((t − bu)/2, −cu; au, (t + bu)/2)`.
pub fn automorph(q: &QuadForm) -> Result<GammaMatrix> {
    let (t, u) = pell_fundamental(q.disc())?;
    let (t, u) = (t as i128, u as i128);
    let (a, b, c) = (q.a as i128, q.b as i128, q.c as i128);
    assert!(
        (t - b * u) % 2 == 0,
        "parity of (t - bu)/2 fails for {q}"
    );
    let m = GammaMatrix::new(
        narrow((t - b * u) / 2)?,
        narrow(-c * u)?,
        narrow(a * u)?,
        narrow((t + b * u) / 2)?,
    )?;
    debug_assert_eq!(q.transform(&m)?, *q);
    Ok(m)
}

/// Proper equivalence: the reduced cycles coincide.
pub fn forms_equivalent(q1: &QuadForm, q2: &QuadForm) -> Result<bool> {
    if q1.disc() != q2.disc() {
        return Ok(false);
    }
    let (r2, _) = q2.reduce()?;
    Ok(reduce_cycle(q1)?.contains(&r2))
}

/// Oriented primitive fixed-point form of a hyperbolic element.
///
/// The positive-trace representative `(a b; c d)` of `g` fixes the form
/// `(c, d − a, −b)`; dividing by the (positive) content gives back `Q` when
/// `g` is a positive power of `M_Q`, and `−Q` for a negative power. Keeping
/// that sign is what separates a class from its inverse class.
pub fn matrix_to_form(g: &GammaMatrix) -> Result<QuadForm> {
    let tr = g.trace();
    if tr.abs() <= 2 {
        return Err(Error::NotHyperbolic(tr));
    }
    let s = tr.signum();
    let (a, b, c) = (s * g.c(), s * (g.d() - g.a()), -s * g.b());
    let k = a.gcd(&b).gcd(&c);
    QuadForm::new(a / k, b / k, c / k)
}
