//! Arithmetic layers.
//!
//! Geometric quantities in this crate live in one of two layers:
//!
//! * the exact layer: arbitrary-precision rationals ([`Rational`]) or the
//!   radical extension [`SqrtPair`] of them, where algebraic identities are
//!   checked with literal equality;
//! * the floating layer: `f64`, where every comparison carries a tolerance.
//!
//! [`Scalar`] is the common ring interface: the Christoffel table, the frame
//! covariant derivative, and the residual computations are generic over it,
//! so the same code path produces both exact certificates and fast floats.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Commutative-ring operations required by the generic tensor code.
///
/// No division: the exact layer must stay closed, and the one extension ring
/// used here ([`SqrtPair`]) is not a field.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Lossy conversion for reports and for seeding float computations.
    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for f64 {
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Shorthand for a small rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a decimal or fraction literal into an exact rational.
///
/// Accepts `"3"`, `"-0.25"`, `"7/2"`. Decimal strings convert exactly, so
/// command-line inputs can feed the exact layer without rounding.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::invalid("empty numeric literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::invalid(format!("bad numeric literal {s:?}")));
    }
    let digits = |t: &str| -> Result<BigInt> {
        if t.is_empty() {
            return Ok(BigInt::zero());
        }
        t.parse()
            .map_err(|_| Error::invalid(format!("bad numeric literal {s:?}")))
    };
    let int_val = digits(int_part)?;
    let frac_val = digits(frac_part)?;
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    let value = Rational::new(int_val * &scale + frac_val, scale);
    Ok(if sign < 0 { -value } else { value })
}

/// Context of the radical extension: the two radicands.
///
/// Both are assumed positive so that the real embedding exists; equality of
/// elements is *formal* (coefficient-wise in the ring Q[r,s]/(r²−p, s²−q)),
/// which is what the exact identity checks need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtCtx {
    pub p: Rational,
    pub q: Rational,
}

impl SqrtCtx {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        if !p.is_positive() || !q.is_positive() {
            return Err(Error::invalid("radicands must be positive"));
        }
        Ok(SqrtCtx { p, q })
    }
}

/// Element `c0 + c1·√p + c2·√q + c3·√(pq)` of the extension ring Q(√p, √q).
///
/// Plain rationals carry no context (`ctx == None`) and combine with any
/// extension element; two extension elements must share the same context.
/// The ring is closed under `+`, `−`, `×` with no rounding, which is all the
/// totally-geodesic and mean-curvature residual computations require.
#[derive(Debug, Clone)]
pub struct SqrtPair {
    c: [Rational; 4],
    ctx: Option<SqrtCtx>,
}

impl SqrtPair {
    pub fn from_rational(r: Rational) -> Self {
        SqrtPair {
            c: [r, Rational::zero(), Rational::zero(), Rational::zero()],
            ctx: None,
        }
    }

    /// The generator √p of the extension.
    pub fn sqrt_p(ctx: &SqrtCtx) -> Self {
        SqrtPair {
            c: [
                Rational::zero(),
                Rational::one(),
                Rational::zero(),
                Rational::zero(),
            ],
            ctx: Some(ctx.clone()),
        }
    }

    /// The generator √q of the extension.
    pub fn sqrt_q(ctx: &SqrtCtx) -> Self {
        SqrtPair {
            c: [
                Rational::zero(),
                Rational::zero(),
                Rational::one(),
                Rational::zero(),
            ],
            ctx: Some(ctx.clone()),
        }
    }

    pub fn coefficients(&self) -> &[Rational; 4] {
        &self.c
    }

    fn radical_free(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// Merges contexts, panicking on a genuine mismatch. Mixing elements of
    /// two different extensions is a programming error, not a data error.
    fn unify_ctx(a: &SqrtPair, b: &SqrtPair) -> Option<SqrtCtx> {
        match (&a.ctx, &b.ctx) {
            (None, None) => None,
            (Some(c), None) | (None, Some(c)) => Some(c.clone()),
            (Some(ca), Some(cb)) => {
                assert_eq!(ca, cb, "mixed SqrtPair contexts");
                Some(ca.clone())
            }
        }
    }

    /// Real value of the element (rounds the radicals).
    pub fn to_f64(&self) -> f64 {
        let (p, q) = match &self.ctx {
            Some(ctx) => (
                ctx.p.to_f64().unwrap_or(f64::NAN),
                ctx.q.to_f64().unwrap_or(f64::NAN),
            ),
            None => (0.0, 0.0),
        };
        let sp = p.sqrt();
        let sq = q.sqrt();
        self.c[0].to_f64().unwrap_or(f64::NAN)
            + self.c[1].to_f64().unwrap_or(f64::NAN) * sp
            + self.c[2].to_f64().unwrap_or(f64::NAN) * sq
            + self.c[3].to_f64().unwrap_or(f64::NAN) * sp * sq
    }
}

impl PartialEq for SqrtPair {
    fn eq(&self, other: &Self) -> bool {
        if self.c != other.c {
            return false;
        }
        // Coefficients agree; contexts matter only if radicals are present.
        if self.radical_free() {
            return true;
        }
        match (&self.ctx, &other.ctx) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

impl Add for SqrtPair {
    type Output = SqrtPair;
    fn add(self, rhs: SqrtPair) -> SqrtPair {
        let ctx = SqrtPair::unify_ctx(&self, &rhs);
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        SqrtPair { c, ctx }
    }
}

impl Sub for SqrtPair {
    type Output = SqrtPair;
    fn sub(self, rhs: SqrtPair) -> SqrtPair {
        self + (-rhs)
    }
}

impl Neg for SqrtPair {
    type Output = SqrtPair;
    fn neg(self) -> SqrtPair {
        SqrtPair {
            c: self.c.map(|x| -x),
            ctx: self.ctx,
        }
    }
}

impl Mul for SqrtPair {
    type Output = SqrtPair;
    fn mul(self, rhs: SqrtPair) -> SqrtPair {
        let ctx = SqrtPair::unify_ctx(&self, &rhs);
        let zero = Rational::zero;
        let (p, q) = match &ctx {
            Some(c) => (c.p.clone(), c.q.clone()),
            // Both operands are plain rationals.
            None => (zero(), zero()),
        };
        let a = &self.c;
        let b = &rhs.c;
        let c0 = &a[0] * &b[0]
            + &p * (&a[1] * &b[1])
            + &q * (&a[2] * &b[2])
            + &p * &q * (&a[3] * &b[3]);
        let c1 = &a[0] * &b[1] + &a[1] * &b[0] + &q * (&a[2] * &b[3] + &a[3] * &b[2]);
        let c2 = &a[0] * &b[2] + &a[2] * &b[0] + &p * (&a[1] * &b[3] + &a[3] * &b[1]);
        let c3 = &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1];
        SqrtPair {
            c: [c0, c1, c2, c3],
            ctx,
        }
    }
}

impl Zero for SqrtPair {
    fn zero() -> Self {
        SqrtPair::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }
}

impl One for SqrtPair {
    fn one() -> Self {
        SqrtPair::from_rational(Rational::one())
    }
}

impl Scalar for SqrtPair {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64()
    }
}

impl std::fmt::Display for SqrtPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (coeff, label) in self.c.iter().zip(["", "√p", "√q", "√(pq)"]) {
            if coeff.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            if label.is_empty() {
                write!(f, "{coeff}")?;
            } else {
                write!(f, "{coeff}·{label}")?;
            }
            first = false;
        }
        Ok(())
    }
}
