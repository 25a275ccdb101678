//! Exact coefficient fields: arbitrary-precision rationals and prime fields.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// The coefficient field of a session: ℚ or 𝔽_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

impl FieldKind {
    /// Construct a prime-field kind, verifying primality (p < 2^31).
    pub fn prime(p: u64) -> Result<FieldKind> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldKind::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "rationals"),
            FieldKind::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Exact field element. The engine is generic over this trait; the two
/// instantiations are [`BigRational`] and [`Fp`].
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse; `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    /// Embed a machine integer, bound to `kind`.
    fn from_int(n: i64, kind: &FieldKind) -> Self;

    /// Parse an unsigned decimal digit string, bound to `kind`.
    fn from_decimal(digits: &str, kind: &FieldKind) -> Result<Self>;

    /// Whether this scalar type can represent elements of `kind`'s field.
    fn matches(kind: &FieldKind) -> bool;
}

impl Coeff for BigRational {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_int(n: i64, _kind: &FieldKind) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_decimal(digits: &str, _kind: &FieldKind) -> Result<Self> {
        let n = BigInt::from_str(digits).map_err(|e| Error::Parse {
            offset: 0,
            message: format!("bad integer literal `{digits}`: {e}"),
        })?;
        Ok(BigRational::from_integer(n))
    }

    fn matches(kind: &FieldKind) -> bool {
        matches!(kind, FieldKind::Rationals)
    }
}

/// Prime-field element with a runtime modulus.
///
/// `p == 0` marks an *unbound constant*: a small signed integer (stored in
/// `v` by two's-complement cast) produced by `zero()` / `one()` / negation
/// before any modulus is known. Unbound values bind to the other operand's
/// modulus on arithmetic contact. All parsed or evaluated values are bound.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(n: i64, p: u64) -> Fp {
        debug_assert!(p > 1);
        let m = n.rem_euclid(p as i64) as u64;
        Fp { v: m, p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Canonical residue in `0..p`; panics on unbound values (callers always
    /// hold bound values by the time a residue is demanded).
    pub fn residue(&self) -> u64 {
        assert!(self.p != 0, "residue of an unbound prime-field constant");
        self.v
    }

    fn bind(&self, p: u64) -> Fp {
        if self.p != 0 {
            assert_eq!(self.p, p, "mixed prime-field moduli {} and {}", self.p, p);
            *self
        } else {
            Fp::new(self.v as i64, p)
        }
    }

    fn unify(a: Fp, b: Fp) -> (Fp, Fp, u64) {
        let p = if a.p != 0 { a.p } else { b.p };
        if p == 0 {
            (a, b, 0)
        } else {
            (a.bind(p), b.bind(p), p)
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, p) = Fp::unify(*self, *other);
        if p == 0 {
            a.v as i64 == b.v as i64
        } else {
            a.v == b.v
        }
    }
}

impl Eq for Fp {}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            write!(f, "{}", self.v as i64)
        } else {
            write!(f, "{}", self.v)
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            Fp { v: ((a.v as i64) + (b.v as i64)) as u64, p: 0 }
        } else {
            Fp { v: (a.v + b.v) % p, p }
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            Fp { v: ((a.v as i64) * (b.v as i64)) as u64, p: 0 }
        } else {
            Fp { v: ((a.v as u128 * b.v as u128) % p as u128) as u64, p }
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.p == 0 {
            Fp { v: (-(self.v as i64)) as u64, p: 0 }
        } else {
            Fp { v: (self.p - self.v) % self.p, p: self.p }
        }
    }
}

impl Zero for Fp {
    fn zero() -> Fp {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Fp {
        Fp { v: 1, p: 0 }
    }
    fn is_one(&self) -> bool {
        if self.p == 0 {
            self.v as i64 == 1
        } else {
            self.v == 1
        }
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

impl Coeff for Fp {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.p == 0 {
            // Only ±1 can be inverted without a modulus.
            let n = self.v as i64;
            assert!(n == 1 || n == -1, "inverse of unbound prime-field constant {n}");
            return Some(*self);
        }
        Some(Fp { v: pow_mod(self.v, self.p - 2, self.p), p: self.p })
    }

    fn from_int(n: i64, kind: &FieldKind) -> Self {
        match kind {
            FieldKind::Prime(p) => Fp::new(n, *p),
            FieldKind::Rationals => panic!("prime-field scalar bound to the rationals"),
        }
    }

    fn from_decimal(digits: &str, kind: &FieldKind) -> Result<Self> {
        let p = match kind {
            FieldKind::Prime(p) => *p,
            FieldKind::Rationals => {
                return Err(Error::FieldMismatch(
                    "prime-field scalar bound to the rationals".into(),
                ))
            }
        };
        let mut acc: u64 = 0;
        for ch in digits.chars() {
            let d = ch.to_digit(10).ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("bad digit `{ch}` in integer literal"),
            })? as u64;
            acc = ((acc as u128 * 10 + d as u128) % p as u128) as u64;
        }
        Ok(Fp { v: acc, p })
    }

    fn matches(kind: &FieldKind) -> bool {
        matches!(kind, FieldKind::Prime(_))
    }
}

/// Display helper: `-1/2` needs parens in product position for rationals.
pub fn is_negative_display<K: Coeff>(k: &K) -> bool {
    k.to_string().starts_with('-')
}

/// True when the coefficient prints as a bare `1`.
pub fn is_display_one<K: Coeff>(k: &K) -> bool {
    k.is_one()
}

/// Rational helper used by the parser for `a/b` literals.
pub fn big_ratio(num: &str, den: &str) -> Result<BigRational> {
    let n = BigInt::from_str(num).map_err(|e| Error::Parse {
        offset: 0,
        message: format!("bad numerator `{num}`: {e}"),
    })?;
    let d = BigInt::from_str(den).map_err(|e| Error::Parse {
        offset: 0,
        message: format!("bad denominator `{den}`: {e}"),
    })?;
    if d.is_zero() {
        return Err(Error::Parse { offset: 0, message: "zero denominator".into() });
    }
    Ok(BigRational::new(n, d))
}

/// Pretty-print a rational without a superfluous `/1`.
pub fn show_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.denom().is_negative() {
        // num_rational keeps denominators positive, but be safe.
        format!("{}/{}", -r.numer(), -r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
