//! Rational scalars.
//!
//! `BigRational` already keeps every value in lowest terms with a positive
//! denominator, so the scalar type is an alias plus a few constructors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q` in lowest terms. Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Sign as -1, 0 or 1.
pub fn sign(s: &Scalar) -> i32 {
    match s.cmp(&Scalar::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// `2^-k`.
pub fn inv_pow2(k: u32) -> Scalar {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

/// Exact text form, `p` for integers and `p/q` otherwise.
pub fn to_text(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parse `p` or `p/q` (optionally signed).
pub fn from_text(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn abs(s: &Scalar) -> Scalar {
    s.abs()
}

/// Approximate value for human-facing summaries only.
pub fn to_f64(s: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    s.to_f64().unwrap_or(f64::NAN)
}
