//! Integer numerators over a shared denominator, used inside products and
//! substitutions so that no gcd is taken until the final coefficients.

use super::monomial::Monomial;
use super::poly::TruncPoly;
use super::scalar::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub(crate) type IntTerms = BTreeMap<Monomial, BigInt>;

/// `(numerators, d)` with `p = numerators / d`.
pub(crate) fn to_integer(p: &TruncPoly) -> (IntTerms, BigInt) {
    let d = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let terms = p
        .terms()
        .map(|(m, c)| (m.clone(), c.numer() * (&d / c.denom())))
        .collect();
    (terms, d)
}

pub(crate) fn from_integer(nvars: usize, order: u32, terms: IntTerms, d: &BigInt) -> TruncPoly {
    let mut out = TruncPoly::zero(nvars, order);
    for (m, c) in terms {
        if !c.is_zero() {
            out.add_term(m, Scalar::new(c, d.clone()));
        }
    }
    out
}

/// `acc += k * a * b`, dropping terms above `order`.
pub(crate) fn mul_into(acc: &mut IntTerms, a: &IntTerms, b: &IntTerms, order: u32, k: &BigInt) {
    for (ma, ca) in a {
        let room = order - ma.degree();
        let cak = if k.is_one() { ca.clone() } else { ca * k };
        for (mb, cb) in b {
            if mb.degree() > room {
                break;
            }
            *acc.entry(ma.mul(mb)).or_default() += &cak * cb;
        }
    }
}

pub(crate) fn mul(a: &IntTerms, b: &IntTerms, order: u32) -> IntTerms {
    let mut acc = IntTerms::new();
    mul_into(&mut acc, a, b, order, &BigInt::one());
    acc.retain(|_, c| !c.is_zero());
    acc
}
