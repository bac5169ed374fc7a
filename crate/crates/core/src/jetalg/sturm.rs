//! Dense univariate polynomials over the rationals and Sturm sequences.

use super::poly::TruncPoly;
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    /// Coefficients from the constant term upwards; no trailing zeros.
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    /// Univariate view of a one-variable truncated polynomial.
    pub fn from_trunc(p: &TruncPoly) -> Result<Self> {
        if p.nvars() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected a univariate polynomial, got {} variables",
                p.nvars()
            )));
        }
        let mut coeffs = vec![Scalar::zero(); p.order() as usize + 1];
        for (m, c) in p.terms() {
            coeffs[m.degree() as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * scalar::int(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &f * c;
            }
            quot[k] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => UniPoly::zero(),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Sturm chain `p, p', -rem(p, p'), ...`.
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&-scalar::one()));
        }
        chain
    }
}

fn sign_changes(chain: &[UniPoly], x: &Scalar) -> usize {
    let mut changes = 0;
    let mut last = 0;
    for p in chain {
        let s = scalar::sign(&p.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_root_count(p: &UniPoly, lo: &Scalar, hi: &Scalar) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::InvalidInterval);
    }
    for e in [lo, hi] {
        if p.eval(e).is_zero() {
            return Err(Error::RootAtEndpoint(scalar::to_text(e)));
        }
    }
    let chain = p.sturm_chain();
    Ok(sign_changes(&chain, lo) - sign_changes(&chain, hi))
}

/// Disjoint intervals `(a, b]`, each containing exactly one distinct root of
/// `p` in `(lo, hi]`, with width at most `max_width`.
pub fn isolate_roots(
    p: &UniPoly,
    lo: &Scalar,
    hi: &Scalar,
    max_width: &Scalar,
) -> Result<Vec<(Scalar, Scalar)>> {
    let total = sturm_root_count(p, lo, hi)?;
    let chain = p.sturm_chain();
    let count = |a: &Scalar, b: &Scalar| sign_changes(&chain, a) - sign_changes(&chain, b);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), total)];
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 && &(&b - &a) <= max_width {
            out.push((a, b));
            continue;
        }
        let mut mid = (&a + &b) / scalar::int(2);
        // nudge the split point off a root so both halves have nonzero ends
        let mut step = (&b - &a) / scalar::int(8);
        while p.eval(&mid).is_zero() {
            mid += &step;
            step /= scalar::int(2);
        }
        let left = count(&a, &mid);
        stack.push((mid.clone(), b, n - left));
        stack.push((a, mid, left));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Sign of `q` on an interval known to contain no root of `q`.
pub fn sign_on(q: &UniPoly, a: &Scalar, b: &Scalar) -> Option<i32> {
    if q.is_zero() {
        return Some(0);
    }
    let mid = (a + b) / scalar::int(2);
    let s = scalar::sign(&q.eval(&mid));
    if s == 0 {
        return None;
    }
    let ea = q.eval(a);
    if !ea.is_zero() && scalar::sign(&ea) != s {
        return None;
    }
    match sturm_root_count(q, a, b) {
        Ok(0) => Some(s),
        Ok(_) => None,
        Err(_) => None,
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => scalar::to_text(c),
                1 if c.is_one() => "t".to_string(),
                1 => format!("{}*t", scalar::to_text(c)),
                _ if c.is_one() => format!("t^{i}"),
                _ => format!("{}*t^{}", scalar::to_text(c), i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetalg::scalar::int;

    #[test]
    fn counts_roots_in_half_open_interval() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(sturm_root_count(&p, &int(-2), &int(2)).unwrap(), 2);
        let q = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_root_count(&q, &int(-2), &int(2)).unwrap(), 0);
        let r = UniPoly::from_ints(&[0, -3, 0, 1]);
        assert_eq!(sturm_root_count(&r, &int(-2), &int(2)).unwrap(), 3);
    }

    #[test]
    fn repeated_roots_count_once() {
        // (y-1)^2 (y+1)
        let p = UniPoly::from_ints(&[1, -1, -1, 1]);
        assert_eq!(sturm_root_count(&p, &int(-3), &int(3)).unwrap(), 2);
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            sturm_root_count(&UniPoly::zero(), &int(0), &int(1)),
            Err(Error::ZeroPolynomial)
        );
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        assert!(matches!(
            sturm_root_count(&p, &int(-2), &int(1)),
            Err(Error::RootAtEndpoint(_))
        ));
        assert_eq!(
            sturm_root_count(&p, &int(2), &int(-2)),
            Err(Error::InvalidInterval)
        );
    }

    #[test]
    fn isolation_separates_close_roots() {
        // y (y - 1/100)
        let p = UniPoly::new(vec![int(0), scalar::rat(-1, 100), int(1)]);
        let iv = isolate_roots(&p, &int(-1), &int(1), &scalar::rat(1, 1000)).unwrap();
        assert_eq!(iv.len(), 2);
        for (a, b) in &iv {
            assert_eq!(sturm_root_count(&p, a, b).unwrap(), 1);
        }
    }

    #[test]
    fn gcd_and_squarefree() {
        let p = UniPoly::from_ints(&[1, -1, -1, 1]);
        assert_eq!(p.squarefree_part(), UniPoly::from_ints(&[-1, 0, 1]));
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[1, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[1, 1]));
    }
}
