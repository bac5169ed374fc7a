use super::intpoly;
use super::monomial::Monomial;
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Outcome of [`TruncPoly::order_of_vanishing`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vanishing {
    /// Lowest total degree carrying a nonzero coefficient.
    Degree(u32),
    /// The polynomial truncates to zero; the true order is at least this.
    AtLeast(u32),
}

/// Multivariate polynomial over the rationals modulo terms of total degree
/// above `order`.
///
/// Coefficients of degree at most `reliable` are exact; above that (only
/// after differentiation) they are truncation artifacts and must not be read.
#[derive(Clone)]
pub struct TruncPoly {
    nvars: usize,
    order: u32,
    reliable: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for TruncPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.order == other.order && self.terms == other.terms
    }
}

impl Eq for TruncPoly {}

impl TruncPoly {
    pub fn zero(nvars: usize, order: u32) -> Self {
        TruncPoly {
            nvars,
            order,
            reliable: order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, order: u32, c: Scalar) -> Self {
        let mut p = TruncPoly::zero(nvars, order);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, order: u32, index: usize) -> Self {
        let mut p = TruncPoly::zero(nvars, order);
        p.add_term(Monomial::var(nvars, index), scalar::one());
        p
    }

    /// The monomial `m` with coefficient one.
    pub fn monomial(order: u32, m: Monomial) -> Self {
        let mut p = TruncPoly::zero(m.nvars(), order);
        p.add_term(m, scalar::one());
        p
    }

    /// Build from `(exponents, coefficient)` pairs; terms above `order` are dropped.
    pub fn from_terms<I>(nvars: usize, order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = TruncPoly::zero(nvars, order);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(&exps), c);
        }
        p
    }

    /// Shorthand for integer coefficients.
    pub fn from_int_terms(nvars: usize, order: u32, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            nvars,
            order,
            terms.iter().map(|(e, c)| (e.to_vec(), scalar::int(*c))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Highest degree whose coefficients are exact.
    pub fn reliable_through(&self) -> u32 {
        self.reliable
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Scalar {
        self.coeff(&Monomial::new(exps))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Add `c * m` in place, dropping it if its degree exceeds the order.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() || m.degree() > self.order {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &TruncPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.reliable = self.reliable.min(other.reliable);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Product with every term above the order discarded.
    pub fn checked_mul(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &TruncPoly) -> TruncPoly {
        let (a, da) = intpoly::to_integer(self);
        let (b, db) = intpoly::to_integer(other);
        let prod = intpoly::mul(&a, &b, self.order);
        let mut out = intpoly::from_integer(self.nvars, self.order, prod, &(da * db));
        out.reliable = self.reliable.min(other.reliable);
        out
    }

    pub fn scale(&self, c: &Scalar) -> TruncPoly {
        let mut out = TruncPoly::zero(self.nvars, self.order);
        out.reliable = self.reliable;
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        out
    }

    pub fn pow(&self, e: u32) -> TruncPoly {
        let mut acc = TruncPoly::constant(self.nvars, self.order, scalar::one());
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Drop all terms above `order` and lower the order to it.
    pub fn truncate(&self, order: u32) -> TruncPoly {
        let order = order.min(self.order);
        TruncPoly {
            nvars: self.nvars,
            order,
            reliable: self.reliable.min(order),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Reinterpret with a different order. Raising the order treats the
    /// missing higher terms as zero, so reliability stays at the old order.
    pub fn with_order(&self, order: u32) -> TruncPoly {
        if order <= self.order {
            return self.truncate(order);
        }
        TruncPoly {
            nvars: self.nvars,
            order,
            reliable: self.reliable,
            terms: self.terms.clone(),
        }
    }

    /// Mark the coefficients as exact through `order`, e.g. for polynomials
    /// that are genuinely polynomial rather than truncated series.
    pub fn assume_exact(mut self) -> TruncPoly {
        self.reliable = self.order;
        self
    }

    pub(crate) fn with_reliability(mut self, reliable: u32) -> TruncPoly {
        self.reliable = reliable.min(self.order);
        self
    }

    /// Formal partial derivative. The result keeps the order, but its
    /// coefficients are only exact through degree `order - 1`.
    pub fn partial_derivative(&self, index: usize) -> Result<TruncPoly> {
        if index >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut out = TruncPoly::zero(self.nvars, self.order);
        out.reliable = self.reliable.saturating_sub(1);
        for (m, c) in &self.terms {
            let e = m.exp(index);
            if e == 0 {
                continue;
            }
            let dm = m.div_var(index).expect("exponent is positive");
            out.add_term(dm, c * scalar::int(i64::from(e)));
        }
        Ok(out)
    }

    /// Lowest total degree of a nonzero term.
    pub fn order_of_vanishing(&self) -> Vanishing {
        match self.terms.keys().next() {
            Some(m) => Vanishing::Degree(m.degree()),
            None => Vanishing::AtLeast(self.order + 1),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> TruncPoly {
        let mut out = TruncPoly::zero(self.nvars, self.order);
        out.reliable = self.reliable;
        out.terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        out
    }

    /// Terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> TruncPoly {
        let mut out = TruncPoly::zero(self.nvars, self.order);
        out.reliable = self.reliable;
        out.terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        out
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.exps().enumerate() {
                for _ in 0..e {
                    t *= &point[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-embed into a ring with more variables: variable `i` becomes `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> TruncPoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = TruncPoly::zero(nvars, self.order);
        out.reliable = self.reliable;
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; nvars];
            for (i, e) in m.exps().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial::new(&exps), c.clone());
        }
        out
    }

    /// Whether every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Render with the given variable names in the CLI expression syntax.
    pub fn to_text(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = scalar::sign(c) < 0;
            let mag = scalar::abs(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if m.degree() == 0 || !mag.is_one() {
                factors.push(scalar::to_text(&mag));
            }
            for (v, e) in m.exps().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "[{}; O({})]", self.to_text(&refs), self.order + 1)
    }
}

impl Add for &TruncPoly {
    type Output = TruncPoly;
    fn add(self, rhs: &TruncPoly) -> TruncPoly {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &TruncPoly {
    type Output = TruncPoly;
    fn sub(self, rhs: &TruncPoly) -> TruncPoly {
        self.checked_add(&-rhs).expect("incompatible polynomials")
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        self.scale(&-scalar::one())
    }
}

impl Mul for &TruncPoly {
    type Output = TruncPoly;
    fn mul(self, rhs: &TruncPoly) -> TruncPoly {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

/// Truncated product; see [`TruncPoly::checked_mul`].
pub fn poly_mul(a: &TruncPoly, b: &TruncPoly) -> Result<TruncPoly> {
    a.checked_mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetalg::scalar::{int, rat};

    fn y(order: u32) -> TruncPoly {
        TruncPoly::var(1, order, 0)
    }

    #[test]
    fn product_truncates_above_order() {
        let y2 = y(4).pow(2);
        let y3 = y(4).pow(3);
        assert!(poly_mul(&y2, &y3).unwrap().is_zero());
    }

    #[test]
    fn product_expands() {
        let a = &y(4) + &y(4).pow(2);
        let got = poly_mul(&a, &y(4)).unwrap();
        assert_eq!(got, TruncPoly::from_int_terms(1, 4, &[(&[2], 1), (&[3], 1)]));
    }

    #[test]
    fn difference_of_squares() {
        let x = TruncPoly::var(2, 4, 0);
        let y = TruncPoly::var(2, 4, 1);
        let got = poly_mul(&(&x + &y), &(&x - &y)).unwrap();
        assert_eq!(
            got,
            TruncPoly::from_int_terms(2, 4, &[(&[2, 0], 1), (&[0, 2], -1)])
        );
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let a = TruncPoly::var(1, 4, 0);
        let b = TruncPoly::var(2, 4, 0);
        assert!(matches!(poly_mul(&a, &b), Err(Error::DimensionMismatch(_))));
        let c = TruncPoly::var(1, 5, 0);
        assert_eq!(poly_mul(&a, &c), Err(Error::OrderMismatch(4, 5)));
    }

    #[test]
    fn derivatives() {
        // d/dy (y^3 + x*y) = 3y^2 + x
        let f = TruncPoly::from_int_terms(2, 4, &[(&[0, 3], 1), (&[1, 1], 1)]);
        let d = f.partial_derivative(1).unwrap();
        assert_eq!(
            d,
            TruncPoly::from_int_terms(2, 4, &[(&[0, 2], 3), (&[1, 0], 1)])
        );
        assert_eq!(d.reliable_through(), 3);
        let x = TruncPoly::var(2, 4, 0);
        assert!(x.partial_derivative(1).unwrap().is_zero());
        let x2y = TruncPoly::from_int_terms(2, 4, &[(&[2, 1], 1)]);
        assert_eq!(
            x2y.partial_derivative(0).unwrap(),
            TruncPoly::from_int_terms(2, 4, &[(&[1, 1], 2)])
        );
        assert!(f.partial_derivative(2).is_err());
    }

    #[test]
    fn vanishing_order() {
        let x2 = TruncPoly::from_int_terms(1, 4, &[(&[2], 1)]);
        assert_eq!(x2.order_of_vanishing(), Vanishing::Degree(2));
        assert_eq!(
            TruncPoly::zero(1, 4).order_of_vanishing(),
            Vanishing::AtLeast(5)
        );
        let p = TruncPoly::from_int_terms(1, 4, &[(&[3], 1), (&[4], 1)]);
        assert_eq!(p.order_of_vanishing(), Vanishing::Degree(3));
    }

    #[test]
    fn text_rendering() {
        let p = TruncPoly::from_terms(
            2,
            4,
            vec![
                (vec![0, 3], int(1)),
                (vec![1, 1], rat(-1, 2)),
                (vec![1, 0], int(2)),
            ],
        );
        assert_eq!(p.to_text(&["x", "y"]), "2*x - 1/2*x*y + y^3");
    }
}
