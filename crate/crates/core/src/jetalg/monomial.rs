use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial. Ordered by total degree first, then by
/// exponents in descending lexicographic order, so `x` precedes `y` and `x^2`
/// precedes `x*y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0u8; nvars];
        exps[index] = 1;
        Monomial {
            degree: 1,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn new(exps: &[u32]) -> Self {
        let degree = exps.iter().sum();
        Monomial {
            degree,
            exps: exps
                .iter()
                .map(|&e| u8::try_from(e).expect("exponent out of range"))
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exp(&self, index: usize) -> u32 {
        u32::from(self.exps[index])
    }

    pub fn exps(&self) -> impl Iterator<Item = u32> + '_ {
        self.exps.iter().map(|&e| u32::from(e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            degree: self.degree + other.degree,
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / x_index`, or `None` when the variable does not divide.
    pub fn div_var(&self, index: usize) -> Option<Monomial> {
        if self.exps[index] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[index] -= 1;
        Some(Monomial {
            degree: self.degree - 1,
            exps,
        })
    }

    pub fn mul_var(&self, index: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[index] += 1;
        Monomial {
            degree: self.degree + 1,
            exps,
        }
    }

    /// Index of the last variable with a positive exponent.
    pub fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// Whether any of the listed variables occurs.
    pub fn involves_any(&self, vars: &[usize]) -> bool {
        vars.iter().any(|&v| self.exps[v] > 0)
    }

    /// All monomials in `nvars` variables of total degree exactly `degree`,
    /// in canonical order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(left);
                out.push(Monomial::new(prefix));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(nvars, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
        out
    }

    /// All monomials of total degree in `lo..=hi`, in canonical order.
    pub fn all_up_to(nvars: usize, lo: u32, hi: u32) -> Vec<Monomial> {
        (lo..=hi)
            .flat_map(|d| Monomial::all_of_degree(nvars, d))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let x = Monomial::new(&[1, 0]);
        let y = Monomial::new(&[0, 1]);
        let xx = Monomial::new(&[2, 0]);
        let xy = Monomial::new(&[1, 1]);
        assert!(x < y);
        assert!(y < xx);
        assert!(xx < xy);
    }

    #[test]
    fn counts_match_binomials() {
        // C(n+d-1, d) monomials of degree d in n variables
        assert_eq!(Monomial::all_of_degree(2, 4).len(), 5);
        assert_eq!(Monomial::all_of_degree(5, 4).len(), 70);
        assert_eq!(Monomial::all_up_to(3, 0, 4).len(), 35);
        assert_eq!(Monomial::all_of_degree(0, 0).len(), 1);
    }
}
