use super::intpoly::{self, IntTerms};
use super::linalg::Matrix;
use super::monomial::Monomial;
use super::poly::TruncPoly;
use super::scalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Polynomial map `(R^source_dim, 0) -> (R^target_dim, 0)` modulo terms of
/// degree above `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct JetMap {
    source_dim: usize,
    order: u32,
    components: Vec<TruncPoly>,
}

impl JetMap {
    /// Components must share variable count and order and fix the origin.
    pub fn new(components: Vec<TruncPoly>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::DimensionMismatch("jet needs at least one component".into()))?;
        let (source_dim, order) = (first.nvars(), first.order());
        for c in &components {
            if c.nvars() != source_dim {
                return Err(Error::DimensionMismatch(format!(
                    "components in {} and {} variables",
                    source_dim,
                    c.nvars()
                )));
            }
            if c.order() != order {
                return Err(Error::OrderMismatch(order, c.order()));
            }
            if !c.constant_term().is_zero() {
                return Err(Error::NonzeroConstant);
            }
        }
        Ok(JetMap {
            source_dim,
            order,
            components,
        })
    }

    pub fn identity(dim: usize, order: u32) -> Self {
        JetMap {
            source_dim: dim,
            order,
            components: (0..dim).map(|i| TruncPoly::var(dim, order, i)).collect(),
        }
    }

    /// Linear jet `v -> m v`.
    pub fn linear(m: &Matrix, order: u32) -> Self {
        let comps = (0..m.rows())
            .map(|i| {
                let mut p = TruncPoly::zero(m.cols(), order);
                for j in 0..m.cols() {
                    p.add_term(Monomial::var(m.cols(), j), m[(i, j)].clone());
                }
                p
            })
            .collect();
        JetMap {
            source_dim: m.cols(),
            order,
            components: comps,
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn components(&self) -> &[TruncPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &TruncPoly {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<TruncPoly> {
        self.components
    }

    /// Jacobian at the origin, `target_dim x source_dim`.
    pub fn linear_part(&self) -> Matrix {
        let mut m = Matrix::zeros(self.target_dim(), self.source_dim);
        for (i, c) in self.components.iter().enumerate() {
            for j in 0..self.source_dim {
                m[(i, j)] = c.coeff(&Monomial::var(self.source_dim, j));
            }
        }
        m
    }

    pub fn truncate(&self, order: u32) -> JetMap {
        JetMap {
            source_dim: self.source_dim,
            order: order.min(self.order),
            components: self.components.iter().map(|c| c.truncate(order)).collect(),
        }
    }

    pub fn with_order(&self, order: u32) -> JetMap {
        JetMap {
            source_dim: self.source_dim,
            order,
            components: self.components.iter().map(|c| c.with_order(order)).collect(),
        }
    }

    /// `self ∘ inner`, truncated to the common order.
    pub fn compose(&self, inner: &JetMap) -> Result<JetMap> {
        jet_compose(self, inner)
    }

    pub fn to_text(&self, names: &[&str]) -> String {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_text(names)).collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("({})", parts.join(", "))
        }
    }
}

impl std::fmt::Debug for JetMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.components.iter()).finish()
    }
}

/// Substitute `inner[i]` for variable `i` in every polynomial of `outer`.
///
/// Monomial products are built once and shared across all outer polynomials,
/// each from its parent monomial with one fewer factor.
pub fn substitute(outer: &[TruncPoly], inner: &[TruncPoly]) -> Result<Vec<TruncPoly>> {
    let first = inner
        .first()
        .ok_or_else(|| Error::DimensionMismatch("empty substitution".into()))?;
    let (nvars, order) = (first.nvars(), first.order());
    for p in inner {
        if p.nvars() != nvars {
            return Err(Error::DimensionMismatch("inner maps disagree on source".into()));
        }
        if p.order() != order {
            return Err(Error::OrderMismatch(order, p.order()));
        }
        if !p.constant_term().is_zero() {
            return Err(Error::NonzeroConstant);
        }
    }
    for p in outer {
        if p.nvars() != inner.len() {
            return Err(Error::DimensionMismatch(format!(
                "outer in {} variables, {} substitutions",
                p.nvars(),
                inner.len()
            )));
        }
        if p.order() != order {
            return Err(Error::OrderMismatch(p.order(), order));
        }
    }
    // inner[i] = q[i] / d with integer q[i]; a monomial image of degree k is
    // then an integer polynomial over d^k
    let scaled: Vec<(IntTerms, BigInt)> = inner.iter().map(intpoly::to_integer).collect();
    let d = scaled.iter().fold(BigInt::one(), |acc, (_, di)| acc.lcm(di));
    let q: Vec<IntTerms> = scaled
        .into_iter()
        .map(|(t, di)| {
            let k = &d / di;
            t.into_iter().map(|(m, c)| (m, c * &k)).collect()
        })
        .collect();
    let mut d_pow = vec![BigInt::one()];
    for _ in 0..order {
        let next = d_pow.last().expect("nonempty") * &d;
        d_pow.push(next);
    }
    let mut cache: HashMap<Monomial, IntTerms> = HashMap::new();
    let mut out = Vec::with_capacity(outer.len());
    for p in outer {
        let (a, l) = intpoly::to_integer(p);
        let mut acc = IntTerms::new();
        for (m, c) in &a {
            let scale = c * &d_pow[(order - m.degree()) as usize];
            let img = monomial_image(m, &q, &mut cache, nvars, order);
            for (pm, pc) in img.iter() {
                *acc.entry(pm.clone()).or_default() += pc * &scale;
            }
        }
        let acc = intpoly::from_integer(nvars, order, acc, &(l * &d_pow[order as usize]));
        let rel = p
            .reliable_through()
            .min(inner.iter().map(TruncPoly::reliable_through).min().unwrap_or(order));
        out.push(if rel >= order { acc } else { acc.with_reliability(rel) });
    }
    Ok(out)
}

fn monomial_image<'a>(
    m: &Monomial,
    inner: &[IntTerms],
    cache: &'a mut HashMap<Monomial, IntTerms>,
    nvars: usize,
    order: u32,
) -> &'a IntTerms {
    if !cache.contains_key(m) {
        let img = match m.last_var() {
            None => IntTerms::from([(Monomial::one(nvars), BigInt::one())]),
            Some(v) => {
                let parent = m.div_var(v).expect("variable divides");
                if parent.degree() == 0 {
                    inner[v].clone()
                } else {
                    let pp = monomial_image(&parent, inner, cache, nvars, order);
                    intpoly::mul(pp, &inner[v], order)
                }
            }
        };
        cache.insert(m.clone(), img);
    }
    &cache[m]
}

/// `outer ∘ inner`, truncated.
pub fn jet_compose(outer: &JetMap, inner: &JetMap) -> Result<JetMap> {
    if inner.target_dim() != outer.source_dim {
        return Err(Error::DimensionMismatch(format!(
            "inner has target dimension {}, outer has source dimension {}",
            inner.target_dim(),
            outer.source_dim
        )));
    }
    if inner.order != outer.order {
        return Err(Error::OrderMismatch(outer.order, inner.order));
    }
    let comps = substitute(&outer.components, &inner.components)?;
    Ok(JetMap {
        source_dim: inner.source_dim,
        order: outer.order,
        components: comps,
    })
}

/// Jet of a local diffeomorphism: a square jet with invertible linear part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffeoJet(JetMap);

impl DiffeoJet {
    pub fn new(jet: JetMap) -> Result<Self> {
        if jet.source_dim() != jet.target_dim() {
            return Err(Error::DimensionMismatch(format!(
                "diffeomorphism jet must be square, got {} -> {}",
                jet.source_dim(),
                jet.target_dim()
            )));
        }
        if jet.linear_part().determinant().is_zero() {
            return Err(Error::SingularLinearPart);
        }
        Ok(DiffeoJet(jet))
    }

    pub fn identity(dim: usize, order: u32) -> Self {
        DiffeoJet(JetMap::identity(dim, order))
    }

    pub fn linear(m: &Matrix, order: u32) -> Result<Self> {
        DiffeoJet::new(JetMap::linear(m, order))
    }

    pub fn jet(&self) -> &JetMap {
        &self.0
    }

    pub fn into_jet(self) -> JetMap {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.source_dim()
    }

    pub fn order(&self) -> u32 {
        self.0.order()
    }

    /// Sign of the Jacobian determinant at the origin.
    pub fn orientation(&self) -> i32 {
        scalar::sign(&self.0.linear_part().determinant())
    }

    pub fn compose(&self, inner: &DiffeoJet) -> Result<DiffeoJet> {
        Ok(DiffeoJet(jet_compose(&self.0, &inner.0)?))
    }

    pub fn invert(&self) -> Result<DiffeoJet> {
        jet_invert(self)
    }
}

/// Group inverse in the jet group. Writing the jet as `A + N` with linear
/// `A`, the degree-`k` part of the inverse is `-A^{-1}` applied to the
/// degree-`k` part of `N` composed with the inverse's lower degrees.
pub fn jet_invert(phi: &DiffeoJet) -> Result<DiffeoJet> {
    let jet = phi.jet();
    let order = jet.order();
    let a_inv = jet
        .linear_part()
        .inverse()
        .ok_or(Error::SingularLinearPart)?;
    let nonlinear: Vec<TruncPoly> = jet
        .components()
        .iter()
        .map(|c| c.filter_terms(|m| m.degree() >= 2))
        .collect();
    let mut comps = JetMap::linear(&a_inv, order).into_components();
    if nonlinear.iter().all(TruncPoly::is_zero) {
        return Ok(DiffeoJet(JetMap::new(comps)?));
    }
    for k in 2..=order {
        let lower: Vec<TruncPoly> = comps.iter().map(|c| c.truncate(k)).collect();
        let nk: Vec<TruncPoly> = nonlinear.iter().map(|c| c.truncate(k)).collect();
        let n_of_g = substitute(&nk, &lower)?;
        for (j, p) in n_of_g.iter().enumerate() {
            for (m, c) in p.terms().filter(|(m, _)| m.degree() == k) {
                for (i, comp) in comps.iter_mut().enumerate() {
                    let a = &a_inv[(i, j)];
                    if !a.is_zero() {
                        comp.add_term(m.clone(), -(a * c));
                    }
                }
            }
        }
    }
    let rel = jet
        .components()
        .iter()
        .map(TruncPoly::reliable_through)
        .min()
        .unwrap_or(order);
    if rel < order {
        comps = comps.into_iter().map(|c| c.with_reliability(rel)).collect();
    }
    Ok(DiffeoJet(JetMap::new(comps)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetalg::scalar::{int, rat};

    fn planar(f1: &[(&[u32], i64)], f2: &[(&[u32], i64)]) -> JetMap {
        JetMap::new(vec![
            TruncPoly::from_int_terms(2, 4, f1),
            TruncPoly::from_int_terms(2, 4, f2),
        ])
        .unwrap()
    }

    const X: &[u32] = &[1, 0];
    const Y: &[u32] = &[0, 1];

    #[test]
    fn identity_is_neutral() {
        let f = planar(&[(X, 1)], &[(&[0, 2], 1)]);
        let id = JetMap::identity(2, 4);
        assert_eq!(jet_compose(&f, &id).unwrap(), f);
        assert_eq!(jet_compose(&id, &f).unwrap(), f);
    }

    #[test]
    fn binomial_substitution() {
        let f = planar(&[(X, 1)], &[(&[0, 2], 1)]);
        let inner = planar(&[(X, 1)], &[(Y, 1), (X, 1)]);
        let got = jet_compose(&f, &inner).unwrap();
        let want = planar(&[(X, 1)], &[(&[0, 2], 1), (&[1, 1], 2), (&[2, 0], 1)]);
        assert_eq!(got, want);
    }

    #[test]
    fn reflection_substitution() {
        let f = planar(&[(X, 1)], &[(&[0, 3], 1), (&[1, 1], 1)]);
        let inner = planar(&[(X, 1)], &[(Y, -1)]);
        let got = jet_compose(&f, &inner).unwrap();
        assert_eq!(got, planar(&[(X, 1)], &[(&[0, 3], -1), (&[1, 1], -1)]));
    }

    #[test]
    fn compose_rejects_bad_shapes() {
        let f = planar(&[(X, 1)], &[(Y, 1)]);
        let g = JetMap::identity(3, 4);
        assert!(matches!(
            jet_compose(&f, &g),
            Err(Error::DimensionMismatch(_))
        ));
        let h = JetMap::identity(2, 5);
        assert!(matches!(jet_compose(&f, &h), Err(Error::OrderMismatch(..))));
        let with_const = vec![TruncPoly::constant(2, 4, int(1)), TruncPoly::var(2, 4, 1)];
        assert!(matches!(
            substitute(f.components(), &with_const),
            Err(Error::NonzeroConstant)
        ));
    }

    #[test]
    fn invert_identity_and_shear() {
        let id = DiffeoJet::identity(2, 4);
        assert_eq!(jet_invert(&id).unwrap(), id);
        let shear = DiffeoJet::new(planar(&[(X, 1)], &[(Y, 1), (&[2, 0], 1)])).unwrap();
        let inv = jet_invert(&shear).unwrap();
        assert_eq!(
            inv.jet(),
            &planar(&[(X, 1)], &[(Y, 1), (&[2, 0], -1)])
        );
    }

    #[test]
    fn invert_scaled_shear() {
        // (2x, y + xy) has inverse (x/2, y - xy/2 + x^2 y/4 - x^3 y/8)
        let phi = DiffeoJet::new(planar(&[(X, 2)], &[(Y, 1), (&[1, 1], 1)])).unwrap();
        let inv = jet_invert(&phi).unwrap();
        let want = JetMap::new(vec![
            TruncPoly::from_terms(2, 4, vec![(vec![1, 0], rat(1, 2))]),
            TruncPoly::from_terms(
                2,
                4,
                vec![
                    (vec![0, 1], int(1)),
                    (vec![1, 1], rat(-1, 2)),
                    (vec![2, 1], rat(1, 4)),
                    (vec![3, 1], rat(-1, 8)),
                ],
            ),
        ])
        .unwrap();
        assert_eq!(inv.jet(), &want);
        let id = JetMap::identity(2, 4);
        assert_eq!(jet_compose(phi.jet(), inv.jet()).unwrap(), id);
        assert_eq!(jet_compose(inv.jet(), phi.jet()).unwrap(), id);
    }

    #[test]
    fn singular_linear_part_is_rejected() {
        let f = planar(&[(X, 1)], &[(&[0, 2], 1)]);
        assert_eq!(DiffeoJet::new(f), Err(Error::SingularLinearPart));
    }
}
