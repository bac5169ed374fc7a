//! Tangent spaces `Tf = Jf + τf` of map germs in a degree-truncated model,
//! codimensions, inflation and the universality test for unfoldings.

use crate::error::{Error, Result};
use crate::jetalg::linalg::{integerize, SparseEchelon, SparseVec};
use crate::jetalg::{substitute, JetMap, Monomial, Scalar, TruncPoly, MAX_ORDER};
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Element of the truncated germ space: one polynomial per target
/// coordinate, constants allowed.
pub type GermVector = Vec<TruncPoly>;

/// Germs `(R^s, 0) -> R^t` modulo terms of degree above `degree`.
#[derive(Debug, Clone)]
pub struct TruncatedGermSpace {
    source_dim: usize,
    target_dim: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl TruncatedGermSpace {
    pub fn new(source_dim: usize, target_dim: usize, degree: u32) -> Self {
        let monomials = Monomial::all_up_to(source_dim, 0, degree);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        TruncatedGermSpace {
            source_dim,
            target_dim,
            degree,
            monomials,
            index,
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `t * C(s + d, d)`.
    pub fn dim(&self) -> usize {
        self.target_dim * self.monomials.len()
    }

    /// Basis element `m e_k`.
    pub fn basis_element(&self, i: usize) -> (Monomial, usize) {
        let nm = self.monomials.len();
        (self.monomials[i % nm].clone(), i / nm)
    }

    pub fn coordinates(&self, v: &[TruncPoly]) -> Result<SparseVec> {
        if v.len() != self.target_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} components, space has {}",
                v.len(),
                self.target_dim
            )));
        }
        let nm = self.monomials.len();
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, p) in v.iter().enumerate() {
            if p.nvars() != self.source_dim {
                return Err(Error::DimensionMismatch(format!(
                    "component in {} variables, space has {}",
                    p.nvars(),
                    self.source_dim
                )));
            }
            for (m, c) in p.terms() {
                if m.degree() <= self.degree {
                    out.insert(k * nm + self.index[m], c.clone());
                }
            }
        }
        Ok(integerize(&out))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentSpaceReport {
    pub degree: u32,
    pub ambient_dim: usize,
    pub generators_j: usize,
    pub generators_tau: usize,
    pub rank: usize,
    pub codim: usize,
    /// `(degree, codim)` for every degree examined.
    pub stabilization: Vec<(u32, usize)>,
}

fn check_degree(d: u32) -> Result<()> {
    if d > MAX_ORDER {
        return Err(Error::DegreeTooLarge(d, MAX_ORDER));
    }
    Ok(())
}

/// `f` at order `d + 1`, so that first derivatives are exact through `d`.
fn for_derivatives(f: &JetMap, d: u32) -> JetMap {
    f.with_order(d + 1)
}

/// Generators of `Jf` (monomial multiples of the partial derivatives) and
/// of `τf` (target monomials composed with `f`, times unit vectors).
pub fn tangent_generators(f: &JetMap, d: u32) -> Result<(Vec<GermVector>, Vec<GermVector>)> {
    check_degree(d)?;
    let (s, t) = (f.source_dim(), f.target_dim());
    let fd1 = for_derivatives(f, d);
    let mut jf = Vec::new();
    let source_monomials = Monomial::all_up_to(s, 0, d);
    for j in 0..s {
        let partial: Vec<TruncPoly> = fd1
            .components()
            .iter()
            .map(|c| c.partial_derivative(j).map(|p| p.truncate(d)))
            .collect::<Result<_>>()?;
        if partial.iter().all(TruncPoly::is_zero) {
            continue;
        }
        for m in &source_monomials {
            let mp = TruncPoly::monomial(d, m.clone());
            jf.push(partial.iter().map(|p| &mp * p).collect());
        }
    }
    let fd = f.with_order(d);
    let outer: Vec<TruncPoly> = Monomial::all_up_to(t, 0, d)
        .into_iter()
        .map(|mu| TruncPoly::monomial(d, mu))
        .collect();
    let composed = substitute(&outer, fd.components())?;
    let mut tau = Vec::new();
    for c in composed {
        if c.is_zero() {
            continue;
        }
        for k in 0..t {
            let mut v = vec![TruncPoly::zero(s, d); t];
            v[k] = c.clone();
            tau.push(v);
        }
    }
    Ok((jf, tau))
}

/// Echelon basis of `Tf` in the truncated space.
struct TangentSpace {
    space: TruncatedGermSpace,
    echelon: SparseEchelon,
    generators_j: usize,
    generators_tau: usize,
}

impl TangentSpace {
    fn new(f: &JetMap, d: u32) -> Result<Self> {
        let (jf, tau) = tangent_generators(f, d)?;
        let space = TruncatedGermSpace::new(f.source_dim(), f.target_dim(), d);
        let mut echelon = SparseEchelon::new();
        for v in jf.iter().chain(tau.iter()) {
            echelon.insert(space.coordinates(v)?);
        }
        Ok(TangentSpace {
            space,
            echelon,
            generators_j: jf.len(),
            generators_tau: tau.len(),
        })
    }

    fn codim(&self) -> usize {
        self.space.dim() - self.echelon.rank()
    }
}

pub fn tangent_codim(f: &JetMap, d: u32) -> Result<TangentSpaceReport> {
    let ts = TangentSpace::new(f, d)?;
    Ok(TangentSpaceReport {
        degree: d,
        ambient_dim: ts.space.dim(),
        generators_j: ts.generators_j,
        generators_tau: ts.generators_tau,
        rank: ts.echelon.rank(),
        codim: ts.codim(),
        stabilization: vec![(d, ts.codim())],
    })
}

/// Report at the largest requested degree, with the codimension at each.
pub fn tangent_codim_over(f: &JetMap, degrees: &[u32]) -> Result<TangentSpaceReport> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let last = *sorted
        .last()
        .ok_or_else(|| Error::Precondition("no degrees requested".into()))?;
    let mut stabilization = Vec::new();
    for &d in &sorted[..sorted.len() - 1] {
        stabilization.push((d, tangent_codim(f, d)?.codim));
    }
    let mut report = tangent_codim(f, last)?;
    stabilization.push((last, report.codim));
    report.stabilization = stabilization;
    Ok(report)
}

/// Whether `v` lies in `Tf` at degree `d`.
pub fn membership(v: &[TruncPoly], f: &JetMap, d: u32) -> Result<bool> {
    let ts = TangentSpace::new(f, d)?;
    Ok(ts.echelon.contains(ts.space.coordinates(v)?))
}

/// `(z, x, y) -> (x, f2(x, y) + Σ q_i z_i^2)`.
pub fn inflate(f: &JetMap, q: &[Scalar]) -> Result<JetMap> {
    if f.source_dim() != 2 || f.target_dim() != 2 {
        return Err(Error::DimensionMismatch("inflation needs a planar jet".into()));
    }
    let order = f.order();
    if f.component(0) != &TruncPoly::var(2, order, 0) {
        return Err(Error::NotStandardPosition("first component is not x".into()));
    }
    if q.iter().any(Zero::is_zero) {
        return Err(Error::DegenerateForm);
    }
    let n = q.len();
    let nv = n + 2;
    let mut f2 = f.component(1).embed(nv, &[n, n + 1]);
    for (i, c) in q.iter().enumerate() {
        f2.add_term(Monomial::var(nv, i).mul(&Monomial::var(nv, i)), c.clone());
    }
    JetMap::new(vec![TruncPoly::var(nv, order, n), f2])
}

/// Unfolding `(u, x) -> (u, F(u, x))` of `base`, with the parameters as the
/// first `params` source and target coordinates.
#[derive(Debug, Clone)]
pub struct UnfoldingSpec {
    base: JetMap,
    params: usize,
    total: JetMap,
}

impl UnfoldingSpec {
    pub fn new(base: JetMap, params: usize, total: JetMap) -> Result<Self> {
        let (s, t) = (base.source_dim(), base.target_dim());
        if total.source_dim() != params + s || total.target_dim() != params + t {
            return Err(Error::MalformedUnfolding(format!(
                "expected a map {} -> {}, got {} -> {}",
                params + s,
                params + t,
                total.source_dim(),
                total.target_dim()
            )));
        }
        if total.order() != base.order() {
            return Err(Error::OrderMismatch(base.order(), total.order()));
        }
        for i in 0..params {
            if total.component(i) != &TruncPoly::var(params + s, total.order(), i) {
                return Err(Error::MalformedUnfolding(format!(
                    "component {} is not the parameter u{}",
                    i + 1,
                    i + 1
                )));
            }
        }
        let spec = UnfoldingSpec { base, params, total };
        for k in 0..t {
            if spec.at_zero(spec.total.component(params + k)) != *spec.base.component(k) {
                return Err(Error::MalformedUnfolding(format!(
                    "component {} does not restrict to the base germ at u = 0",
                    params + k + 1
                )));
            }
        }
        Ok(spec)
    }

    /// Build from the unfolded components `F(u, x)` alone.
    pub fn from_family(base: JetMap, params: usize, family: Vec<TruncPoly>) -> Result<Self> {
        let nv = params + base.source_dim();
        let order = base.order();
        let mut comps: Vec<TruncPoly> = (0..params).map(|i| TruncPoly::var(nv, order, i)).collect();
        comps.extend(family);
        let total = JetMap::new(comps)?;
        UnfoldingSpec::new(base, params, total)
    }

    pub fn base(&self) -> &JetMap {
        &self.base
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn total(&self) -> &JetMap {
        &self.total
    }

    /// Restriction of a polynomial in `(u, x)` to `u = 0`.
    fn at_zero(&self, p: &TruncPoly) -> TruncPoly {
        let s = self.base.source_dim();
        let p0 = p.filter_terms(|m| (0..self.params).all(|i| m.exp(i) == 0));
        let mut out = TruncPoly::zero(s, p.order());
        for (m, c) in p0.terms() {
            let e: Vec<u32> = m.exps().skip(self.params).collect();
            out.add_term(Monomial::new(&e), c.clone());
        }
        out
    }

    /// `∂F/∂u_i` at `u = 0`, truncated to degree `d`.
    pub fn initial_velocity(&self, i: usize, d: u32) -> Result<GermVector> {
        let t = self.base.target_dim();
        let total = for_derivatives(&self.total, d);
        (0..t)
            .map(|k| {
                let dp = total.component(self.params + k).partial_derivative(i)?;
                Ok(self.at_zero(&dp).truncate(d))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalityReport {
    pub universal: bool,
    pub degree: u32,
    pub ambient_dim: usize,
    pub rank: usize,
    /// Dimension missing from `Tf + span{∂F/∂u_i}`.
    pub deficiency: usize,
}

/// Whether the initial velocities of the unfolding together with `Tf` span
/// the truncated germ space.
pub fn is_universal_unfolding(u: &UnfoldingSpec, d: u32) -> Result<UniversalityReport> {
    let mut ts = TangentSpace::new(u.base(), d)?;
    for i in 0..u.params() {
        let v = u.initial_velocity(i, d)?;
        ts.echelon.insert(ts.space.coordinates(&v)?);
    }
    let deficiency = ts.codim();
    Ok(UniversalityReport {
        universal: deficiency == 0,
        degree: d,
        ambient_dim: ts.space.dim(),
        rank: ts.echelon.rank(),
        deficiency,
    })
}
