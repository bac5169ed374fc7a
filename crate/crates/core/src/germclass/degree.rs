use super::standard::{rank_of_linear_part, reduce, to_standard_position};
use super::{classify, Tag};
use crate::error::{Error, Result};
use crate::jetalg::linalg::inertia;
use crate::jetalg::scalar::{self, Scalar};
use crate::jetalg::sturm::{isolate_roots, sturm_root_count, UniPoly};
use crate::jetalg::TruncPoly;
use crate::jetalg::JetMap;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LocalDegree {
    Value(i32),
    /// Source and target dimensions differ and the split-off form does not
    /// reduce the question to the plane.
    NotDefined,
}

/// Local topological degree at the origin.
///
/// Planar jets are counted exactly: the preimages of a small rational value
/// near the origin are isolated with Sturm sequences inside a box certified
/// to contain no other preimage of the origin. For `n > 0` the planar degree
/// of the residual is reported when `n` is even and the split-off form is
/// definite.
pub fn local_degree(f: &JetMap) -> Result<LocalDegree> {
    let class = classify(f)?;
    if class.tag == Tag::Unclassified {
        return Err(Error::WrongClass {
            expected: "one of the six types".into(),
            got: class.to_string(),
        });
    }
    let n = f.source_dim() - 2;
    if n == 0 {
        if rank_of_linear_part(f)? == 2 {
            return Ok(LocalDegree::Value(scalar::sign(&f.linear_part().determinant())));
        }
        let (reduced, left, right) = reduce(f)?;
        let d = planar_degree(reduced.component(1))?;
        return Ok(LocalDegree::Value(d * left.orientation() * right.orientation()));
    }
    if class.tag == Tag::Regular || n % 2 == 1 {
        return Ok(LocalDegree::NotDefined);
    }
    let sp = to_standard_position(f)?;
    let q = sp.quad_form.as_ref().expect("classified");
    let inr = inertia(q);
    if inr.zero != 0 || (inr.positive != 0 && inr.negative != 0) {
        return Ok(LocalDegree::NotDefined);
    }
    match &sp.residual {
        None => Ok(LocalDegree::Value(0)),
        Some(res) => Ok(LocalDegree::Value(planar_degree(res.component(1))?)),
    }
}

/// Coefficients of `f2(x0, y)` as a polynomial in `y`.
fn fiber(f2: &TruncPoly, x0: &Scalar) -> UniPoly {
    let order = f2.order() as usize;
    let mut c = vec![Scalar::zero(); order + 1];
    for (m, v) in f2.terms() {
        let mut t = v.clone();
        for _ in 0..m.exp(0) {
            t *= x0;
        }
        c[m.exp(1) as usize] += t;
    }
    UniPoly::new(c)
}

/// `t -> f2(t x0, y) - t y0` for fixed `y`.
fn segment(f2: &TruncPoly, x0: &Scalar, y: &Scalar, y0: &Scalar) -> UniPoly {
    let order = f2.order() as usize;
    let mut c = vec![Scalar::zero(); order + 1];
    for (m, v) in f2.terms() {
        let mut t = v.clone();
        for _ in 0..m.exp(0) {
            t *= x0;
        }
        for _ in 0..m.exp(1) {
            t *= y;
        }
        c[m.exp(0) as usize] += t;
    }
    c[1] -= y0;
    UniPoly::new(c)
}

fn no_roots_in(p: &UniPoly, lo: &Scalar, hi: &Scalar) -> bool {
    match p.degree() {
        None => false,
        Some(0) => true,
        Some(_) => matches!(sturm_root_count(p, lo, hi), Ok(0)) && !p.eval(lo).is_zero(),
    }
}

/// Degree of `(x, y) -> (x, f2(x, y))` at the origin.
fn planar_degree(f2: &TruncPoly) -> Result<i32> {
    let g = fiber(f2, &Scalar::zero());
    let Some(mult) = g.coeffs().iter().position(|c| !c.is_zero()) else {
        return Err(Error::RegularValueNotFound(
            "f2 vanishes identically on the kernel line".into(),
        ));
    };
    let h = UniPoly::new(g.coeffs()[mult..].to_vec());
    let rho = (1..=40)
        .map(scalar::inv_pow2)
        .find(|r| no_roots_in(&h, &-r.clone(), r))
        .ok_or_else(|| Error::RegularValueNotFound("no root-free box around 0".into()))?;
    let neg_rho = -rho.clone();
    let ratios = [scalar::one(), -scalar::one(), scalar::rat(1, 3), scalar::rat(-1, 3)];
    for k in (4..=32).step_by(4) {
        let x0 = scalar::inv_pow2(k);
        for r in &ratios {
            let y0 = &x0 * r;
            let mut p = fiber(f2, &x0);
            p = p.add(&UniPoly::constant(-y0.clone()));
            let (p_lo, p_hi) = (p.eval(&neg_rho), p.eval(&rho));
            if p_lo.is_zero() || p_hi.is_zero() {
                continue;
            }
            // the segment from 0 to (x0, y0) must avoid the image of the box
            // boundary y = ±rho
            let clear = [&rho, &neg_rho]
                .iter()
                .all(|y| no_roots_in(&segment(f2, &x0, y, &y0), &Scalar::zero(), &Scalar::one()));
            if !clear {
                continue;
            }
            let common = p.gcd(&p.derivative());
            if common.degree().unwrap_or(0) > 0 && !no_roots_in(&common, &neg_rho, &rho) {
                continue;
            }
            let roots = isolate_roots(&p, &neg_rho, &rho, &(&rho * scalar::int(2)))?;
            // each root is simple, so sign p' at the root is the sign of p at
            // the right end of its isolating interval
            let counted: i32 = roots.iter().map(|(_, b)| scalar::sign(&p.eval(b))).sum();
            let by_ends = (scalar::sign(&p_hi) - scalar::sign(&p_lo)) / 2;
            if counted != by_ends {
                return Err(Error::RegularValueNotFound(format!(
                    "root count {counted} disagrees with endpoint signs {by_ends}"
                )));
            }
            return Ok(counted);
        }
    }
    Err(Error::RegularValueNotFound(
        "no candidate value certified down to 2^-32".into(),
    ))
}
