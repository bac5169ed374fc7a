use crate::error::{Error, Result};
use crate::jetalg::scalar::{self, Scalar};
use crate::jetalg::{jet_compose, substitute, DiffeoJet, JetMap, Matrix, Monomial, TruncPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt;

/// Line through the origin of the target plane, stored as a coprime integer
/// pair whose first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    pub a: BigInt,
    pub b: BigInt,
}

impl Direction {
    pub fn new(a: &Scalar, b: &Scalar) -> Option<Direction> {
        if a.is_zero() && b.is_zero() {
            return None;
        }
        let l = a.denom().lcm(b.denom());
        let mut ia = a.numer() * (&l / a.denom());
        let mut ib = b.numer() * (&l / b.denom());
        let g = ia.gcd(&ib);
        ia /= &g;
        ib /= &g;
        if ia.is_negative() || (ia.is_zero() && ib.is_negative()) {
            ia = -ia;
            ib = -ib;
        }
        Some(Direction { a: ia, b: ib })
    }

    pub fn from_ints(a: i64, b: i64) -> Option<Direction> {
        Direction::new(&scalar::int(a), &scalar::int(b))
    }

    pub fn as_scalars(&self) -> (Scalar, Scalar) {
        (
            Scalar::from_integer(self.a.clone()),
            Scalar::from_integer(self.b.clone()),
        )
    }

    /// Linear map of the target taking this direction to the first axis.
    pub fn aligning_matrix(&self) -> Matrix {
        let (a, b) = self.as_scalars();
        aligning_matrix(&a, &b)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.a, self.b)
    }
}

impl Serialize for Direction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn aligning_matrix(d0: &Scalar, d1: &Scalar) -> Matrix {
    if !d0.is_zero() {
        Matrix::from_rows(vec![
            vec![d0.recip(), Scalar::zero()],
            vec![-(d1 / d0), scalar::one()],
        ])
    } else {
        Matrix::from_rows(vec![
            vec![Scalar::zero(), d1.recip()],
            vec![scalar::one(), Scalar::zero()],
        ])
    }
}

/// Outcome of reducing a rank-one jet to the shape `(x, f2)`.
#[derive(Debug, Clone)]
pub struct StandardPositionResult {
    /// `(x, f2)` with `f2` free of linear terms; after splitting, `f2` is a
    /// quadratic form plus a residual in `(x, y)` only.
    pub reduced: JetMap,
    pub left: DiffeoJet,
    pub right: DiffeoJet,
    /// `(x, f2^r(x, y))` when the restricted Hessian has nullity one.
    pub residual: Option<JetMap>,
    /// Hessian of the split-off nondegenerate form: in `(z, y)` for nullity
    /// zero, in `z` for nullity one.
    pub quad_form: Option<Matrix>,
    /// Hessian of `f2` on the kernel of the linear part, before splitting.
    pub restricted_hessian: Matrix,
    pub hessian_nullity: usize,
}

pub fn rank_of_linear_part(f: &JetMap) -> Result<usize> {
    if f.target_dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "target dimension must be 2, got {}",
            f.target_dim()
        )));
    }
    Ok(f.linear_part().rank())
}

/// Image line of the linear part, when it has rank one.
pub fn target_direction(f: &JetMap) -> Option<Direction> {
    let l = f.linear_part();
    if l.rank() != 1 {
        return None;
    }
    (0..l.cols())
        .find(|&j| !l[(0, j)].is_zero() || !l[(1, j)].is_zero())
        .and_then(|j| Direction::new(&l[(0, j)], &l[(1, j)]))
}

/// Indices of `z1..zn, y`, spanning the kernel of the linear part of a jet
/// in standard position.
pub(crate) fn kernel_vars(n: usize) -> Vec<usize> {
    (0..n).chain(std::iter::once(n + 1)).collect()
}

/// Second derivatives at the origin of `p` in the variables `vars`.
pub fn restricted_hessian(p: &TruncPoly, vars: &[usize]) -> Matrix {
    let nv = p.nvars();
    let k = vars.len();
    let mut h = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let m = Monomial::var(nv, vars[i]).mul(&Monomial::var(nv, vars[j]));
            let c = p.coeff(&m);
            if i == j {
                h[(i, i)] = c * scalar::int(2);
            } else {
                h[(i, j)] = c.clone();
                h[(j, i)] = c;
            }
        }
    }
    h
}

/// Reduce a rank-one jet to `(x, f2)` by a linear target change and a
/// source change making the first component a coordinate, then split off
/// the nondegenerate quadratic part when the restricted Hessian has nullity
/// at most one.
///
/// The witnesses satisfy `left ∘ f ∘ right⁻¹ = reduced`.
pub fn to_standard_position(f: &JetMap) -> Result<StandardPositionResult> {
    let (reduced, left0, phi) = reduce(f)?;
    finish_standard_position(reduced, left0, phi)
}

/// Hessian analysis and splitting after [`reduce`].
pub(crate) fn finish_standard_position(
    reduced: JetMap,
    left0: DiffeoJet,
    phi: DiffeoJet,
) -> Result<StandardPositionResult> {
    let n = reduced.source_dim() - 2;
    let hessian = restricted_hessian(reduced.component(1), &kernel_vars(n));
    let nullity = n + 1 - hessian.rank();
    if nullity >= 2 {
        return Ok(StandardPositionResult {
            reduced,
            left: left0,
            right: phi,
            residual: None,
            quad_form: None,
            restricted_hessian: hessian,
            hessian_nullity: nullity,
        });
    }
    let split = split_off_quadratic(&reduced)?;
    Ok(StandardPositionResult {
        left: split.left.compose(&left0)?,
        right: split.right.compose(&phi)?,
        restricted_hessian: hessian,
        ..split
    })
}

/// First stage of [`to_standard_position`]: `(reduced, left, right)` with
/// `reduced = (x, f2)` and no splitting.
pub(crate) fn reduce(f: &JetMap) -> Result<(JetMap, DiffeoJet, DiffeoJet)> {
    let rank = rank_of_linear_part(f)?;
    if rank != 1 {
        return Err(Error::WrongRank(rank));
    }
    let nv = f.source_dim();
    if nv < 2 {
        return Err(Error::DimensionMismatch("source dimension must be at least 2".into()));
    }
    let (n, order) = (nv - 2, f.order());
    let x = n;
    let dir = target_direction(f).expect("rank one");
    let (d0, d1) = dir.as_scalars();
    let left0 = DiffeoJet::linear(&aligning_matrix(&d0, &d1), order)?;
    let g = jet_compose(left0.jet(), f)?;
    let r = g.linear_part();
    let pivot = if !r[(0, x)].is_zero() {
        x
    } else {
        (0..nv).rev().find(|&j| !r[(0, j)].is_zero()).expect("rank one")
    };
    let comps = (0..nv)
        .map(|i| {
            if i == x {
                g.component(0).clone()
            } else if i == pivot {
                TruncPoly::var(nv, order, x)
            } else {
                TruncPoly::var(nv, order, i)
            }
        })
        .collect();
    let phi = DiffeoJet::new(JetMap::new(comps)?)?;
    let reduced = jet_compose(&g, phi.invert()?.jet())?;
    debug_assert_eq!(reduced.component(0), &TruncPoly::var(nv, order, x));
    Ok((reduced, left0, phi))
}

fn check_standard(reduced: &JetMap) -> Result<()> {
    if reduced.target_dim() != 2 || reduced.source_dim() < 2 {
        return Err(Error::NotStandardPosition("expected a map to the plane".into()));
    }
    let nv = reduced.source_dim();
    if reduced.component(0) != &TruncPoly::var(nv, reduced.order(), nv - 2) {
        return Err(Error::NotStandardPosition("first component is not x".into()));
    }
    if reduced.component(1).terms().any(|(m, _)| m.degree() == 1) {
        return Err(Error::NotStandardPosition(
            "second component has a linear term".into(),
        ));
    }
    Ok(())
}

/// Splitting lemma at jet level: remove every term involving a Morse
/// variable other than the nondegenerate quadratic form, degree by degree.
pub fn split_off_quadratic(reduced: &JetMap) -> Result<StandardPositionResult> {
    check_standard(reduced)?;
    let nv = reduced.source_dim();
    let (n, order) = (nv - 2, reduced.order());
    let (x, y) = (n, n + 1);
    let kern = kernel_vars(n);
    let hessian = restricted_hessian(reduced.component(1), &kern);
    let nullity = kern.len() - hessian.rank();
    if nullity >= 2 {
        return Err(Error::HessianNullity(nullity));
    }
    let var = |i: usize| TruncPoly::var(nv, order, i);
    let mut f2 = reduced.component(1).clone();
    // old coordinates as functions of the new ones
    let mut sub_total = JetMap::identity(nv, order);
    let mut apply = |f2: &mut TruncPoly, sub: JetMap| -> Result<()> {
        *f2 = substitute(std::slice::from_ref(f2), sub.components())?.remove(0);
        sub_total = jet_compose(&sub_total, &sub)?;
        Ok(())
    };

    let morse: Vec<usize> = if nullity == 1 {
        let v = hessian.nullspace().remove(0);
        let j = (0..kern.len()).rev().find(|&p| !v[p].is_zero()).expect("nonzero");
        let others: Vec<usize> = (0..kern.len()).filter(|&p| p != j).collect();
        let mut comps: Vec<TruncPoly> = (0..nv).map(var).collect();
        for p in 0..kern.len() {
            let mut poly = var(y).scale(&v[p]);
            if let Some(q) = others.iter().position(|&o| o == p) {
                poly = &poly + &var(kern[q]);
            }
            comps[kern[p]] = poly;
        }
        if comps.iter().enumerate().any(|(i, c)| c != &var(i)) {
            apply(&mut f2, JetMap::new(comps)?)?;
        }
        (0..n).collect()
    } else {
        kern.clone()
    };

    if !morse.is_empty() {
        let hinv = restricted_hessian(&f2, &morse)
            .inverse()
            .ok_or(Error::DegenerateForm)?;
        for d in 2..=order {
            let mut hs: Vec<TruncPoly> = vec![TruncPoly::zero(nv, order); morse.len()];
            let mut any = false;
            for (m, c) in f2.terms() {
                if m.degree() != d {
                    continue;
                }
                let Some(first) = morse.iter().position(|&v| m.exp(v) > 0) else {
                    continue;
                };
                if d == 2 && morse.iter().map(|&v| m.exp(v)).sum::<u32>() == 2 {
                    continue;
                }
                hs[first].add_term(m.div_var(morse[first]).expect("divides"), c.clone());
                any = true;
            }
            if !any {
                continue;
            }
            let mut comps: Vec<TruncPoly> = (0..nv).map(var).collect();
            for (i, &w) in morse.iter().enumerate() {
                let mut delta = TruncPoly::zero(nv, order);
                for (j, h) in hs.iter().enumerate() {
                    if !hinv[(i, j)].is_zero() {
                        delta = &delta - &h.scale(&hinv[(i, j)]);
                    }
                }
                comps[w] = &comps[w] + &delta;
            }
            apply(&mut f2, JetMap::new(comps)?)?;
        }
    }

    let right = DiffeoJet::new(sub_total)?.invert()?;
    let (left, residual, quad) = if nullity == 0 {
        let g = f2.filter_terms(|m| !m.involves_any(&morse));
        f2 = &f2 - &g;
        let mut map = vec![1usize; nv];
        map[x] = 0;
        let shear = JetMap::new(vec![
            TruncPoly::var(2, order, 0),
            &TruncPoly::var(2, order, 1) - &g.embed(2, &map),
        ])?;
        let quad = restricted_hessian(&f2, &morse);
        (DiffeoJet::new(shear)?, None, quad)
    } else {
        let quad = restricted_hessian(&f2, &morse);
        let rest = f2.filter_terms(|m| !m.involves_any(&morse));
        let mut map = vec![0usize; nv];
        map[y] = 1;
        let residual = JetMap::new(vec![TruncPoly::var(2, order, 0), rest.embed(2, &map)])?;
        (DiffeoJet::identity(2, order), Some(residual), quad)
    };
    Ok(StandardPositionResult {
        reduced: JetMap::new(vec![var(x), f2])?,
        left,
        right,
        residual,
        quad_form: Some(quad),
        restricted_hessian: hessian,
        hessian_nullity: nullity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetalg::jet_invert;

    fn witness_holds(f: &JetMap, sp: &StandardPositionResult) -> bool {
        let inner = jet_invert(&sp.right).unwrap();
        let lhs = jet_compose(sp.left.jet(), &jet_compose(f, inner.jet()).unwrap()).unwrap();
        lhs == sp.reduced
    }

    fn jet(nv: usize, order: u32, c0: &[(&[u32], i64)], c1: &[(&[u32], i64)]) -> JetMap {
        JetMap::new(vec![
            TruncPoly::from_int_terms(nv, order, c0),
            TruncPoly::from_int_terms(nv, order, c1),
        ])
        .unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_of_linear_part(&jet(2, 4, &[(&[1, 0], 1)], &[(&[0, 2], 1)])).unwrap(), 1);
        assert_eq!(rank_of_linear_part(&jet(2, 4, &[(&[1, 0], 1)], &[(&[0, 1], 1)])).unwrap(), 2);
        assert_eq!(
            rank_of_linear_part(&jet(2, 4, &[(&[2, 0], 1), (&[0, 2], 1)], &[(&[1, 1], 1)])).unwrap(),
            0
        );
    }

    #[test]
    fn already_reduced_fold() {
        let f = jet(3, 4, &[(&[0, 1, 0], 1)], &[(&[0, 0, 2], 1), (&[2, 0, 0], 1)]);
        let sp = to_standard_position(&f).unwrap();
        assert_eq!(sp.hessian_nullity, 0);
        assert_eq!(sp.reduced, f);
        assert!(witness_holds(&f, &sp));
    }

    #[test]
    fn swapped_cusp_is_reduced() {
        // (x, y^3 + xy) with the target axes swapped, then also the source axes
        let f = jet(2, 4, &[(&[0, 3], 1), (&[1, 1], 1)], &[(&[1, 0], 1)]);
        let g = jet(2, 4, &[(&[3, 0], 1), (&[1, 1], 1)], &[(&[0, 1], 1)]);
        for h in [f, g] {
            let sp = to_standard_position(&h).unwrap();
            assert_eq!(sp.hessian_nullity, 1);
            assert!(witness_holds(&h, &sp));
            let planar = super::super::classify_planar(sp.residual.as_ref().unwrap()).unwrap();
            assert_eq!(planar.tag, super::super::Tag::Cusp);
        }
    }

    #[test]
    fn cross_term_with_null_direction_is_removed() {
        // (x, y^3 + x^2 y + z1^2 + z1 y^3)
        let f = jet(
            3,
            4,
            &[(&[0, 1, 0], 1)],
            &[(&[0, 0, 3], 1), (&[0, 2, 1], 1), (&[2, 0, 0], 1), (&[1, 0, 3], 1)],
        );
        let sp = to_standard_position(&f).unwrap();
        assert_eq!(sp.hessian_nullity, 1);
        assert!(witness_holds(&f, &sp));
        assert_eq!(
            sp.residual.unwrap(),
            jet(2, 4, &[(&[1, 0], 1)], &[(&[0, 3], 1), (&[2, 1], 1)])
        );
        assert_eq!(sp.quad_form.unwrap(), Matrix::from_ints(&[&[2]]));
    }

    #[test]
    fn completing_the_square() {
        // (x, z1^2 + z1 x^2 + y^3 + xy)
        let f = jet(
            3,
            4,
            &[(&[0, 1, 0], 1)],
            &[(&[2, 0, 0], 1), (&[1, 2, 0], 1), (&[0, 0, 3], 1), (&[0, 1, 1], 1)],
        );
        let sp = split_off_quadratic(&f).unwrap();
        assert!(witness_holds(&f, &sp));
        let mut expected = TruncPoly::from_int_terms(2, 4, &[(&[0, 3], 1), (&[1, 1], 1)]);
        expected.add_term(Monomial::new(&[4, 0]), scalar::rat(-1, 4));
        assert_eq!(sp.residual.unwrap().component(1), &expected);
        // z1 -> z1 - x^2/2 in the source change
        let inv = jet_invert(&sp.right).unwrap();
        let mut z = TruncPoly::var(3, 4, 0);
        z.add_term(Monomial::new(&[0, 2, 0]), scalar::rat(-1, 2));
        assert_eq!(inv.jet().component(0), &z);
    }

    #[test]
    fn antidiagonal_form() {
        // (x, z1 z2 + y^3 + x^2 y)
        let f = jet(
            4,
            4,
            &[(&[0, 0, 1, 0], 1)],
            &[(&[1, 1, 0, 0], 1), (&[0, 0, 0, 3], 1), (&[0, 0, 2, 1], 1)],
        );
        let sp = split_off_quadratic(&f).unwrap();
        assert_eq!(sp.reduced, f);
        assert_eq!(crate::jetalg::linalg::inertia(sp.quad_form.as_ref().unwrap()).signature(), 0);
    }

    #[test]
    fn large_nullity_is_reported() {
        let f = jet(3, 4, &[(&[0, 1, 0], 1)], &[(&[0, 0, 3], 1), (&[3, 0, 0], 1)]);
        let sp = to_standard_position(&f).unwrap();
        assert_eq!(sp.hessian_nullity, 2);
        assert!(sp.quad_form.is_none());
        assert_eq!(split_off_quadratic(&f).unwrap_err(), Error::HessianNullity(2));
    }

    #[test]
    fn directions_are_canonical() {
        assert_eq!(
            Direction::new(&scalar::rat(-1, 2), &scalar::int(3)).unwrap(),
            Direction::from_ints(1, -6).unwrap()
        );
        assert_eq!(Direction::from_ints(0, -5).unwrap().to_string(), "(0:1)");
        assert!(Direction::from_ints(0, 0).is_none());
    }
}
