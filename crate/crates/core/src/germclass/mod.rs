//! Classification of jets `(R^{n+2}, 0) -> (R^2, 0)` into the regular, fold,
//! cusp, swallowtail, lips and beak-to-beak types.
//!
//! Source variables are ordered `z1, ..., zn, x, y`.

mod curves;
mod degree;
mod planar;
mod standard;

pub use curves::{
    discriminant_report, fold_curve, fold_target_curve, Discriminant, FoldCurveData, SurdBranch,
    QuadSurd,
};
pub use degree::{local_degree, LocalDegree};
pub use planar::{classify_planar, planar_coefficients, PlanarCoefficients};
pub use standard::{
    rank_of_linear_part, restricted_hessian, split_off_quadratic, target_direction,
    to_standard_position, Direction, StandardPositionResult,
};

use crate::error::{Error, Result};
use crate::jetalg::linalg::inertia;
use crate::jetalg::{JetMap, Monomial, TruncPoly};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Tag {
    Regular,
    Fold,
    Cusp,
    Swallowtail,
    Lips,
    BeakToBeak,
    Unclassified,
}

impl Tag {
    pub const ALL: [Tag; 7] = [
        Tag::Regular,
        Tag::Fold,
        Tag::Cusp,
        Tag::Swallowtail,
        Tag::Lips,
        Tag::BeakToBeak,
        Tag::Unclassified,
    ];

    /// The five rank-one types.
    pub const SINGULAR: [Tag; 5] = [Tag::Fold, Tag::Cusp, Tag::Swallowtail, Tag::Lips, Tag::BeakToBeak];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Regular => "regular",
            Tag::Fold => "fold",
            Tag::Cusp => "cusp",
            Tag::Swallowtail => "swallowtail",
            Tag::Lips => "lips",
            Tag::BeakToBeak => "beak-to-beak",
            Tag::Unclassified => "unclassified",
        }
    }

    pub fn from_name(s: &str) -> Option<Tag> {
        let s = s.to_ascii_lowercase().replace(['_', ' '], "-");
        Tag::ALL.into_iter().find(|t| {
            t.name() == s || (s == "beak" && *t == Tag::BeakToBeak) || (s == "beaktobeak" && *t == Tag::BeakToBeak)
        })
    }

    pub fn is_singular(self) -> bool {
        !matches!(self, Tag::Regular | Tag::Unclassified)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum UnclassifiedReason {
    /// The linear part vanishes.
    RankZero,
    /// The restricted Hessian has a null space of dimension two or more.
    HessianNullity,
    /// Every row of the coefficient table fails.
    OutsideTable,
    /// `3 b3 d2 - d1^2` is exactly zero.
    QFormZero,
}

impl UnclassifiedReason {
    pub fn name(self) -> &'static str {
        match self {
            UnclassifiedReason::RankZero => "rank-0 linear part",
            UnclassifiedReason::HessianNullity => "restricted Hessian nullity >= 2",
            UnclassifiedReason::OutsideTable => "coefficient table conditions fail",
            UnclassifiedReason::QFormZero => "q = 3*b3*d2 - d1^2 is zero",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GermClass {
    pub tag: Tag,
    pub abs_signature: Option<usize>,
    pub unclassified_reason: Option<UnclassifiedReason>,
}

impl GermClass {
    pub fn regular() -> Self {
        GermClass {
            tag: Tag::Regular,
            abs_signature: None,
            unclassified_reason: None,
        }
    }

    pub fn singular(tag: Tag, abs_signature: usize) -> Self {
        GermClass {
            tag,
            abs_signature: Some(abs_signature),
            unclassified_reason: None,
        }
    }

    pub fn unclassified(reason: UnclassifiedReason) -> Self {
        GermClass {
            tag: Tag::Unclassified,
            abs_signature: None,
            unclassified_reason: Some(reason),
        }
    }
}

impl fmt::Display for GermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if let Some(s) = self.abs_signature {
            write!(f, " |signature| {s}")?;
        }
        if let Some(r) = self.unclassified_reason {
            write!(f, " ({})", r.name())?;
        }
        Ok(())
    }
}

fn check_planar_target(f: &JetMap) -> Result<()> {
    if f.target_dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "target dimension must be 2, got {}",
            f.target_dim()
        )));
    }
    if f.source_dim() < 2 {
        return Err(Error::DimensionMismatch(format!(
            "source dimension must be at least 2, got {}",
            f.source_dim()
        )));
    }
    Ok(())
}

/// Full classification pipeline.
pub fn classify(f: &JetMap) -> Result<GermClass> {
    check_planar_target(f)?;
    if f.order() < 4 {
        return Err(Error::OrderTooSmall { min: 4, got: f.order() });
    }
    match rank_of_linear_part(f)? {
        2 => return Ok(GermClass::regular()),
        0 => return Ok(GermClass::unclassified(UnclassifiedReason::RankZero)),
        _ => {}
    }
    let (reduced, left0, phi) = standard::reduce(f)?;
    let n = f.source_dim() - 2;
    let hessian = restricted_hessian(reduced.component(1), &standard::kernel_vars(n));
    if hessian.rank() == n + 1 {
        // splitting leaves the quadratic part in the Morse variables alone
        let sig = inertia(&hessian).signature().unsigned_abs() as usize;
        return Ok(GermClass::singular(Tag::Fold, sig));
    }
    let sp = standard::finish_standard_position(reduced, left0, phi)?;
    let Some(q) = &sp.quad_form else {
        return Ok(GermClass::unclassified(UnclassifiedReason::HessianNullity));
    };
    let sig = inertia(q).signature().unsigned_abs() as usize;
    match &sp.residual {
        None => Ok(GermClass::singular(Tag::Fold, sig)),
        Some(res) => {
            let planar = classify_planar(res)?;
            Ok(match planar.tag {
                Tag::Unclassified => planar,
                tag => GermClass::singular(tag, sig),
            })
        }
    }
}

fn check_signature(tag: Tag, n: usize, abs_signature: usize) -> Result<()> {
    let vars = if tag == Tag::Fold { n + 1 } else { n };
    if !tag.is_singular() || abs_signature > vars || (vars - abs_signature) % 2 != 0 {
        return Err(Error::InvalidSignature {
            tag: tag.name().into(),
            n,
            signature: abs_signature,
        });
    }
    Ok(())
}

/// All legal `|signature|` values for a singular type in `n` extra variables.
pub fn legal_signatures(tag: Tag, n: usize) -> Vec<usize> {
    let vars = if tag == Tag::Fold { n + 1 } else { n };
    (0..=vars).filter(|s| (vars - s) % 2 == 0).collect()
}

/// Normal form of a singular type with a diagonal `±1` quadratic form in the
/// `z` variables; positive squares come first.
pub fn normal_form(tag: Tag, n: usize, abs_signature: usize, order: u32) -> Result<JetMap> {
    check_signature(tag, n, abs_signature)?;
    if order < 4 {
        return Err(Error::OrderTooSmall { min: 4, got: order });
    }
    let nv = n + 2;
    let (x, y) = (n, n + 1);
    let mono = |pairs: &[(usize, u32)]| {
        let mut e = vec![0u32; nv];
        for &(v, k) in pairs {
            e[v] += k;
        }
        Monomial::new(&e)
    };
    let mut f2 = TruncPoly::zero(nv, order);
    let mut add = |m: Monomial, c: i64| f2.add_term(m, crate::jetalg::scalar::int(c));
    let q_sig = match tag {
        Tag::Fold => {
            add(mono(&[(y, 2)]), 1);
            abs_signature as i64 - 1
        }
        Tag::Cusp => {
            add(mono(&[(y, 3)]), 1);
            add(mono(&[(x, 1), (y, 1)]), 1);
            abs_signature as i64
        }
        Tag::Swallowtail => {
            add(mono(&[(y, 4)]), 1);
            add(mono(&[(x, 1), (y, 1)]), 1);
            abs_signature as i64
        }
        Tag::Lips | Tag::BeakToBeak => {
            add(mono(&[(y, 3)]), 1);
            add(mono(&[(x, 2), (y, 1)]), if tag == Tag::Lips { 1 } else { -1 });
            abs_signature as i64
        }
        _ => unreachable!("checked above"),
    };
    let positives = ((n as i64 + q_sig) / 2) as usize;
    for i in 0..n {
        add(mono(&[(i, 2)]), if i < positives { 1 } else { -1 });
    }
    JetMap::new(vec![TruncPoly::var(nv, order, x), f2])
}

/// Number of left-right orbits making up the stratum of `tag` in `n` extra
/// variables.
pub fn count_orbits(n: usize, tag: Tag) -> Result<usize> {
    match tag {
        Tag::Regular => Ok(1),
        Tag::Fold => Ok((n + 3) / 2),
        Tag::Cusp | Tag::Swallowtail | Tag::Lips | Tag::BeakToBeak => Ok(n / 2 + 1),
        Tag::Unclassified => Err(Error::Precondition("unclassified jets form no stratum".into())),
    }
}

/// Codimension of the stratum of `tag` in the jet space.
pub fn stratum_codim(tag: Tag, n: usize) -> Result<usize> {
    match tag {
        Tag::Regular => Ok(0),
        Tag::Fold => Ok(n + 1),
        Tag::Cusp => Ok(n + 2),
        Tag::Swallowtail | Tag::Lips | Tag::BeakToBeak => Ok(n + 3),
        Tag::Unclassified => Err(Error::Precondition("unclassified jets form no stratum".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar(order: u32, f2: &[(&[u32], i64)]) -> JetMap {
        JetMap::new(vec![
            TruncPoly::var(2, order, 0),
            TruncPoly::from_int_terms(2, order, f2),
        ])
        .unwrap()
    }

    #[test]
    fn planar_normal_forms() {
        let cases: [(&[(&[u32], i64)], Tag); 5] = [
            (&[(&[0, 2], 1)], Tag::Fold),
            (&[(&[0, 3], 1), (&[1, 1], 1)], Tag::Cusp),
            (&[(&[0, 4], 1), (&[1, 1], 1)], Tag::Swallowtail),
            (&[(&[0, 3], 1), (&[2, 1], 1)], Tag::Lips),
            (&[(&[0, 3], 1), (&[2, 1], -1)], Tag::BeakToBeak),
        ];
        for (terms, tag) in cases {
            assert_eq!(classify(&planar(4, terms)).unwrap().tag, tag);
        }
    }

    #[test]
    fn fold_with_indefinite_form() {
        // (x, y^2 + z1^2 - z2^2)
        let f2 = TruncPoly::from_int_terms(4, 4, &[(&[0, 0, 0, 2], 1), (&[2, 0, 0, 0], 1), (&[0, 2, 0, 0], -1)]);
        let f = JetMap::new(vec![TruncPoly::var(4, 4, 2), f2]).unwrap();
        assert_eq!(classify(&f).unwrap(), GermClass::singular(Tag::Fold, 1));
    }

    #[test]
    fn beak_with_one_extra_variable() {
        let f2 = TruncPoly::from_int_terms(3, 4, &[(&[0, 0, 3], 1), (&[0, 2, 1], -1), (&[2, 0, 0], 1)]);
        let f = JetMap::new(vec![TruncPoly::var(3, 4, 1), f2]).unwrap();
        assert_eq!(classify(&f).unwrap(), GermClass::singular(Tag::BeakToBeak, 1));
    }

    #[test]
    fn regular_and_rank_zero() {
        let f = JetMap::new(vec![
            TruncPoly::from_int_terms(2, 4, &[(&[1, 0], 1), (&[0, 1], 1)]),
            TruncPoly::from_int_terms(2, 4, &[(&[1, 0], 1), (&[0, 1], -1)]),
        ])
        .unwrap();
        assert_eq!(classify(&f).unwrap(), GermClass::regular());
        let g = JetMap::new(vec![
            TruncPoly::from_int_terms(2, 4, &[(&[2, 0], 1), (&[0, 2], 1)]),
            TruncPoly::from_int_terms(2, 4, &[(&[1, 1], 1)]),
        ])
        .unwrap();
        assert_eq!(
            classify(&g).unwrap(),
            GermClass::unclassified(UnclassifiedReason::RankZero)
        );
    }

    #[test]
    fn normal_form_examples() {
        let sw = normal_form(Tag::Swallowtail, 0, 0, 4).unwrap();
        assert_eq!(sw, planar(4, &[(&[0, 4], 1), (&[1, 1], 1)]));
        let fold = normal_form(Tag::Fold, 1, 2, 4).unwrap();
        assert_eq!(
            fold.component(1),
            &TruncPoly::from_int_terms(3, 4, &[(&[0, 0, 2], 1), (&[2, 0, 0], 1)])
        );
        let lips = normal_form(Tag::Lips, 2, 0, 4).unwrap();
        assert_eq!(
            lips.component(1),
            &TruncPoly::from_int_terms(
                4,
                4,
                &[(&[0, 0, 0, 3], 1), (&[0, 0, 2, 1], 1), (&[2, 0, 0, 0], 1), (&[0, 2, 0, 0], -1)]
            )
        );
        assert!(normal_form(Tag::Cusp, 1, 0, 4).is_err());
        assert!(normal_form(Tag::Fold, 1, 1, 4).is_err());
        assert!(normal_form(Tag::Regular, 0, 0, 4).is_err());
    }

    #[test]
    fn orbit_counts_and_codims() {
        assert_eq!(count_orbits(0, Tag::Fold).unwrap(), 1);
        assert_eq!(count_orbits(2, Tag::Fold).unwrap(), 2);
        assert_eq!(count_orbits(5, Tag::Cusp).unwrap(), 3);
        assert_eq!(stratum_codim(Tag::Fold, 0).unwrap(), 1);
        assert_eq!(stratum_codim(Tag::Swallowtail, 0).unwrap(), 3);
        assert_eq!(stratum_codim(Tag::Cusp, 3).unwrap(), 5);
    }

    #[test]
    fn legal_signature_lists() {
        assert_eq!(legal_signatures(Tag::Fold, 2), vec![1, 3]);
        assert_eq!(legal_signatures(Tag::Cusp, 2), vec![0, 2]);
        assert_eq!(legal_signatures(Tag::Lips, 0), vec![0]);
    }
}
