use super::{GermClass, Tag, UnclassifiedReason};
use crate::error::{Error, Result};
use crate::jetalg::scalar::{self, Scalar};
use crate::jetalg::{JetMap, TruncPoly};
use num_traits::Zero;
use serde::Serialize;

/// Coefficients of `f2` read off a planar jet `(x, f2(x, y))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarCoefficients {
    pub a: Scalar,
    pub b2: Scalar,
    pub b3: Scalar,
    pub b4: Scalar,
    pub c: Scalar,
    pub d1: Scalar,
    pub d2: Scalar,
    /// `3 b3 d2 - d1^2`
    pub q_form: Scalar,
}

impl Serialize for PlanarCoefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PlanarCoefficients", 8)?;
        for (k, v) in [
            ("a", &self.a),
            ("b2", &self.b2),
            ("b3", &self.b3),
            ("b4", &self.b4),
            ("c", &self.c),
            ("d1", &self.d1),
            ("d2", &self.d2),
            ("q_form", &self.q_form),
        ] {
            st.serialize_field(k, &scalar::to_text(v))?;
        }
        st.end()
    }
}

fn check_planar_standard(f: &JetMap) -> Result<()> {
    if f.source_dim() != 2 || f.target_dim() != 2 {
        return Err(Error::NotStandardPosition(format!(
            "expected a planar jet, got {} -> {}",
            f.source_dim(),
            f.target_dim()
        )));
    }
    if f.component(0) != &TruncPoly::var(2, f.order(), 0) {
        return Err(Error::NotStandardPosition("first component is not x".into()));
    }
    Ok(())
}

pub fn planar_coefficients(f: &JetMap) -> Result<PlanarCoefficients> {
    check_planar_standard(f)?;
    let f2 = f.component(1);
    let k = |e: [u32; 2]| f2.coeff_of(&e);
    let (b3, d1, d2) = (k([0, 3]), k([1, 2]), k([2, 1]));
    let q_form = scalar::int(3) * &b3 * &d2 - &d1 * &d1;
    Ok(PlanarCoefficients {
        a: k([0, 1]),
        b2: k([0, 2]),
        b3,
        b4: k([0, 4]),
        c: k([1, 1]),
        d1,
        d2,
        q_form,
    })
}

/// Coefficient-table classification of a planar jet in standard position.
/// The returned class carries no signature.
pub fn classify_planar(residual: &JetMap) -> Result<GermClass> {
    let p = planar_coefficients(residual)?;
    if !p.a.is_zero() || !residual.component(1).coeff_of(&[1, 0]).is_zero() {
        return Err(Error::NotStandardPosition(
            "second component has a linear term".into(),
        ));
    }
    if residual.order() < 4 {
        return Err(Error::OrderTooSmall {
            min: 4,
            got: residual.order(),
        });
    }
    let class = |tag| GermClass {
        tag,
        abs_signature: None,
        unclassified_reason: None,
    };
    Ok(if !p.b2.is_zero() {
        class(Tag::Fold)
    } else if !p.b3.is_zero() {
        if !p.c.is_zero() {
            class(Tag::Cusp)
        } else {
            match scalar::sign(&p.q_form) {
                1 => class(Tag::Lips),
                -1 => class(Tag::BeakToBeak),
                _ => GermClass::unclassified(UnclassifiedReason::QFormZero),
            }
        }
    } else if !p.b4.is_zero() && !p.c.is_zero() {
        class(Tag::Swallowtail)
    } else {
        GermClass::unclassified(UnclassifiedReason::OutsideTable)
    })
}
