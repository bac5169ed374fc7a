use super::planar::planar_coefficients;
use super::standard::{reduce, target_direction, to_standard_position, Direction};
use super::{classify, Tag};
use crate::error::{Error, Result};
use crate::jetalg::scalar::{self, Scalar};
use crate::jetalg::series::{implicit_series_solve, restrict_to_graph};
use crate::jetalg::{jet_invert, substitute, DiffeoJet, JetMap, TruncPoly};
use num_traits::Zero;
use serde::Serialize;

/// Fold singular curve and its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldCurveData {
    /// Critical curve `y = s(x)` of a planar jet in standard position.
    pub source_graph: Option<TruncPoly>,
    /// Image curve as a graph over the first axis once `direction` has been
    /// moved onto that axis.
    pub target_graph: TruncPoly,
    pub direction: Direction,
}

/// Critical curve and image of a planar fold `(x, f2)` in standard position.
pub fn fold_curve(f: &JetMap) -> Result<FoldCurveData> {
    let coeffs = planar_coefficients(f)?;
    if !coeffs.a.is_zero() {
        return Err(Error::NotStandardPosition(
            "second component has a linear term".into(),
        ));
    }
    if coeffs.b2.is_zero() {
        return Err(Error::WrongClass {
            expected: "fold".into(),
            got: "residual with vanishing y^2 coefficient".into(),
        });
    }
    let f2 = f.component(1);
    let s = implicit_series_solve(&f2.partial_derivative(1)?, 1)?;
    // f2 is stationary in y along the critical curve, so the error in the
    // top coefficient of s does not reach the image below degree 2z.
    let gamma = restrict_to_graph(f2, &s, 1)?.assume_exact();
    Ok(FoldCurveData {
        source_graph: Some(s.truncate(f.order() - 1)),
        target_graph: gamma,
        direction: Direction::from_ints(1, 0).expect("nonzero"),
    })
}

/// Image of the fold curve of a jet of any source dimension, as a graph
/// over the branch's direction.
pub fn fold_target_curve(f: &JetMap) -> Result<FoldCurveData> {
    let sp = to_standard_position(f)?;
    if sp.hessian_nullity != 0 {
        return Err(Error::WrongClass {
            expected: "fold".into(),
            got: format!("restricted Hessian nullity {}", sp.hessian_nullity),
        });
    }
    let order = f.order();
    let direction = target_direction(f).expect("rank one");
    // in split coordinates the fold image is the first axis
    let left_inv = jet_invert(&sp.left)?;
    let t = TruncPoly::var(1, order, 0);
    let curve = substitute(left_inv.jet().components(), &[t.clone(), TruncPoly::zero(1, order)])?;
    let r = direction.aligning_matrix();
    let rot = |i: usize| &curve[0].scale(&r[(i, 0)]) + &curve[1].scale(&r[(i, 1)]);
    let (alpha, beta) = (rot(0), rot(1));
    let alpha_inv = jet_invert(&DiffeoJet::new(JetMap::new(vec![alpha])?)?)?;
    let gamma = substitute(&[beta], alpha_inv.jet().components())?.remove(0);
    Ok(FoldCurveData {
        source_graph: None,
        target_graph: gamma,
        direction,
    })
}

/// `a + b √d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: Scalar,
    pub b: Scalar,
    pub d: Scalar,
}

impl QuadSurd {
    fn rational(a: Scalar, d: &Scalar) -> Self {
        QuadSurd {
            a,
            b: Scalar::zero(),
            d: d.clone(),
        }
    }

    fn add(&self, o: &QuadSurd) -> QuadSurd {
        QuadSurd {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            d: self.d.clone(),
        }
    }

    fn mul(&self, o: &QuadSurd) -> QuadSurd {
        QuadSurd {
            a: &self.a * &o.a + &self.b * &o.b * &self.d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        }
    }

    fn scale(&self, c: &Scalar) -> QuadSurd {
        QuadSurd {
            a: &self.a * c,
            b: &self.b * c,
            d: self.d.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        if self.b.is_zero() {
            return scalar::to_text(&self.a);
        }
        format!(
            "{} + {}*sqrt({})",
            scalar::to_text(&self.a),
            scalar::to_text(&self.b),
            scalar::to_text(&self.d)
        )
    }

    pub fn to_f64(&self) -> f64 {
        scalar::to_f64(&self.a) + scalar::to_f64(&self.b) * scalar::to_f64(&self.d).sqrt()
    }
}

impl Serialize for QuadSurd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

/// One branch of the beak-to-beak critical set: the source line `y = m x`
/// and the leading image term `(t, k t^3)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurdBranch {
    pub slope: QuadSurd,
    pub image_cubic: QuadSurd,
}

/// Image of the singular set, in the target coordinates where the jet reads
/// `(x, f2(x, y))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discriminant {
    /// Regular germ: no singular set.
    Empty,
    /// Parametrized curve `t -> (x(t), y(t))`.
    Curve { x: TruncPoly, y: TruncPoly },
    /// The singular set maps to the origin only.
    Point,
    /// Two transverse critical branches (beak-to-beak).
    Branches(Vec<SurdBranch>),
}

impl Discriminant {
    /// Rational sample points `(t, x, y)` with `t` evenly spaced in
    /// `[-1/4, 1/4]`.
    pub fn samples(&self, count: usize) -> Vec<[Scalar; 3]> {
        match self {
            Discriminant::Curve { x, y } => (0..count)
                .map(|i| {
                    let t = if count == 1 {
                        Scalar::zero()
                    } else {
                        scalar::rat(2 * i as i64 - (count as i64 - 1), 4 * (count as i64 - 1))
                    };
                    let xv = x.eval(std::slice::from_ref(&t));
                    let yv = y.eval(std::slice::from_ref(&t));
                    [t, xv, yv]
                })
                .collect(),
            Discriminant::Point => vec![[Scalar::zero(), Scalar::zero(), Scalar::zero()]],
            Discriminant::Empty | Discriminant::Branches(_) => Vec::new(),
        }
    }

    pub fn to_csv(&self, count: usize) -> String {
        let mut out = String::from("t,x,y\n");
        for [t, x, y] in self.samples(count) {
            out.push_str(&format!(
                "{},{},{}\n",
                scalar::to_text(&t),
                scalar::to_text(&x),
                scalar::to_text(&y)
            ));
        }
        out
    }
}

/// Singular-set image of a planar jet.
pub fn discriminant_report(f: &JetMap) -> Result<Discriminant> {
    if f.source_dim() != 2 {
        return Err(Error::DimensionMismatch(
            "discriminant reports need a planar source".into(),
        ));
    }
    let class = classify(f)?;
    if class.tag == Tag::Regular {
        return Ok(Discriminant::Empty);
    }
    if class.tag == Tag::Unclassified {
        return Err(Error::WrongClass {
            expected: "a classified jet".into(),
            got: class.to_string(),
        });
    }
    let (reduced, _, _) = reduce(f)?;
    let order = f.order();
    let f2 = reduced.component(1);
    match class.tag {
        Tag::Fold => {
            let fc = fold_curve(&reduced)?;
            Ok(Discriminant::Curve {
                x: TruncPoly::var(1, order, 0),
                y: fc.target_graph,
            })
        }
        Tag::Cusp | Tag::Swallowtail => {
            let s = implicit_series_solve(&f2.partial_derivative(1)?, 0)?;
            let y = restrict_to_graph(f2, &s, 0)?.assume_exact();
            Ok(Discriminant::Curve {
                x: s.truncate(order - 1),
                y,
            })
        }
        Tag::Lips => Ok(Discriminant::Point),
        Tag::BeakToBeak => {
            let p = planar_coefficients(&reduced)?;
            let e = f2.coeff_of(&[3, 0]);
            let d = -p.q_form.clone();
            let inv = (scalar::int(3) * &p.b3).recip();
            let branches = [1, -1]
                .into_iter()
                .map(|sgn| {
                    let m = QuadSurd {
                        a: -(&p.d1 * &inv),
                        b: &inv * scalar::int(sgn),
                        d: d.clone(),
                    };
                    let m2 = m.mul(&m);
                    let m3 = m2.mul(&m);
                    let k = m3
                        .scale(&p.b3)
                        .add(&m2.scale(&p.d1))
                        .add(&m.scale(&p.d2))
                        .add(&QuadSurd::rational(e.clone(), &d));
                    SurdBranch {
                        slope: m,
                        image_cubic: k,
                    }
                })
                .collect();
            Ok(Discriminant::Branches(branches))
        }
        Tag::Regular | Tag::Unclassified => unreachable!(),
    }
}
