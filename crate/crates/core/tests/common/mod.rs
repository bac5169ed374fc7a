#![allow(dead_code)]

use jetclass::cli::parse::{parse_components, parse_jet, Vars};
use jetclass::germclass::{legal_signatures, normal_form, Tag};
use jetclass::jetalg::{scalar, DiffeoJet, JetMap, Matrix, Monomial, TruncPoly};
use jetclass::multigerm::MultiJet;
use proptest::prelude::*;

/// Jet in `z1..zn, x, y`.
pub fn jet(text: &str, n: usize, order: u32) -> JetMap {
    parse_jet(text, &Vars::standard(n), order).unwrap()
}

pub fn planar(text: &str) -> JetMap {
    jet(text, 0, 4)
}

/// Components over arbitrary variable names, without the origin check.
pub fn vector(text: &str, names: &[&str], order: u32) -> Vec<TruncPoly> {
    parse_components(text, &Vars::new(names.iter().copied()), order).unwrap()
}

/// Dense polynomial whose coefficients follow `Monomial::all_up_to(nvars, lo, order)`.
pub fn poly_from(nvars: usize, order: u32, lo: u32, coeffs: &[i64]) -> TruncPoly {
    let mut p = TruncPoly::zero(nvars, order);
    for (m, &c) in Monomial::all_up_to(nvars, lo, order).into_iter().zip(coeffs) {
        if c != 0 {
            p.add_term(m, scalar::int(c));
        }
    }
    p
}

pub fn monomial_count(nvars: usize, lo: u32, order: u32) -> usize {
    Monomial::all_up_to(nvars, lo, order).len()
}

/// Sparse small integer coefficients, mostly zero.
pub fn sparse_coeff(bound: i64) -> impl Strategy<Value = i64> {
    prop_oneof![3 => Just(0i64), 1 => -bound..=bound]
}

pub fn poly(nvars: usize, order: u32, lo: u32, bound: i64) -> impl Strategy<Value = TruncPoly> {
    prop::collection::vec(sparse_coeff(bound), monomial_count(nvars, lo, order))
        .prop_map(move |c| poly_from(nvars, order, lo, &c))
}

/// Dense coefficients in `[-bound, bound]`.
pub fn dense_poly(nvars: usize, order: u32, lo: u32, bound: i64) -> impl Strategy<Value = TruncPoly> {
    prop::collection::vec(-bound..=bound, monomial_count(nvars, lo, order))
        .prop_map(move |c| poly_from(nvars, order, lo, &c))
}

pub fn jet_map(source: usize, target: usize, order: u32, bound: i64) -> impl Strategy<Value = JetMap> {
    prop::collection::vec(poly(source, order, 1, bound), target)
        .prop_map(|c| JetMap::new(c).unwrap())
}

/// Invertible linear part with entries in `[-bound, bound]` plus sparse
/// higher terms.
pub fn diffeo(dim: usize, order: u32, bound: i64) -> impl Strategy<Value = DiffeoJet> {
    let linear = prop::collection::vec(-bound..=bound, dim * dim);
    let higher = prop::collection::vec(poly(dim, order, 2, bound), dim);
    (linear, higher).prop_filter_map("singular linear part", move |(lin, hi)| {
        let comps: Vec<TruncPoly> = (0..dim)
            .map(|i| {
                let mut p = hi[i].clone();
                for j in 0..dim {
                    if lin[i * dim + j] != 0 {
                        p.add_term(Monomial::var(dim, j), scalar::int(lin[i * dim + j]));
                    }
                }
                p
            })
            .collect();
        DiffeoJet::new(JetMap::new(comps).ok()?).ok()
    })
}

/// Every `(tag, n, |signature|)` with a singular tag and `n <= max_n`.
pub fn normal_form_cases(max_n: usize) -> Vec<(Tag, usize, usize)> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        for tag in Tag::SINGULAR {
            for s in legal_signatures(tag, n) {
                out.push((tag, n, s));
            }
        }
    }
    out
}

pub fn normal_form_case(max_n: usize) -> impl Strategy<Value = (Tag, usize, usize)> {
    prop::sample::select(normal_form_cases(max_n))
}

/// `left ∘ f ∘ right⁻¹`.
pub fn conjugate(f: &JetMap, left: &DiffeoJet, right: &DiffeoJet) -> JetMap {
    let inner = right.invert().unwrap();
    left.jet().compose(&f.compose(inner.jet()).unwrap()).unwrap()
}

pub fn nf(tag: Tag, n: usize, sig: usize) -> JetMap {
    normal_form(tag, n, sig, 4).unwrap()
}

/// Target directions used by random multijets; few enough that branches
/// often share one.
pub const DIRECTIONS: [(i64, i64); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

/// `f` with its target turned so the first axis goes to `(a, b)`.
pub fn turned(f: &JetMap, a: i64, b: i64) -> JetMap {
    let m = Matrix::from_ints(&[&[a, -b], &[b, a]]);
    JetMap::linear(&m, f.order()).compose(f).unwrap()
}

/// Branch kinds drawn by [`branch`]. Folds carry the coefficients of `x^2`
/// and `x^3` in their second component, which fix the contact between folds
/// sharing a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Regular,
    Fold(i64, i64),
    Cusp,
    Swallowtail,
    Lips,
    Beak,
    Unclassified,
}

pub fn kind_tag(k: Kind) -> Tag {
    match k {
        Kind::Regular => Tag::Regular,
        Kind::Fold(..) => Tag::Fold,
        Kind::Cusp => Tag::Cusp,
        Kind::Swallowtail => Tag::Swallowtail,
        Kind::Lips => Tag::Lips,
        Kind::Beak => Tag::BeakToBeak,
        Kind::Unclassified => Tag::Unclassified,
    }
}

/// Branch in `z1..zn, x, y` of the given kind, first target axis turned to
/// `dir`.
pub fn branch(kind: Kind, n: usize, dir: (i64, i64)) -> JetMap {
    let quad: String = (1..=n)
        .map(|i| format!(" {} z{i}^2", if i % 2 == 1 { '+' } else { '-' }))
        .collect();
    let f2 = match kind {
        Kind::Regular => "y".to_string(),
        Kind::Fold(a, b) => format!("y^2 + {a}*x^2 + {b}*x^3"),
        Kind::Cusp => "y^3 + x*y".into(),
        Kind::Swallowtail => "y^4 + x*y".into(),
        Kind::Lips => "y^3 + x^2*y".into(),
        Kind::Beak => "y^3 - x^2*y".into(),
        Kind::Unclassified => "y^3".into(),
    };
    let quad = if kind == Kind::Regular { String::new() } else { quad };
    turned(&jet(&format!("(x, {f2}{quad})"), n, 4), dir.0, dir.1)
}

pub fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![
        2 => Just(Kind::Regular),
        6 => ((-1i64..=1), (-1i64..=1)).prop_map(|(a, b)| Kind::Fold(a, b)),
        1 => Just(Kind::Cusp),
        1 => Just(Kind::Swallowtail),
        1 => Just(Kind::Lips),
        1 => Just(Kind::Beak),
        1 => Just(Kind::Unclassified),
    ]
}

/// Branch kinds and directions with `1 <= r <= max_r` and `n <= 1`.
pub fn multijet_plan(max_r: usize) -> impl Strategy<Value = (usize, Vec<(Kind, (i64, i64))>)> {
    (
        0usize..=1,
        prop::collection::vec((kind(), prop::sample::select(DIRECTIONS.to_vec())), 1..=max_r),
    )
}

pub fn build(n: usize, plan: &[(Kind, (i64, i64))]) -> MultiJet {
    MultiJet::new(plan.iter().map(|&(k, d)| branch(k, n, d)).collect()).unwrap()
}

/// Random multijet, each branch conjugated on the source by its own diffeo.
pub fn multijet(max_r: usize) -> impl Strategy<Value = MultiJet> {
    multijet_plan(max_r).prop_flat_map(|(n, plan)| {
        let r = plan.len();
        prop::collection::vec(diffeo(n + 2, 4, 2), r).prop_map(move |rights| {
            let branches = plan
                .iter()
                .zip(&rights)
                .map(|(&(k, d), right)| {
                    conjugate(&branch(k, n, d), &DiffeoJet::identity(2, 4), right)
                })
                .collect();
            MultiJet::new(branches).unwrap()
        })
    })
}

const WIDE_DIRECTIONS: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)];

/// Admissible by construction: distinct singular directions, at most one
/// non-fold singular branch, and optionally one ordinarily tangent fold pair.
pub fn admissible_multijet(max_r: usize) -> impl Strategy<Value = MultiJet> {
    let special = prop::sample::select(vec![
        None,
        Some(Kind::Cusp),
        Some(Kind::Swallowtail),
        Some(Kind::Lips),
        Some(Kind::Beak),
    ]);
    (
        0usize..=1,
        1..=max_r,
        special,
        any::<bool>(),
        prop::collection::vec(any::<bool>(), max_r),
        Just(WIDE_DIRECTIONS.to_vec()).prop_shuffle(),
    )
        .prop_map(|(n, r, special, kiss, regular, dirs)| {
            let mut plan: Vec<(Kind, (i64, i64))> = Vec::new();
            for i in 0..r {
                let k = if i == 0 {
                    special.unwrap_or(Kind::Fold(0, 0))
                } else if regular[i] {
                    Kind::Regular
                } else {
                    Kind::Fold(0, 0)
                };
                plan.push((k, dirs[i]));
            }
            if kiss && special.is_none() && r >= 2 {
                plan[r - 1] = (Kind::Fold(0, 1), plan[r - 2].1);
                plan[r - 2] = (Kind::Fold(1, 0), plan[r - 2].1);
            }
            build(n, &plan)
        })
}
