mod common;

use common::*;
use jetclass::jetalg::{scalar, JetMap, Matrix, Monomial, Scalar, TruncPoly};
use jetclass::tangent::{
    inflate, is_universal_unfolding, membership, tangent_codim, tangent_codim_over,
    tangent_generators, TruncatedGermSpace, UnfoldingSpec,
};
use proptest::prelude::*;

const XY: [&str; 2] = ["x", "y"];

fn v(text: &str, d: u32) -> Vec<TruncPoly> {
    vector(text, &XY, d)
}

/// Codimension of `Jf + τf` from a dense generator matrix: every monomial
/// multiple of every partial, every target monomial composed with `f` in
/// every slot.
fn codim_oracle(f: &JetMap, d: u32) -> usize {
    let (s, t) = (f.source_dim(), f.target_dim());
    let f = f.with_order(d + 1);
    let basis = Monomial::all_up_to(s, 0, d);
    let col = |m: &Monomial, k: usize| basis.iter().position(|b| b == m).unwrap() * t + k;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut push = |vec: Vec<TruncPoly>| {
        let mut row = vec![scalar::zero(); basis.len() * t];
        for (k, p) in vec.iter().enumerate() {
            for (m, c) in p.truncate(d).terms() {
                row[col(m, k)] = c.clone();
            }
        }
        rows.push(row);
    };
    for j in 0..s {
        let partial: Vec<TruncPoly> = f
            .components()
            .iter()
            .map(|c| c.partial_derivative(j).unwrap().truncate(d))
            .collect();
        for m in &basis {
            let mono = TruncPoly::monomial(d, m.clone());
            push(partial.iter().map(|p| (&p.truncate(d) * &mono).truncate(d)).collect());
        }
    }
    let fd = f.with_order(d);
    for mu in Monomial::all_up_to(t, 0, d) {
        let mut value = TruncPoly::constant(s, d, scalar::one());
        for (k, e) in mu.exps().enumerate() {
            value = &value * &fd.component(k).pow(e);
        }
        for k in 0..t {
            let mut vec = vec![TruncPoly::zero(s, d); t];
            vec[k] = value.clone();
            push(vec);
        }
    }
    basis.len() * t - Matrix::from_rows(rows).rank()
}

#[test]
fn codimensions_of_planar_normal_forms() {
    let table = [
        ("(x, y^2)", 0),
        ("(x, y^3 + x*y)", 0),
        ("(x, y^4 + x*y)", 1),
        ("(x, y^3 + x^2*y)", 1),
        ("(x, y^3 - x^2*y)", 1),
        ("(x, y^4 + x*y^2 + x*y)", 1),
    ];
    for (text, codim) in table {
        let f = jet(text, 0, 7);
        let r = tangent_codim_over(&f, &[4, 5, 6]).unwrap();
        assert_eq!(r.stabilization, vec![(4, codim), (5, codim), (6, codim)], "{text}");
        assert_eq!(r.codim, codim);
        assert_eq!(codim_oracle(&f, 4), codim, "{text}");
    }
}

#[test]
fn ambient_dimension() {
    for (s, t, d) in [(2, 2, 4), (3, 2, 5), (1, 1, 6), (4, 2, 3)] {
        let space = TruncatedGermSpace::new(s, t, d);
        assert_eq!(space.dim(), t * Monomial::all_up_to(s, 0, d).len());
    }
}

#[test]
fn lips_identities() {
    let d = 6;
    let f = jet("(x, y^3 + x^2*y)", 0, d + 1);
    let (jf, _) = tangent_generators(&f, 4).unwrap();
    assert!(jf.contains(&v("(1, 2*x*y)", 4)));
    assert!(jf.contains(&v("(0, 3*y^2 + x^2)", 4)));

    let lhs = v("(0, 2*x*y)", d);
    let rhs = &v("(1, 2*x*y)", d)[..];
    assert_eq!(lhs, sub(rhs, &v("(1, 0)", d)));
    assert!(membership(&v("(0, x*y)", d), &f, d).unwrap());

    let lhs = v("(0, 9*y^4 + 9*x^2*y^2)", d);
    let rhs = add(
        &add(&v("(0, 3*y^2*(3*y^2 + x^2))", d), &v("(0, 2*x^2*(3*y^2 + x^2))", d)),
        &v("(0, -2*x^4)", d),
    );
    assert_eq!(lhs, rhs);
    assert!(membership(&v("(0, y^4 + x^2*y^2)", d), &f, d).unwrap());
    assert!(!membership(&v("(0, y)", d), &f, d).unwrap());
    assert!(membership(&v("(1, 0)", d), &f, d).unwrap());
}

#[test]
fn beak_misses_the_first_derivative_direction() {
    let d = 5;
    let f = jet("(x, y^3 - x^2*y)", 0, d + 1);
    assert!(!membership(&v("(0, y)", d), &f, d).unwrap());
    assert!(membership(&v("(0, y^2)", d), &f, d).unwrap());
    assert!(membership(&v("(0, x*y)", d), &f, d).unwrap());
}

#[test]
fn swallowtail_identities() {
    let d = 6;
    let f = jet("(x, y^4 + x*y)", 0, d + 1);
    let lhs = v("(0, 3*x*y^2)", d);
    let rhs = add(
        &add(&v("(4*x*y, 4*x*y^2)", d), &v("(-4*y^4 - 4*x*y, 0)", d)),
        &add(&v("(4*y^4, 4*y^5)", d), &v("(0, -y^2*(4*y^3 + x))", d)),
    );
    assert_eq!(lhs, rhs);
    assert!(membership(&v("(0, x*y^2)", d), &f, d).unwrap());

    let lhs = v("(0, 16*y^6 + 16*x*y^3)", d);
    let rhs = add(
        &add(&v("(0, 3*x*(4*y^3 + x))", d), &v("(0, 4*y^3*(4*y^3 + x))", d)),
        &v("(0, -3*x^2)", d),
    );
    assert_eq!(lhs, rhs);
    assert!(membership(&v("(0, y^6 + x*y^3)", d), &f, d).unwrap());
    assert!(!membership(&v("(0, y^2)", d), &f, d).unwrap());
}

fn add(a: &[TruncPoly], b: &[TruncPoly]) -> Vec<TruncPoly> {
    a.iter().zip(b).map(|(p, q)| p + q).collect()
}

fn sub(a: &[TruncPoly], b: &[TruncPoly]) -> Vec<TruncPoly> {
    a.iter().zip(b).map(|(p, q)| p - q).collect()
}

#[test]
fn inflation_preserves_codimension() {
    let forms = [
        "(x, y^2)",
        "(x, y^3 + x*y)",
        "(x, y^4 + x*y)",
        "(x, y^3 + x^2*y)",
        "(x, y^3 - x^2*y)",
    ];
    for text in forms {
        let f = jet(text, 0, 6);
        for d in [4, 5] {
            let base = tangent_codim(&f, d).unwrap().codim;
            for q in [vec![1], vec![-1], vec![1, 1], vec![1, -1], vec![-1, -1]] {
                let q: Vec<Scalar> = q.into_iter().map(scalar::int).collect();
                let g = inflate(&f, &q).unwrap();
                assert_eq!(tangent_codim(&g, d).unwrap().codim, base, "{text} q={q:?} d={d}");
            }
        }
    }
}

fn unfolding(base: &str, base_vars: &[&str], params: &[&str], family: &str) -> UnfoldingSpec {
    let f = JetMap::new(vector(base, base_vars, 6)).unwrap();
    let all: Vec<&str> = params.iter().chain(base_vars).copied().collect();
    UnfoldingSpec::from_family(f, params.len(), vector(family, &all, 6)).unwrap()
}

#[test]
fn universality() {
    let cases = [
        (unfolding("y^3", &["y"], &["u"], "y^3 + u*y"), 0),
        (unfolding("y^4", &["y"], &["u", "v"], "y^4 - u*y^2 + v*y"), 0),
        (unfolding("(x, y^3 + x^2*y)", &XY, &["u"], "(x, y^3 + x^2*y + u*y)"), 0),
        (unfolding("(x, y^4 + x*y)", &XY, &["b"], "(x, y^4 + b*y^2 + x*y)"), 0),
        (unfolding("y^3", &["y"], &["u"], "y^3"), 1),
        (unfolding("(x, y^4 + x*y)", &XY, &["b"], "(x, y^4 + x*y + b*x)"), 1),
    ];
    for (u, deficiency) in cases {
        let r = is_universal_unfolding(&u, 5).unwrap();
        assert_eq!(r.deficiency, deficiency, "{:?}", u.total());
        assert_eq!(r.universal, deficiency == 0);
    }
}

#[test]
fn trivial_unfolding_deficiency_matches_codim() {
    let f = JetMap::new(vector("y^4", &["y"], 6)).unwrap();
    let codim = tangent_codim(&f, 5).unwrap().codim;
    let u = unfolding("y^4", &["y"], &["u"], "y^4");
    assert_eq!(is_universal_unfolding(&u, 5).unwrap().deficiency, codim);
}

fn planar_jet() -> impl Strategy<Value = JetMap> {
    (poly(2, 5, 1, 3), poly(2, 5, 1, 3)).prop_map(|(a, b)| JetMap::new(vec![a, b]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn target_module_closure(f in planar_jet(), e in (0u32..=2, 0u32..=2), base in 0usize..6) {
        let d = 4;
        let (_, tau) = tangent_generators(&f, d).unwrap();
        let mu = &f.with_order(d).component(0).pow(e.0) * &f.with_order(d).component(1).pow(e.1);
        let g = &tau[base % tau.len()];
        let prod: Vec<TruncPoly> = g.iter().map(|p| (p * &mu).truncate(d)).collect();
        prop_assert!(membership(&prod, &f, d).unwrap());
    }

    #[test]
    fn codim_matches_dense_oracle(f in planar_jet()) {
        prop_assert_eq!(tangent_codim(&f, 4).unwrap().codim, codim_oracle(&f, 4));
    }
}
