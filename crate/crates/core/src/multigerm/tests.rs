use super::*;
use crate::jetalg::{jet_compose, Matrix, TruncPoly};

type Terms<'a> = &'a [(&'a [u32], i64)];

fn jet(c0: Terms, c1: Terms) -> JetMap {
    JetMap::new(vec![
        TruncPoly::from_int_terms(2, 4, c0),
        TruncPoly::from_int_terms(2, 4, c1),
    ])
    .unwrap()
}

const X: Terms = &[(&[1, 0], 1)];

fn fold() -> JetMap {
    jet(X, &[(&[0, 2], 1)])
}

fn cusp() -> JetMap {
    jet(X, &[(&[0, 3], 1), (&[1, 1], 1)])
}

fn swap(f: &JetMap) -> JetMap {
    JetMap::new(vec![f.component(1).clone(), f.component(0).clone()]).unwrap()
}

/// `f` with its target turned so that the first axis goes to `(a, b)`.
fn turned(f: &JetMap, a: i64, b: i64) -> JetMap {
    let m = Matrix::from_ints(&[&[a, -b], &[b, a]]);
    jet_compose(&JetMap::linear(&m, 4), f).unwrap()
}

fn mj(branches: Vec<JetMap>) -> MultiJet {
    MultiJet::new(branches).unwrap()
}

#[test]
fn summaries() {
    let s = branch_summaries(&mj(vec![fold(), swap(&fold()), jet(X, &[(&[0, 1], 1)])])).unwrap();
    assert_eq!(s[0].class.tag, Tag::Fold);
    assert_eq!(s[0].direction, Direction::from_ints(1, 0));
    assert_eq!(s[1].direction, Direction::from_ints(0, 1));
    assert_eq!(s[2].class.tag, Tag::Regular);
    assert_eq!(s[2].direction, None);
}

#[test]
fn tangency_examples() {
    let a = branch_summary(&fold()).unwrap();
    let b = branch_summary(&jet(X, &[(&[0, 2], 1), (&[2, 0], 1)])).unwrap();
    let c = branch_summary(&jet(X, &[(&[0, 2], 1), (&[3, 0], 1)])).unwrap();
    assert_eq!(tangency_order(&a, &b).unwrap(), Tangency::Order(1));
    assert_eq!(tangency_order(&a, &c).unwrap(), Tangency::Order(2));
    assert_eq!(tangency_order(&a, &a).unwrap(), Tangency::Unknown);
    let d = branch_summary(&swap(&fold())).unwrap();
    assert!(tangency_order(&a, &d).is_err());
}

#[test]
fn admissibility_examples() {
    let r = is_admissible(&mj(vec![cusp(), swap(&fold())])).unwrap();
    assert!(r.admissible);
    assert_eq!(
        r.stratum_label,
        "one cusp and one fold, making two distinct directions in target"
    );

    let r = is_admissible(&mj(vec![cusp(), fold()])).unwrap();
    assert!(!r.admissible);
    assert_eq!(r.violated_clause, Some(Clause::Directions));

    let r = is_admissible(&mj(vec![fold(), jet(X, &[(&[0, 2], 1), (&[2, 0], 1)])])).unwrap();
    assert!(r.admissible);
    assert_eq!(r.stratum_label, "two kissing folds");
    assert_eq!(r.tangency_pairs, vec![(0, 1, Tangency::Order(1))]);

    let r = is_admissible(&mj(vec![cusp(), swap(&cusp())])).unwrap();
    assert!(!r.admissible);
    assert_eq!(r.violated_clause, Some(Clause::AtMostOneNonFold));

    let r = is_admissible(&mj(vec![jet(X, &[(&[0, 1], 1)])])).unwrap();
    assert!(r.admissible);
    assert_eq!(r.stratum_label, "one regular branch");
}

#[test]
fn five_branch_census() {
    let sw = jet(X, &[(&[0, 4], 1), (&[1, 1], 1)]);
    let m = mj(vec![
        sw,
        turned(&fold(), 0, 1),
        turned(&fold(), 1, 1),
        turned(&fold(), 1, -1),
        turned(&fold(), 1, 2),
    ]);
    let r = is_admissible(&m).unwrap();
    assert!(r.admissible);
    assert_eq!(
        r.stratum_label,
        "one swallowtail and four folds, making five distinct directions in target"
    );
    let census = two_branch_census(&m).unwrap();
    assert_eq!(census.len(), 2);
    assert_eq!(
        census["one swallowtail and one fold, making two distinct directions in target"],
        4
    );
    assert_eq!(census["two folds, making two distinct directions in target"], 6);
}

#[test]
fn census_with_kissing_pair() {
    let m = mj(vec![fold(), jet(X, &[(&[0, 2], 1), (&[2, 0], 1)]), swap(&fold())]);
    let census = two_branch_census(&m).unwrap();
    assert_eq!(census["two kissing folds"], 1);
    assert_eq!(census["two folds, making two distinct directions in target"], 2);
}

#[test]
fn bad_events_cusp_fold_regular() {
    let m = mj(vec![cusp(), fold(), jet(X, &[(&[0, 1], 1)])]);
    let a = bad_event_analysis(&m).unwrap();
    assert_eq!(a.minimal_bad_events, vec![vec![0, 1]]);
    assert_eq!(a.case_tags, vec![Some(CaseTag::III)]);
    assert_eq!((a.size_s, a.complexity_k), (2, 0));
}

#[test]
fn three_pairwise_kissing_folds() {
    let m = mj(vec![
        fold(),
        jet(X, &[(&[0, 2], 1), (&[2, 0], 1)]),
        jet(X, &[(&[0, 2], 1), (&[2, 0], -1)]),
    ]);
    let a = bad_event_analysis(&m).unwrap();
    assert_eq!(a.minimal_bad_events, vec![vec![0, 1, 2]]);
    assert_eq!(a.case_tags, vec![Some(CaseTag::VI)]);
    assert_eq!((a.size_s, a.complexity_k), (3, 0));
}

#[test]
fn two_disjoint_minimal_events() {
    let m = mj(vec![
        fold(),
        jet(X, &[(&[0, 2], 1), (&[3, 0], 1)]),
        swap(&cusp()),
        swap(&fold()),
    ]);
    let a = bad_event_analysis(&m).unwrap();
    assert_eq!(a.minimal_bad_events, vec![vec![0, 1], vec![2, 3]]);
    assert_eq!(a.case_tags, vec![Some(CaseTag::IV), Some(CaseTag::III)]);
    assert_eq!(a.bad_events, vec![vec![0, 1], vec![2, 3], vec![0, 1, 2, 3]]);
    assert_eq!((a.size_s, a.complexity_k), (4, 1));
}

#[test]
fn two_kissing_pairs_form_a_four_element_minimal_event() {
    let kiss = jet(X, &[(&[0, 2], 1), (&[2, 0], 1)]);
    let m = mj(vec![fold(), kiss.clone(), swap(&fold()), swap(&kiss)]);
    let a = bad_event_analysis(&m).unwrap();
    assert_eq!(a.minimal_bad_events, vec![vec![0, 1, 2, 3]]);
    assert_eq!(a.case_tags, vec![None]);
}

#[test]
fn admissible_has_no_bad_events() {
    let a = bad_event_analysis(&mj(vec![cusp(), swap(&fold())])).unwrap();
    assert!(a.minimal_bad_events.is_empty() && a.bad_events.is_empty());
    assert_eq!((a.size_s, a.complexity_k), (0, 0));
}

#[test]
fn codim_bound_examples() {
    assert_eq!(codim_bounds(3, 1, 1).unwrap().chain_bound, 9);
    let b = codim_bounds(1, 0, 0).unwrap();
    assert_eq!(b.chain_bound, 4);
    assert_eq!(b.minimal_case_bounds[&CaseTag::I], 4);
    let b = codim_bounds(6, 2, 0).unwrap();
    assert_eq!(b.capital_c, 6);
    assert!(b.condition_b && b.condition_c && b.chain_hypothesis);
    assert!(codim_bounds(0, 0, 0).is_err());
}

#[test]
fn too_many_branches() {
    let m = mj(vec![fold(); 17]);
    assert_eq!(bad_event_analysis(&m).unwrap_err(), Error::TooManyBranches(17, 16));
}
