//! Multijets: admissibility, stratum names, bad events and codimension
//! bounds.

mod label;

pub use label::{admissible_label, inadmissible_label, number_word};

use crate::error::{Error, Result};
use crate::germclass::{
    classify, fold_target_curve, target_direction, Direction, FoldCurveData, GermClass, Tag,
};
use crate::jetalg::{JetMap, Vanishing};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Largest branch count accepted by [`bad_event_analysis`].
pub const MAX_BRANCHES: usize = 16;

/// Ordered family of jets sharing source dimension, target plane and order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiJet {
    branches: Vec<JetMap>,
}

impl MultiJet {
    pub fn new(branches: Vec<JetMap>) -> Result<Self> {
        let first = branches
            .first()
            .ok_or_else(|| Error::Precondition("a multijet needs at least one branch".into()))?;
        for b in &branches {
            if b.target_dim() != 2 {
                return Err(Error::DimensionMismatch("branches must map to the plane".into()));
            }
            if b.source_dim() != first.source_dim() {
                return Err(Error::DimensionMismatch(format!(
                    "branches with source dimensions {} and {}",
                    first.source_dim(),
                    b.source_dim()
                )));
            }
            if b.order() != first.order() {
                return Err(Error::OrderMismatch(first.order(), b.order()));
            }
        }
        if first.order() < 4 {
            return Err(Error::OrderTooSmall {
                min: 4,
                got: first.order(),
            });
        }
        Ok(MultiJet { branches })
    }

    pub fn branches(&self) -> &[JetMap] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.branches[0].order()
    }

    /// Sub-multijet on the given branch indices, in that order.
    pub fn restrict(&self, indices: &[usize]) -> Result<MultiJet> {
        MultiJet::new(indices.iter().map(|&i| self.branches[i].clone()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchSummary {
    pub class: GermClass,
    pub direction: Option<Direction>,
    pub fold_curve: Option<FoldCurveData>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Tangency {
    /// Contact order: the graphs differ by a series of order `k + 1`.
    Order(u32),
    /// The graphs agree through the jet order.
    Unknown,
}

impl fmt::Display for Tangency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tangency::Order(k) => write!(f, "{k}"),
            Tangency::Unknown => f.write_str("unknown"),
        }
    }
}

/// The admissibility condition that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Clause {
    /// Some branch is not of one of the six types.
    SixTypes,
    /// More than one branch is singular and not a fold.
    AtMostOneNonFold,
    /// Singular directions coincide other than in one ordinarily tangent
    /// pair of folds.
    Directions,
}

impl Clause {
    pub fn description(self) -> &'static str {
        match self {
            Clause::SixTypes => "every branch is regular, fold, cusp, swallowtail, lips or beak-to-beak",
            Clause::AtMostOneNonFold => "at most one branch is neither regular nor fold",
            Clause::Directions => {
                "singular directions are distinct, or all singular branches are folds with exactly one shared direction and an ordinary tangency"
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub stratum_label: String,
    pub branch_summaries: Vec<BranchSummary>,
    pub violated_clause: Option<Clause>,
    /// Fold pairs sharing a direction, with their contact order.
    pub tangency_pairs: Vec<(usize, usize, Tangency)>,
}

/// Cases of minimal bad events: one unclassified branch (I); two non-fold
/// singular branches (II); a fold and a non-fold sharing a direction (III);
/// two folds with higher tangency (IV); a kissing pair plus a non-fold in
/// another direction (V); three pairwise kissing folds (VI).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl CaseTag {
    pub const ALL: [CaseTag; 6] = [
        CaseTag::I,
        CaseTag::II,
        CaseTag::III,
        CaseTag::IV,
        CaseTag::V,
        CaseTag::VI,
    ];

    pub fn roman(self) -> &'static str {
        match self {
            CaseTag::I => "i",
            CaseTag::II => "ii",
            CaseTag::III => "iii",
            CaseTag::IV => "iv",
            CaseTag::V => "v",
            CaseTag::VI => "vi",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadEventAnalysis {
    /// Branch index sets, each sorted.
    pub minimal_bad_events: Vec<Vec<usize>>,
    pub bad_events: Vec<Vec<usize>>,
    pub size_s: usize,
    pub complexity_k: usize,
    /// Case of each minimal bad event, `None` when it fits none of them.
    pub case_tags: Vec<Option<CaseTag>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodimBound {
    pub s: usize,
    pub k: usize,
    pub n: usize,
    /// `s n + 2k + 4`
    pub chain_bound: usize,
    pub minimal_case_bounds: BTreeMap<CaseTag, usize>,
    /// `chain_bound + 2(s - 1)`
    pub c_of_sk: usize,
    /// `chain_bound - s n - 2`
    pub capital_c: usize,
    /// `chain_bound >= s n + 4`
    pub condition_b: bool,
    /// `chain_bound - s n - k >= k + 4 > s/3`
    pub condition_c: bool,
    /// `k + 1 >= s/3`, which holds whenever bad events exist
    pub chain_hypothesis: bool,
}

pub fn branch_summary(f: &JetMap) -> Result<BranchSummary> {
    let class = classify(f)?;
    let direction = target_direction(f);
    let fold_curve = if class.tag == Tag::Fold {
        Some(fold_target_curve(f)?)
    } else {
        None
    };
    Ok(BranchSummary {
        class,
        direction,
        fold_curve,
    })
}

pub fn branch_summaries(m: &MultiJet) -> Result<Vec<BranchSummary>> {
    m.branches().iter().map(branch_summary).collect()
}

/// Contact order of the image curves of two folds sharing a direction.
pub fn tangency_order(a: &BranchSummary, b: &BranchSummary) -> Result<Tangency> {
    let (Some(ca), Some(cb)) = (&a.fold_curve, &b.fold_curve) else {
        return Err(Error::Precondition("tangency needs two fold branches".into()));
    };
    if ca.direction != cb.direction {
        return Err(Error::Precondition(format!(
            "fold directions {} and {} differ",
            ca.direction, cb.direction
        )));
    }
    let diff = &ca.target_graph - &cb.target_graph;
    Ok(match diff.order_of_vanishing() {
        Vanishing::Degree(d) => Tangency::Order(d - 1),
        Vanishing::AtLeast(_) => Tangency::Unknown,
    })
}

/// Per-branch data shared by all sub-multijets of one multijet.
struct Analysis {
    summaries: Vec<BranchSummary>,
    tangency: HashMap<(usize, usize), Tangency>,
}

struct Verdict {
    admissible: bool,
    clause: Option<Clause>,
    label: String,
}

impl Analysis {
    fn new(m: &MultiJet) -> Result<Self> {
        let summaries = branch_summaries(m)?;
        let mut tangency = HashMap::new();
        for i in 0..summaries.len() {
            for j in i + 1..summaries.len() {
                let (a, b) = (&summaries[i], &summaries[j]);
                if a.class.tag == Tag::Fold && b.class.tag == Tag::Fold && a.direction == b.direction {
                    tangency.insert((i, j), tangency_order(a, b)?);
                }
            }
        }
        Ok(Analysis { summaries, tangency })
    }

    fn verdict(&self, idx: &[usize]) -> Verdict {
        let tags: Vec<Tag> = idx.iter().map(|&i| self.summaries[i].class.tag).collect();
        let singular: Vec<usize> = idx
            .iter()
            .copied()
            .filter(|&i| self.summaries[i].class.tag.is_singular())
            .collect();
        let mut groups: BTreeMap<&Direction, Vec<usize>> = BTreeMap::new();
        for &i in &singular {
            let d = self.summaries[i].direction.as_ref().expect("singular branches have rank one");
            groups.entry(d).or_default().push(i);
        }
        let fail = |clause| Verdict {
            admissible: false,
            clause: Some(clause),
            label: inadmissible_label(&tags, groups.len()),
        };
        if tags.contains(&Tag::Unclassified) {
            return fail(Clause::SixTypes);
        }
        let non_fold = singular
            .iter()
            .filter(|&&i| self.summaries[i].class.tag != Tag::Fold)
            .count();
        if non_fold > 1 {
            return fail(Clause::AtMostOneNonFold);
        }
        if groups.len() == singular.len() {
            return Verdict {
                admissible: true,
                clause: None,
                label: admissible_label(&tags, false),
            };
        }
        let shared: Vec<&Vec<usize>> = groups.values().filter(|g| g.len() > 1).collect();
        if non_fold == 0 && shared.len() == 1 && shared[0].len() == 2 {
            let (i, j) = (shared[0][0].min(shared[0][1]), shared[0][0].max(shared[0][1]));
            if self.tangency.get(&(i, j)) == Some(&Tangency::Order(1)) {
                return Verdict {
                    admissible: true,
                    clause: None,
                    label: admissible_label(&tags, true),
                };
            }
        }
        fail(Clause::Directions)
    }

    fn tangency_pairs(&self, idx: &[usize]) -> Vec<(usize, usize, Tangency)> {
        let mut out = Vec::new();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a + 1) {
                if let Some(t) = self.tangency.get(&(i.min(j), i.max(j))) {
                    out.push((a, b, *t));
                }
            }
        }
        out
    }

    fn case_tag(&self, idx: &[usize]) -> Option<CaseTag> {
        let tags: Vec<Tag> = idx.iter().map(|&i| self.summaries[i].class.tag).collect();
        let folds = tags.iter().filter(|&&t| t == Tag::Fold).count();
        let dir = |i: usize| self.summaries[i].direction.as_ref();
        match idx.len() {
            1 => (tags[0] == Tag::Unclassified).then_some(CaseTag::I),
            2 => {
                if !tags.iter().all(|t| t.is_singular()) {
                    return None;
                }
                let same = dir(idx[0]) == dir(idx[1]);
                match folds {
                    0 => Some(CaseTag::II),
                    1 if same => Some(CaseTag::III),
                    2 if same => Some(CaseTag::IV),
                    _ => None,
                }
            }
            3 => {
                if !tags.iter().all(|t| t.is_singular()) {
                    return None;
                }
                match folds {
                    2 => Some(CaseTag::V),
                    3 => Some(CaseTag::VI),
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

pub fn is_admissible(m: &MultiJet) -> Result<AdmissibilityReport> {
    let an = Analysis::new(m)?;
    let idx: Vec<usize> = (0..m.len()).collect();
    let v = an.verdict(&idx);
    Ok(AdmissibilityReport {
        admissible: v.admissible,
        stratum_label: v.label,
        tangency_pairs: an.tangency_pairs(&idx),
        branch_summaries: an.summaries,
        violated_clause: v.clause,
    })
}

/// Stratum labels of all two-branch sub-multijets, with multiplicities.
pub fn two_branch_census(m: &MultiJet) -> Result<BTreeMap<String, usize>> {
    if m.len() < 2 {
        return Err(Error::Precondition("census needs at least two branches".into()));
    }
    let an = Analysis::new(m)?;
    let mut out = BTreeMap::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            *out.entry(an.verdict(&[i, j]).label).or_insert(0) += 1;
        }
    }
    Ok(out)
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Minimal bad events, their unions, and the size and complexity of the
/// multijet.
pub fn bad_event_analysis(m: &MultiJet) -> Result<BadEventAnalysis> {
    let r = m.len();
    if r > MAX_BRANCHES {
        return Err(Error::TooManyBranches(r, MAX_BRANCHES));
    }
    let an = Analysis::new(m)?;
    let full = (1u32 << r) - 1;
    let mut admissible = vec![true; 1 << r];
    for mask in 1..=full {
        admissible[mask as usize] = an.verdict(&mask_indices(mask)).admissible;
    }
    // admissibility passes to subsets, so checking the maximal proper
    // subsets covers all of them
    let minimal: Vec<u32> = (1..=full)
        .filter(|&mask| {
            !admissible[mask as usize]
                && mask_indices(mask)
                    .iter()
                    .all(|&i| mask == 1 << i || admissible[(mask & !(1 << i)) as usize])
        })
        .collect();

    let mut is_bad = vec![false; 1 << r];
    let mut bad: Vec<u32> = Vec::new();
    for &mm in &minimal {
        if !is_bad[mm as usize] {
            is_bad[mm as usize] = true;
            bad.push(mm);
        }
    }
    let mut cursor = 0;
    while cursor < bad.len() {
        let b = bad[cursor];
        cursor += 1;
        for &mm in &minimal {
            let u = b | mm;
            if !is_bad[u as usize] {
                is_bad[u as usize] = true;
                bad.push(u);
            }
        }
    }
    bad.sort_by_key(|b| (b.count_ones(), *b));

    // every strict chain refines to one adding a minimal event per step
    let mut chain = vec![0usize; 1 << r];
    for &b in &bad {
        for &mm in &minimal {
            let u = b | mm;
            if u != b {
                chain[u as usize] = chain[u as usize].max(chain[b as usize] + 1);
            }
        }
    }
    let size_s = bad.iter().map(|b| b.count_ones() as usize).max().unwrap_or(0);
    let complexity_k = bad.iter().map(|&b| chain[b as usize]).max().unwrap_or(0);
    let mut minimal = minimal;
    minimal.sort_by_key(|b| (b.count_ones(), *b));
    let case_tags = minimal.iter().map(|&mm| an.case_tag(&mask_indices(mm))).collect();
    Ok(BadEventAnalysis {
        minimal_bad_events: minimal.iter().map(|&b| mask_indices(b)).collect(),
        bad_events: bad.iter().map(|&b| mask_indices(b)).collect(),
        size_s,
        complexity_k,
        case_tags,
    })
}

pub fn codim_bounds(s: usize, k: usize, n: usize) -> Result<CodimBound> {
    if s < 1 {
        return Err(Error::Precondition("size s must be at least 1".into()));
    }
    let chain_bound = s * n + 2 * k + 4;
    let minimal_case_bounds = CaseTag::ALL
        .into_iter()
        .map(|c| {
            let b = match c {
                CaseTag::I => n + 4,
                CaseTag::II | CaseTag::III | CaseTag::IV => 2 * n + 4,
                CaseTag::V | CaseTag::VI => 3 * n + 5,
            };
            (c, b)
        })
        .collect();
    Ok(CodimBound {
        s,
        k,
        n,
        chain_bound,
        minimal_case_bounds,
        c_of_sk: chain_bound + 2 * (s - 1),
        capital_c: chain_bound - s * n - 2,
        condition_b: chain_bound >= s * n + 4,
        condition_c: chain_bound - s * n - k >= k + 4 && 3 * (k + 4) > s,
        chain_hypothesis: 3 * (k + 1) >= s,
    })
}

#[cfg(test)]
mod tests;
