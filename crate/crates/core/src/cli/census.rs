//! Monte-Carlo frequencies of classification verdicts over integer jets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::germclass::{classify, GermClass, Tag};
use crate::jetalg::{scalar, JetMap, Monomial, TruncPoly};

pub const MAX_SAMPLES: u64 = 10_000_000;

/// Coefficient of the second component in the planar variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    B2,
    B3,
    B4,
    C,
    D1,
    D2,
}

impl Slot {
    pub fn name(self) -> &'static str {
        match self {
            Slot::B2 => "b2",
            Slot::B3 => "b3",
            Slot::B4 => "b4",
            Slot::C => "c",
            Slot::D1 => "d1",
            Slot::D2 => "d2",
        }
    }

    /// Exponents of `(x, y)`.
    fn exps(self) -> (u32, u32) {
        match self {
            Slot::B2 => (0, 2),
            Slot::B3 => (0, 3),
            Slot::B4 => (0, 4),
            Slot::C => (1, 1),
            Slot::D1 => (1, 2),
            Slot::D2 => (2, 1),
        }
    }
}

/// A census restriction: the slice `N` of jets `(x, f2)` with `f2` free of
/// linear terms, optionally with one coefficient of `f2` forced to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constraint {
    SliceN,
    Zero(Slot),
}

impl FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let slot = |name: &str| match name {
            "b2" => Some(Slot::B2),
            "b3" => Some(Slot::B3),
            "b4" => Some(Slot::B4),
            "c" => Some(Slot::C),
            "d1" => Some(Slot::D1),
            "d2" => Some(Slot::D2),
            _ => None,
        };
        if compact == "N" {
            return Ok(Constraint::SliceN);
        }
        if let Some(name) = compact.strip_suffix("=0") {
            if let Some(sl) = slot(name) {
                return Ok(Constraint::Zero(sl));
            }
        }
        if let Some(sl) = slot(&compact.to_lowercase()) {
            if compact.chars().next().is_some_and(char::is_uppercase) {
                return Ok(Constraint::Zero(sl));
            }
        }
        Err(Error::InvalidConstraint(s.to_string()))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::SliceN => f.write_str("N"),
            Constraint::Zero(s) => write!(f, "{}=0", s.name()),
        }
    }
}

/// Expand selector names: `B2`, `B3`, `B4` and `C` mean `N` together with the
/// matching coefficient set to zero.
pub fn parse_constraints(names: &[String]) -> Result<Vec<Constraint>> {
    let mut out = Vec::new();
    for name in names {
        let c: Constraint = name.parse()?;
        let upper = name.trim().chars().next().is_some_and(char::is_uppercase);
        if upper && c != Constraint::SliceN {
            out.push(Constraint::SliceN);
        }
        out.push(c);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusSpec {
    pub n: usize,
    pub range: u32,
    pub constraints: Vec<Constraint>,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub order: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusCounts {
    pub total: u64,
    pub by_tag: BTreeMap<Tag, u64>,
    pub by_class: BTreeMap<String, u64>,
    pub by_reason: BTreeMap<String, u64>,
    pub errors: u64,
}

impl CensusCounts {
    fn record(&mut self, verdict: Result<GermClass>) {
        self.total += 1;
        match verdict {
            Ok(class) => {
                *self.by_tag.entry(class.tag).or_default() += 1;
                *self.by_class.entry(class.to_string()).or_default() += 1;
                if let Some(r) = class.unclassified_reason {
                    *self.by_reason.entry(format!("{r:?}")).or_default() += 1;
                }
            }
            Err(_) => self.errors += 1,
        }
    }

    fn merge(&mut self, other: CensusCounts) {
        self.total += other.total;
        self.errors += other.errors;
        for (k, v) in other.by_tag {
            *self.by_tag.entry(k).or_default() += v;
        }
        for (k, v) in other.by_class {
            *self.by_class.entry(k).or_default() += v;
        }
        for (k, v) in other.by_reason {
            *self.by_reason.entry(k).or_default() += v;
        }
    }

    pub fn count(&self, tag: Tag) -> u64 {
        self.by_tag.get(&tag).copied().unwrap_or(0)
    }

    /// Exact fraction `count / total` as `p/q` text.
    pub fn fraction(&self, count: u64) -> String {
        if self.total == 0 {
            return "0".into();
        }
        scalar::to_text(&scalar::rat(count as i64, self.total as i64))
    }
}

fn check(spec: &CensusSpec) -> Result<()> {
    if spec.samples > MAX_SAMPLES {
        return Err(Error::Precondition(format!(
            "sample count {} exceeds {MAX_SAMPLES}",
            spec.samples
        )));
    }
    if spec.workers == 0 {
        return Err(Error::Precondition("at least one worker is required".into()));
    }
    if spec.order < 4 {
        return Err(Error::OrderTooSmall { min: 4, got: spec.order });
    }
    Ok(())
}

/// Draw one jet under the census constraints.
pub fn sample_jet(spec: &CensusSpec, rng: &mut impl Rng) -> JetMap {
    let nv = spec.n + 2;
    let (x, y) = (spec.n, spec.n + 1);
    let m = i64::from(spec.range);
    let slice_n = spec.constraints.contains(&Constraint::SliceN);
    let zeroed: Vec<Monomial> = spec
        .constraints
        .iter()
        .filter_map(|c| match c {
            Constraint::Zero(s) => {
                let (ex, ey) = s.exps();
                let mut e = vec![0u32; nv];
                e[x] = ex;
                e[y] = ey;
                Some(Monomial::new(&e))
            }
            Constraint::SliceN => None,
        })
        .collect();
    let mut draw = |lo: u32, skip: &[Monomial]| {
        let mut p = TruncPoly::zero(nv, spec.order);
        for mono in Monomial::all_up_to(nv, lo, spec.order) {
            let v = rng.random_range(-m..=m);
            if v != 0 && !skip.contains(&mono) {
                p.add_term(mono, scalar::int(v));
            }
        }
        p
    };
    let comps = if slice_n {
        vec![TruncPoly::var(nv, spec.order, x), draw(2, &zeroed)]
    } else {
        let first = draw(1, &[]);
        vec![first, draw(1, &zeroed)]
    };
    JetMap::new(comps).expect("sampled jets vanish at the origin")
}

/// Worker `w` draws from stream `w` of the ChaCha generator seeded with the
/// census seed and handles every `workers`-th sample.
pub fn run_census(spec: &CensusSpec) -> Result<CensusCounts> {
    check(spec)?;
    let w = spec.workers as u64;
    let results: Vec<CensusCounts> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..w)
            .map(|worker| {
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
                    rng.set_stream(worker);
                    let share = spec.samples / w + u64::from(worker < spec.samples % w);
                    let mut counts = CensusCounts::default();
                    for _ in 0..share {
                        let f = sample_jet(spec, &mut rng);
                        counts.record(classify(&f));
                    }
                    counts
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut total = CensusCounts::default();
    for r in results {
        total.merge(r);
    }
    Ok(total)
}
