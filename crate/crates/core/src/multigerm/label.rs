//! Stratum names such as "one cusp and two folds, making three distinct
//! directions in target".

use crate::germclass::Tag;

const WORDS: [&str; 21] = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen",
    "nineteen", "twenty",
];

pub fn number_word(n: usize) -> String {
    WORDS.get(n).map_or_else(|| n.to_string(), |w| w.to_string())
}

fn counted(n: usize, singular: &str, plural: &str) -> String {
    format!("{} {}", number_word(n), if n == 1 { singular } else { plural })
}

fn type_noun(tag: Tag) -> (&'static str, &'static str) {
    match tag {
        Tag::Regular => ("regular branch", "regular branches"),
        Tag::Fold => ("fold", "folds"),
        Tag::Cusp => ("cusp", "cusps"),
        Tag::Swallowtail => ("swallowtail", "swallowtails"),
        Tag::Lips => ("lips", "lips"),
        Tag::BeakToBeak => ("beak-to-beak", "beak-to-beaks"),
        Tag::Unclassified => ("unclassified branch", "unclassified branches"),
    }
}

fn join(parts: &[String]) -> String {
    match parts {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} and {}", init.join(", "), last),
    }
}

/// Census of branch types in a fixed order: non-fold singular types, folds,
/// regular branches, unclassified branches.
fn census_parts(tags: &[Tag], kissing: bool) -> Vec<String> {
    let order = [
        Tag::Cusp,
        Tag::Swallowtail,
        Tag::Lips,
        Tag::BeakToBeak,
        Tag::Fold,
        Tag::Regular,
        Tag::Unclassified,
    ];
    let mut parts = Vec::new();
    for t in order {
        let k = tags.iter().filter(|&&x| x == t).count();
        if t == Tag::Fold && kissing {
            parts.push("two kissing folds".to_string());
            if k > 2 {
                parts.push(counted(k - 2, "other fold", "other folds"));
            }
            continue;
        }
        if k > 0 {
            let (s, p) = type_noun(t);
            parts.push(counted(k, s, p));
        }
    }
    parts
}

/// Name of an admissible stratum. `kissing` marks the case of two folds
/// sharing a direction.
pub fn admissible_label(tags: &[Tag], kissing: bool) -> String {
    let singular = tags.iter().filter(|t| t.is_singular()).count();
    let directions = if kissing { singular - 1 } else { singular };
    let mut label = join(&census_parts(tags, kissing));
    if directions >= 2 {
        label.push_str(&format!(
            ", making {} distinct directions in target",
            number_word(directions)
        ));
    }
    label
}

pub fn inadmissible_label(tags: &[Tag], directions: usize) -> String {
    let singular = tags.iter().filter(|t| t.is_singular()).count();
    format!(
        "{}, {} in {}",
        join(&census_parts(tags, false)),
        counted(singular, "singular branch", "singular branches"),
        counted(directions, "direction", "directions")
    )
}
