//! Divisor sets and right-LCM desk checks.
//!
//! Every factorisation `p = q r` concatenates representatives of `q` and `r`
//! into a representative of `p`, so divisor sets are read off prefixes and
//! suffixes of the words in the class of `p`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

use super::table::{Element, EnumerationTable};

/// `R_p = { r : p = q r for some q }`.
pub fn right_divisors(table: &EnumerationTable, p: Element) -> BTreeSet<Element> {
    let n = table.length(p);
    let mut out = BTreeSet::new();
    for w in table.representatives(p) {
        for cut in 0..=n {
            out.insert(table.element(&w[cut..]).expect("suffix within bound"));
        }
    }
    out
}

/// `L_p = { q : p = q r for some r }`.
pub fn left_divisors(table: &EnumerationTable, p: Element) -> BTreeSet<Element> {
    let n = table.length(p);
    let mut out = BTreeSet::new();
    for w in table.representatives(p) {
        for cut in 0..=n {
            out.insert(table.element(&w[..cut]).expect("prefix within bound"));
        }
    }
    out
}

/// Whether `q` is a left divisor of `p`, i.e. `p ∈ qP`.
pub fn left_divides(table: &EnumerationTable, q: Element, p: Element) -> bool {
    let k = table.length(q);
    table.length(p) >= k
        && table
            .representatives(p)
            .iter()
            .any(|w| table.element(&w[..k]).ok() == Some(q))
}

/// Outcome of a right-LCM search within a length bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LcmVerdict {
    /// A common right multiple that left-divides every other one found.
    Lcm { lcm: String },
    /// `pP ∩ qP` has no element of length ≤ bound.
    NoCommonMultiple,
    /// Several minimal common right multiples.
    NoUniqueMinimum { minimal: Vec<String> },
}

#[derive(Debug, Clone, Serialize)]
pub struct LcmReport {
    #[serde(flatten)]
    pub verdict: LcmVerdict,
    #[serde(skip)]
    pub lcm: Option<Element>,
    /// Size of `pP ∩ qP` within the bound.
    pub common_multiples: usize,
    pub bound: usize,
}

/// Computes `pP ∩ qP` among elements of length ≤ `bound` and looks for a
/// unique minimal generator.
pub fn right_lcm_check(
    table: &EnumerationTable,
    p: Element,
    q: Element,
    bound: usize,
) -> Result<LcmReport> {
    let need = table.length(p).max(table.length(q));
    if bound < need {
        return Err(Error::Inconclusive(format!(
            "bound {bound} is below max(|p|, |q|) = {need}"
        )));
    }
    table.ensure_depth(bound)?;
    let common: Vec<Element> = table
        .elements_upto(bound)
        .filter(|&m| left_divides(table, p, m) && left_divides(table, q, m))
        .collect();
    let minimal: Vec<Element> = common
        .iter()
        .copied()
        .filter(|&m| {
            !common
                .iter()
                .any(|&other| other != m && left_divides(table, other, m))
        })
        .collect();
    let (verdict, lcm) = match minimal.as_slice() {
        [] => (LcmVerdict::NoCommonMultiple, None),
        [l] if common.iter().all(|&m| left_divides(table, *l, m)) => (
            LcmVerdict::Lcm {
                lcm: table.format(*l),
            },
            Some(*l),
        ),
        many => (
            LcmVerdict::NoUniqueMinimum {
                minimal: many.iter().map(|&m| table.format(m)).collect(),
            },
            None,
        ),
    };
    Ok(LcmReport {
        verdict,
        lcm,
        common_multiples: common.len(),
        bound,
    })
}
