//! Checkable increment and expansion lemmas for a span `S` and candidates `C`.
//!
//! Each check evaluates its hypotheses first and reports [`LemmaVerdict::NotApplicable`]
//! when they fail; otherwise the conclusion is decided in exact integer arithmetic.

use crate::error::Result;
use crate::group::generated_subgroup;
use crate::setops::{deficiency_in_group, is_antisymmetric, iterated_sumset, lambda, star_closure, ElementSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaVerdict {
    NotApplicable,
    Holds,
    Violated,
}

impl LemmaVerdict {
    fn from_bool(b: bool) -> Self {
        if b {
            LemmaVerdict::Holds
        } else {
            LemmaVerdict::Violated
        }
    }

    pub fn is_violation(self) -> bool {
        self == LemmaVerdict::Violated
    }
}

fn lambdas(s: &ElementSet, c: &ElementSet) -> Vec<usize> {
    c.iter().map(|x| lambda(s, x)).collect()
}

fn every_element_generates(c: &ElementSet) -> bool {
    let g = c.group();
    c.iter().all(|x| g.element_order(x) as usize == g.order())
}

/// `def(S) <= |C|/2  =>  Σ_c λ(c) >= |C| def(S) / 2`.
pub fn averaging_lemma(s: &ElementSet, c: &ElementSet) -> LemmaVerdict {
    let def = deficiency_in_group(s);
    if 2 * def > c.len() {
        return LemmaVerdict::NotApplicable;
    }
    let total: usize = lambdas(s, c).iter().sum();
    LemmaVerdict::from_bool(2 * total >= c.len() * def)
}

/// `⟨C⟩ = G` and `def(S) >= |C|/2`  =>  some `λ(c) >= |C|/8`.
pub fn eighth_lemma(s: &ElementSet, c: &ElementSet) -> LemmaVerdict {
    let def = deficiency_in_group(s);
    if c.is_empty() || 2 * def < c.len() || !generated_subgroup(c.group(), &c.elements()).is_whole() {
        return LemmaVerdict::NotApplicable;
    }
    let best = lambdas(s, c).into_iter().max().unwrap_or(0);
    LemmaVerdict::from_bool(8 * best >= c.len())
}

/// Every `c ∈ C` generates `G`, `C ∩ (-C) = ∅` and `def(S) >= γ|C|` with `γ > 2`
/// =>  some `λ(c) >= (1 - 4/γ)|C|`.
///
/// Tested at the strongest admissible `γ = def(S)/|C|`, where the conclusion reads
/// `def · max λ >= (def - 4|C|)|C|`.
pub fn increment_lemma(s: &ElementSet, c: &ElementSet) -> LemmaVerdict {
    let def = deficiency_in_group(s);
    let k = c.len();
    if k == 0 || def <= 2 * k || !is_antisymmetric(c) || !every_element_generates(c) {
        return LemmaVerdict::NotApplicable;
    }
    let best = lambdas(s, c).into_iter().max().unwrap_or(0);
    LemmaVerdict::from_bool(def * best + 4 * k * k >= def * k)
}

/// Every `c ∈ C` generates `G` and `C ∩ (-C) = ∅`  =>  `rC* = G` or `|rC*| >= 2r|C|`,
/// with `C* = C ∪ (-C) ∪ {0}`.
pub fn expansion_lemma(c: &ElementSet, r: usize) -> Result<LemmaVerdict> {
    if r == 0 || !is_antisymmetric(c) || !every_element_generates(c) {
        return Ok(LemmaVerdict::NotApplicable);
    }
    let span = iterated_sumset(&star_closure(c), r)?;
    Ok(LemmaVerdict::from_bool(span.is_full() || span.len() >= 2 * r * c.len()))
}
