use serde::Serialize;

use super::ElementSet;
use crate::group::QuotientView;

/// Literal sparse / dense / very-sparse flags for one coset.
///
/// A coset may be both sparse and dense when `|H| <= 2 * threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CosetClass {
    pub sparse: bool,
    pub very_sparse: bool,
    pub dense: bool,
}

impl CosetClass {
    pub fn is_neither(&self) -> bool {
        !self.sparse && !self.dense
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CosetCounts {
    /// `|S ∩ Q|`
    pub inside: usize,
    /// `|Q \ S|`
    pub missing: usize,
}

#[derive(Debug, Clone)]
pub struct CosetProfile {
    pub quotient: QuotientView,
    pub per_coset: Vec<CosetCounts>,
    pub classification: Vec<CosetClass>,
    pub sparse_threshold: usize,
    pub very_sparse_threshold: usize,
}

impl CosetProfile {
    pub fn count_where(&self, pred: impl Fn(&CosetClass) -> bool) -> usize {
        self.classification.iter().filter(|c| pred(c)).count()
    }
}

/// Counts `S` on every coset of `q` and classifies each coset:
/// sparse iff `|S ∩ Q| <= sparse_threshold`, dense iff `|Q \ S| <= sparse_threshold`,
/// very sparse iff `|S ∩ Q| <= very_sparse_threshold`.
pub fn coset_profile(
    s: &ElementSet,
    q: &QuotientView,
    sparse_threshold: usize,
    very_sparse_threshold: usize,
) -> CosetProfile {
    let h = q.subgroup().order();
    let mut inside = vec![0usize; q.num_cosets()];
    for x in s.iter() {
        inside[q.coset_of(x)] += 1;
    }
    let per_coset: Vec<CosetCounts> = inside
        .into_iter()
        .map(|k| CosetCounts { inside: k, missing: h - k })
        .collect();
    let classification = per_coset
        .iter()
        .map(|c| CosetClass {
            sparse: c.inside <= sparse_threshold,
            very_sparse: c.inside <= very_sparse_threshold,
            dense: c.missing <= sparse_threshold,
        })
        .collect();
    CosetProfile {
        quotient: q.clone(),
        per_coset,
        classification,
        sparse_threshold,
        very_sparse_threshold,
    }
}
