use std::collections::HashSet;

use super::{Element, GroupSpec};
use crate::error::{Error, Result};
use crate::setops::{star_closure, sumset, ElementSet};

/// Largest group for which [`all_subgroups`] will run.
pub const SUBGROUP_ENUMERATION_LIMIT: usize = 1 << 12;

/// A subgroup, stored as its carrier set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    carrier: ElementSet,
}

impl Subgroup {
    pub fn trivial(g: &GroupSpec) -> Self {
        Subgroup { carrier: ElementSet::singleton(g, g.zero()) }
    }

    pub fn whole(g: &GroupSpec) -> Self {
        Subgroup { carrier: ElementSet::full(g) }
    }

    /// Checks `0 ∈ H` and closure under `+` and `-`.
    pub fn from_set(carrier: ElementSet) -> Result<Self> {
        let g = carrier.group().clone();
        if !carrier.contains(g.zero()) {
            return Err(Error::NotASubgroup("carrier does not contain 0".into()));
        }
        for x in carrier.iter() {
            if !carrier.contains(g.neg(x)) {
                return Err(Error::NotASubgroup(format!("-{} missing", g.format_element(x))));
            }
            // u + H ⊆ H for every u
            if !carrier.shift(x).is_subset(&carrier) {
                return Err(Error::NotASubgroup(format!(
                    "not closed under adding {}",
                    g.format_element(x)
                )));
            }
        }
        Ok(Subgroup { carrier })
    }

    pub(crate) fn from_verified(carrier: ElementSet) -> Self {
        debug_assert!(Subgroup::from_set(carrier.clone()).is_ok());
        Subgroup { carrier }
    }

    pub fn carrier(&self) -> &ElementSet {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn group(&self) -> &GroupSpec {
        self.carrier.group()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.carrier.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.carrier.is_full()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.carrier.is_subset(&other.carrier)
    }

    /// `H + K`, the subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let carrier = sumset(&self.carrier, &other.carrier).expect("same group");
        Subgroup { carrier }
    }
}

/// Smallest subgroup containing `gens`: iterate `S <- S + (gens ∪ -gens ∪ {0})` to a fixpoint.
pub fn generated_subgroup(g: &GroupSpec, gens: &[Element]) -> Subgroup {
    let base = star_closure(&ElementSet::from_elements(g, gens.iter().copied()));
    let mut span = base.clone();
    loop {
        let next = sumset(&span, &base).expect("same group");
        if next.len() == span.len() {
            return Subgroup { carrier: span };
        }
        span = next;
    }
}

/// Every subgroup of `g`, closed from the cyclic subgroups under pairwise joins.
/// Sorted by order then carrier bitmap. Refused above [`SUBGROUP_ENUMERATION_LIMIT`].
pub fn all_subgroups(g: &GroupSpec) -> Result<Vec<Subgroup>> {
    if g.order() > SUBGROUP_ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            count: g.order() as u128,
            limit: SUBGROUP_ENUMERATION_LIMIT as u128,
        });
    }
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut list: Vec<Subgroup> = Vec::new();
    for x in g.elements() {
        let h = generated_subgroup(g, &[x]);
        if seen.insert(h.carrier.clone()) {
            list.push(h);
        }
    }
    let mut frontier = 0;
    while frontier < list.len() {
        let end = list.len();
        for i in frontier..end {
            for j in 0..end {
                let h = list[i].join(&list[j]);
                if seen.insert(h.carrier.clone()) {
                    list.push(h);
                }
            }
        }
        frontier = end;
    }
    list.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.carrier.words().cmp(b.carrier.words())));
    Ok(list)
}

/// `G/H` with the minimum-index element of each coset as its representative.
#[derive(Debug, Clone)]
pub struct QuotientView {
    parent: GroupSpec,
    subgroup: Subgroup,
    coset_reps: Vec<Element>,
    coset_index: Vec<u32>,
}

pub fn quotient(g: &GroupSpec, h: &Subgroup) -> Result<QuotientView> {
    if !h.group().same_as(g) {
        return Err(Error::GroupMismatch(h.group().to_string(), g.to_string()));
    }
    let h = Subgroup::from_set(h.carrier.clone())?;
    const UNSET: u32 = u32::MAX;
    let mut coset_index = vec![UNSET; g.order()];
    let mut coset_reps = Vec::with_capacity(g.order() / h.order());
    let members = h.carrier.elements();
    for x in g.elements() {
        if coset_index[x.index()] != UNSET {
            continue;
        }
        let ordinal = coset_reps.len() as u32;
        coset_reps.push(x);
        for &m in &members {
            coset_index[g.add(x, m).index()] = ordinal;
        }
    }
    Ok(QuotientView { parent: g.clone(), subgroup: h, coset_reps, coset_index })
}

impl QuotientView {
    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn num_cosets(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn reps(&self) -> &[Element] {
        &self.coset_reps
    }

    pub fn rep(&self, coset: usize) -> Element {
        self.coset_reps[coset]
    }

    pub fn coset_of(&self, x: Element) -> usize {
        self.coset_index[x.index()] as usize
    }

    /// Ordinal of the coset `H` itself; always 0 since its representative is `0`.
    pub fn trivial_coset(&self) -> usize {
        0
    }

    pub fn add_cosets(&self, p: usize, q: usize) -> usize {
        self.coset_of(self.parent.add(self.rep(p), self.rep(q)))
    }

    pub fn neg_coset(&self, p: usize) -> usize {
        self.coset_of(self.parent.neg(self.rep(p)))
    }

    /// Order of a coset in `G/H`.
    pub fn coset_order(&self, p: usize) -> u64 {
        let mut m = 1;
        let mut acc = p;
        while acc != self.trivial_coset() {
            acc = self.add_cosets(acc, p);
            m += 1;
        }
        m
    }

    /// The coset as a subset of `G`.
    pub fn coset_set(&self, coset: usize) -> ElementSet {
        self.subgroup.carrier.shift(self.rep(coset))
    }

    /// Union of the listed cosets, as a subset of `G`.
    pub fn lift(&self, cosets: impl IntoIterator<Item = usize>) -> ElementSet {
        let mut out = ElementSet::empty(&self.parent);
        for c in cosets {
            out.union_with(&self.coset_set(c));
        }
        out
    }

    /// Cosets met by `s`, in increasing ordinal.
    pub fn cosets_meeting(&self, s: &ElementSet) -> Vec<usize> {
        let mut hit = vec![false; self.num_cosets()];
        for x in s.iter() {
            hit[self.coset_of(x)] = true;
        }
        (0..self.num_cosets()).filter(|&c| hit[c]).collect()
    }
}
