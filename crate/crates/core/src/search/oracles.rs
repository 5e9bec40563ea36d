use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;

use super::kernel::{bits, next_same_popcount, SmallKernel};
use super::scan::{SearchMeta, SearchReport, SearchRow};
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Subgroup};
use crate::setops::{sigma, stabilizer, ElementSet};

pub const G_ORACLE_LIMIT: u128 = 10_000_000;
pub const COPRIME_MAX_PHI: usize = 24;
pub const WITNESS_MAX_ORDER: usize = 16;

/// `C(m, t)`, or `None` once it exceeds `limit`.
fn binomial_capped(m: usize, t: usize, limit: u128) -> Option<u128> {
    if t > m {
        return Some(0);
    }
    let k = t.min(m - t);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (m - i) as u128 / (i + 1) as u128;
        if c > limit {
            return None;
        }
    }
    Some(c)
}

fn best_span(a: &[Element], from: usize, left: usize, span: &ElementSet, scratch: &mut Vec<u64>) -> usize {
    if left == 0 || span.is_full() {
        return span.len();
    }
    let mut best = 0;
    for j in from..=a.len() - left {
        let mut next = span.clone();
        next.absorb_shift(a[j], scratch);
        best = best.max(best_span(a, j + 1, left - 1, &next, scratch));
        if best == span.group().order() {
            break;
        }
    }
    best
}

/// `g(t) = max_{B ⊆ A, |B| = t} |Σ(B)|`, by enumerating every `t`-subset.
pub fn exact_g_oracle(a: &ElementSet, t: usize) -> Result<usize> {
    let m = a.len();
    if t > m {
        return Err(Error::BelowDomain(format!("t={t} exceeds |A|={m}")));
    }
    if binomial_capped(m, t, G_ORACLE_LIMIT).is_none() {
        let count = binomial_capped(m, t, u128::MAX / 2).unwrap_or(u128::MAX);
        return Err(Error::TooLarge { count, limit: G_ORACLE_LIMIT });
    }
    let g = a.group();
    let elems = a.elements();
    let start = ElementSet::singleton(g, g.zero());
    if t == 0 {
        return Ok(1);
    }
    Ok((0..=m - t)
        .into_par_iter()
        .map(|j| {
            let mut scratch = Vec::new();
            let mut first = start.clone();
            first.absorb_shift(elems[j], &mut scratch);
            best_span(&elems, j + 1, t - 1, &first, &mut scratch)
        })
        .max()
        .unwrap_or(1))
}

/// Exact maximum `m = |A|` over `A ⊆ Z_n*` with `Σ(A) ≠ Z_n`.
#[derive(Debug, Clone)]
pub struct CoprimeExtremum {
    pub n: u64,
    pub phi: usize,
    pub m: usize,
    /// First maximiser in (cardinality, bitmask over the ascending units) order.
    pub witness: ElementSet,
    /// `m <= 8√n`, decided as `m² <= 64n`.
    pub bound_holds: bool,
    pub enumerated: u64,
}

fn units(n: u64) -> Vec<usize> {
    (1..n).filter(|u| u.gcd(&n) == 1).map(|u| u as usize).collect()
}

struct CoverWalk<'a> {
    kernel: &'a SmallKernel,
    units: &'a [usize],
}

impl CoverWalk<'_> {
    /// Returns `(enumerated, best (card, mask))`; covering sets prune their subtree since
    /// every superset also covers.
    fn dfs(&self, next: usize, mask: u64, span: u128, card: usize) -> (u64, (usize, std::cmp::Reverse<u64>)) {
        let mut count = 1;
        let mut best = (card, std::cmp::Reverse(mask));
        for j in next..self.units.len() {
            let s2 = self.kernel.absorb(span, self.units[j]);
            if s2 == self.kernel.full() {
                count += 1;
                continue;
            }
            let (c, b) = self.dfs(j + 1, mask | 1 << j, s2, card + 1);
            count += c;
            best = best.max(b);
        }
        (count, best)
    }
}

pub fn max_coprime_noncovering(n: u64) -> Result<CoprimeExtremum> {
    if n < 2 {
        return Err(Error::BelowDomain(format!("n={n}: Z_n needs n >= 2 to have a non-covering set")));
    }
    let us = units(n);
    if us.len() > COPRIME_MAX_PHI {
        return Err(Error::TooLarge { count: 1u128 << us.len().min(127), limit: 1u128 << COPRIME_MAX_PHI });
    }
    let g = GroupSpec::cyclic(n)?;
    let kernel = SmallKernel::new(&g).ok_or(Error::GroupTooLarge { order: n as u128, cap: 128 })?;
    let walk = CoverWalk { kernel: &kernel, units: &us };
    let (enumerated, (m, std::cmp::Reverse(mask))) = walk.dfs(0, 0, 1, 0);
    let witness = ElementSet::from_indices(&g, (0..us.len()).filter(|j| mask >> j & 1 == 1).map(|j| us[j]))?;
    Ok(CoprimeExtremum {
        n,
        phi: us.len(),
        m,
        witness,
        bound_holds: (m as u128).pow(2) <= 64 * n as u128,
        enumerated,
    })
}

/// `max_coprime_noncovering` for every `n` in `ns` with `φ(n) <= max_phi`, as report rows.
pub fn olson_scan(ns: impl IntoIterator<Item = u64>, max_phi: usize) -> Result<SearchReport> {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut enumerated = 0;
    let mut violations = 0;
    let mut universe = 0;
    for n in ns {
        if units(n).len() > max_phi.min(COPRIME_MAX_PHI) {
            continue;
        }
        let ext = max_coprime_noncovering(n)?;
        enumerated += ext.enumerated;
        universe = universe.max(ext.phi);
        violations += (!ext.bound_holds) as u64;
        rows.push(SearchRow::new(&ext.witness, "m<=8sqrt(n)", ext.bound_holds));
    }
    Ok(SearchReport {
        meta: SearchMeta {
            kind: "max_coprime_noncovering".into(),
            group: "Z_n".into(),
            mode: "exhaustive".into(),
            universe,
            enumerated,
            admissible: rows.len() as u64,
            violations,
            seed: None,
            wall_seconds: start.elapsed().as_secs_f64(),
        },
        rows,
    })
}

fn witness_kernel(g: &GroupSpec) -> Result<SmallKernel> {
    if g.order() > WITNESS_MAX_ORDER {
        return Err(Error::GroupTooLarge { order: g.order() as u128, cap: WITNESS_MAX_ORDER });
    }
    Ok(SmallKernel::new(g).expect("order checked"))
}

fn is_proper_nontrivial(kernel: &SmallKernel, span: u128) -> bool {
    let s = kernel.stab_size(span);
    s > 1 && s < kernel.order()
}

fn lift(kernel: &SmallKernel, mask: u64) -> (ElementSet, Subgroup) {
    // bit j of the mask is element j + 1
    let a = kernel.to_set((mask as u128) << 1);
    let h = stabilizer(&sigma(&a));
    (a, h)
}

fn span_of(kernel: &SmallKernel, mask: u64) -> u128 {
    bits((mask as u128) << 1).fold(1u128, |s, x| kernel.absorb(s, x))
}

/// First `A ⊆ G \ {0}` (by cardinality, then bitmask) with `{0} ⊊ stab(Σ(A)) ⊊ G`.
pub fn find_nontrivial_stab_witness(g: &GroupSpec) -> Result<Option<(ElementSet, Subgroup)>> {
    let kernel = witness_kernel(g)?;
    let width = (g.order() - 1) as u32;
    for k in 1..=width {
        let mut mask = (1u64 << k) - 1;
        loop {
            if is_proper_nontrivial(&kernel, span_of(&kernel, mask)) {
                return Ok(Some(lift(&kernel, mask)));
            }
            match next_same_popcount(mask, width) {
                Some(m) => mask = m,
                None => break,
            }
        }
    }
    Ok(None)
}

/// Every such witness, in the same order.
pub fn nontrivial_stab_witnesses(g: &GroupSpec) -> Result<Vec<(ElementSet, Subgroup)>> {
    let kernel = witness_kernel(g)?;
    let width = g.order() - 1;
    let mut masks: Vec<u64> = (1u64..1 << width)
        .into_par_iter()
        .filter(|&m| is_proper_nontrivial(&kernel, span_of(&kernel, m)))
        .collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    Ok(masks.into_iter().map(|m| lift(&kernel, m)).collect())
}
