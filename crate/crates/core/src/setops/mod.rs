//! Set statistics behind the greedy subset-sum arguments: spans, stabilizers,
//! translation increments `λ`, difference counts `ρ`, deficiency and coset profiles.

mod bitset;
mod profile;

pub use bitset::ElementSet;
pub use profile::{coset_profile, CosetClass, CosetCounts, CosetProfile};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Element, QuotientView, Subgroup};

/// `S + c`.
pub fn shift(s: &ElementSet, c: Element) -> ElementSet {
    s.shift(c)
}

/// Subset-sum span `Σ(A)`: folds `S <- S ∪ (S + c)` over `c` in `A`, from `S = {0}`.
pub fn sigma(a: &ElementSet) -> ElementSet {
    sigma_of(a.group(), a.iter())
}

pub(crate) fn sigma_of(group: &crate::group::GroupSpec, elements: impl IntoIterator<Item = Element>) -> ElementSet {
    let mut span = ElementSet::singleton(group, group.zero());
    let mut scratch = Vec::new();
    for c in elements {
        if span.is_full() {
            break;
        }
        span.absorb_shift(c, &mut scratch);
    }
    span
}

/// `X + Y`. Empty when either operand is empty.
pub fn sumset(x: &ElementSet, y: &ElementSet) -> Result<ElementSet> {
    x.check_same_group(y)?;
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut scratch = vec![0u64; large.words().len()];
    let mut acc = vec![0u64; large.words().len()];
    for c in small.iter() {
        large.shift_words_into(c, &mut scratch);
        for (a, &b) in acc.iter_mut().zip(&scratch) {
            *a |= b;
        }
        if acc.iter().map(|w| w.count_ones() as usize).sum::<usize>() == x.group().order() {
            break;
        }
    }
    Ok(ElementSet::from_words(x.group(), acc))
}

/// `rX = X + ... + X` (`r` copies), by a left fold of `r - 1` sumsets.
pub fn iterated_sumset(x: &ElementSet, r: usize) -> Result<ElementSet> {
    if r == 0 {
        return Err(Error::BelowDomain("iterated sumset needs r >= 1".into()));
    }
    let mut acc = x.clone();
    for _ in 1..r {
        if acc.is_full() {
            break;
        }
        acc = sumset(&acc, x)?;
    }
    Ok(acc)
}

/// `C* = C ∪ (-C) ∪ {0}`.
pub fn star_closure(c: &ElementSet) -> ElementSet {
    let mut out = c.union(&c.negate());
    out.insert(c.group().zero());
    out
}

/// `stab(S) = {g : S + g = S}`; only translates in `S - s0` can qualify. `stab(∅) = G`.
pub fn stabilizer(s: &ElementSet) -> Subgroup {
    let g = s.group();
    let Some(s0) = s.min_element() else {
        return Subgroup::whole(g);
    };
    let mut scratch = vec![0u64; s.words().len()];
    let carrier = ElementSet::from_elements(
        g,
        s.iter().map(|x| g.sub(x, s0)).filter(|&d| {
            s.shift_words_into(d, &mut scratch);
            scratch.as_slice() == s.words()
        }),
    );
    Subgroup::from_verified(carrier)
}

/// True iff `stab(S) = {0}`, stopping at the first nonzero period.
pub fn has_trivial_stabilizer(s: &ElementSet) -> bool {
    let g = s.group();
    let Some(s0) = s.min_element() else {
        return g.order() == 1;
    };
    let mut scratch = vec![0u64; s.words().len()];
    !s.iter().map(|x| g.sub(x, s0)).filter(|d| d.index() != 0).any(|d| {
        s.shift_words_into(d, &mut scratch);
        scratch.as_slice() == s.words()
    })
}

/// `λ_S(c) = |(S + c) \ S|`.
pub fn lambda(s: &ElementSet, c: Element) -> usize {
    let mut scratch = vec![0u64; s.words().len()];
    lambda_with(s, c, &mut scratch)
}

fn lambda_with(s: &ElementSet, c: Element, scratch: &mut [u64]) -> usize {
    s.shift_words_into(c, scratch);
    scratch.iter().zip(s.words()).map(|(&a, &b)| (a & !b).count_ones() as usize).sum()
}

/// `ρ_S(d) = |S ∩ (S + d)|`, the number of ways to write `d = x - y` with `x, y ∈ S`.
pub fn rho(s: &ElementSet, d: Element) -> usize {
    let mut scratch = vec![0u64; s.words().len()];
    s.shift_words_into(d, &mut scratch);
    scratch.iter().zip(s.words()).map(|(&a, &b)| (a & b).count_ones() as usize).sum()
}

/// `ρ_S(d)` for every `d`, indexed by element index.
pub fn rho_all(s: &ElementSet) -> Vec<usize> {
    s.group().elements().map(|d| rho(s, d)).collect()
}

/// `λ_S(c)` for every `c`, indexed by element index.
pub fn lambda_all(s: &ElementSet) -> Vec<usize> {
    let mut scratch = vec![0u64; s.words().len()];
    s.group().elements().map(|c| lambda_with(s, c, &mut scratch)).collect()
}

/// `def_Q(S) = min(|S ∩ Q|, |Q \ S|)` for an arbitrary region `Q`.
pub fn deficiency(s: &ElementSet, q: &ElementSet) -> Result<usize> {
    s.check_same_group(q)?;
    Ok(s.intersection_len(q).min(q.difference_len(s)))
}

/// Deficiency against the whole group, `min(|S|, |G| - |S|)`.
pub fn deficiency_in_group(s: &ElementSet) -> usize {
    s.len().min(s.group().order() - s.len())
}

/// Deficiency on coset number `coset` of a quotient.
pub fn coset_deficiency(s: &ElementSet, q: &QuotientView, coset: usize) -> Result<usize> {
    deficiency(s, &q.coset_set(coset))
}

/// `D_t = {d : ρ(d) >= t}`.
pub fn level_set(s: &ElementSet, t: usize) -> ElementSet {
    level_set_from(s, &rho_all(s), t)
}

pub(crate) fn level_set_from(s: &ElementSet, rhos: &[usize], t: usize) -> ElementSet {
    let g = s.group();
    ElementSet::from_elements(g, g.elements().filter(|d| rhos[d.index()] >= t))
}

/// Element of `C` maximising `λ_S`, ties to the smallest index.
pub fn best_increment(s: &ElementSet, c: &ElementSet) -> Result<(Element, usize)> {
    s.check_same_group(c)?;
    if c.is_empty() {
        return Err(Error::NoCandidates);
    }
    let words = s.words().len();
    let better = |a: (Element, usize), b: (Element, usize)| {
        if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
            b
        } else {
            a
        }
    };
    // parallel only pays off once each candidate costs a few thousand words
    if c.len() * words >= 1 << 16 && c.len() >= 16 {
        let candidates = c.elements();
        let best = candidates
            .par_iter()
            .map_init(
                || vec![0u64; words],
                |scratch, &x| (x, lambda_with(s, x, scratch)),
            )
            .reduce_with(better)
            .expect("nonempty candidate set");
        Ok(best)
    } else {
        let mut scratch = vec![0u64; words];
        let best = c
            .iter()
            .map(|x| (x, lambda_with(s, x, &mut scratch)))
            .reduce(better)
            .expect("nonempty candidate set");
        Ok(best)
    }
}

/// True iff `A ∩ (-A) = ∅`; this also rules out `0` and self-inverse elements.
pub fn is_antisymmetric(a: &ElementSet) -> bool {
    a.is_disjoint(&a.negate())
}
