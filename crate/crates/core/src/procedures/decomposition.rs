use crate::error::Result;
use crate::group::{quotient, QuotientView, Subgroup};
use crate::setops::{sigma, sigma_of, stabilizer, sumset, ElementSet};

/// Result of the factorization check, made only when `H = stab(Σ(A))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorizationCheck {
    /// `|Σ(A)| = |H| · |Σ(A'₁) + ... + Σ(A'_h)|`
    pub cardinality_holds: bool,
    /// `Σ(A)` is exactly the union of the cosets in the quotient sumset.
    pub set_identity_holds: bool,
}

impl FactorizationCheck {
    pub fn holds(&self) -> bool {
        self.cardinality_holds && self.set_identity_holds
    }
}

/// Multiplicity sets of `A` over the cosets of `H`. Sets of cosets are lists of
/// coset ordinals of [`quotient`](Self::quotient), ascending.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub subgroup: Subgroup,
    pub quotient: QuotientView,
    pub set_size: usize,
    pub outside_h: usize,
    /// `A_i = {Q : |A ∩ Q| >= i}` for `i = 1..=|H|`.
    pub multiplicity_sets: Vec<Vec<usize>>,
    /// `A'_i = A_i \ {H}`.
    pub punctured_sets: Vec<Vec<usize>>,
    /// `Σ(A'₁) + ... + Σ(A'_h)` inside `G/H`.
    pub quotient_sumset: Vec<usize>,
    pub sigma_size: usize,
    pub is_stabilizer: bool,
    pub factorization: Option<FactorizationCheck>,
}

impl DecompositionReport {
    pub fn h(&self) -> usize {
        self.multiplicity_sets.len()
    }

    /// `Σ|A_i| = |A|`
    pub fn multiplicity_sum_holds(&self) -> bool {
        self.multiplicity_sets.iter().map(Vec::len).sum::<usize>() == self.set_size
    }

    /// `Σ|A'_i| = |A \ H|`
    pub fn punctured_sum_holds(&self) -> bool {
        self.punctured_sets.iter().map(Vec::len).sum::<usize>() == self.outside_h
    }

    /// `A₁ ⊇ A₂ ⊇ ... ⊇ A_h`
    pub fn nesting_holds(&self) -> bool {
        self.multiplicity_sets
            .windows(2)
            .all(|w| w[1].iter().all(|q| w[0].binary_search(q).is_ok()))
    }

    /// Names of the identities that failed; empty when everything checks out.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.multiplicity_sum_holds() {
            out.push("sum |A_i| = |A|");
        }
        if !self.punctured_sum_holds() {
            out.push("sum |A'_i| = |A \\ H|");
        }
        if !self.nesting_holds() {
            out.push("A_1 ⊇ A_2 ⊇ ... ⊇ A_h");
        }
        if let Some(f) = self.factorization {
            if !f.cardinality_holds {
                out.push("|Σ(A)| = |H|·|ΣΣ(A'_i)|");
            }
            if !f.set_identity_holds {
                out.push("Σ(A) = union of cosets in ΣΣ(A'_i)");
            }
        }
        out
    }
}

/// Splits `A` by coset multiplicity over `H` and, when `H = stab(Σ(A))`, checks that
/// `Σ(A)` is exactly the preimage of `Σ(A'₁) + ... + Σ(A'_h)`.
///
/// Quotient spans are computed on lifts: the preimage of `Σ(A'_i)` is
/// `Σ(reps of A'_i) + H`.
pub fn multiplicity_decomposition(a: &ElementSet, h: &Subgroup) -> Result<DecompositionReport> {
    let g = a.group();
    let q = quotient(g, h)?;
    let order_h = q.subgroup().order();
    let trivial = q.trivial_coset();

    let mut counts = vec![0usize; q.num_cosets()];
    for x in a.iter() {
        counts[q.coset_of(x)] += 1;
    }
    let multiplicity_sets: Vec<Vec<usize>> = (1..=order_h)
        .map(|i| (0..q.num_cosets()).filter(|&c| counts[c] >= i).collect())
        .collect();
    let punctured_sets: Vec<Vec<usize>> = multiplicity_sets
        .iter()
        .map(|s| s.iter().copied().filter(|&c| c != trivial).collect())
        .collect();

    let carrier = q.subgroup().carrier();
    let mut total = carrier.clone();
    for cosets in punctured_sets.iter().filter(|s| !s.is_empty()) {
        let lifted = sumset(&sigma_of(g, cosets.iter().map(|&c| q.rep(c))), carrier)?;
        total = sumset(&total, &lifted)?;
    }
    let quotient_sumset = q.cosets_meeting(&total);

    let span = sigma(a);
    let is_stabilizer = stabilizer(&span) == *q.subgroup();
    let factorization = is_stabilizer.then(|| FactorizationCheck {
        cardinality_holds: span.len() == order_h * quotient_sumset.len(),
        set_identity_holds: span == total,
    });

    Ok(DecompositionReport {
        subgroup: q.subgroup().clone(),
        set_size: a.len(),
        outside_h: a.difference_len(carrier),
        multiplicity_sets,
        punctured_sets,
        quotient_sumset,
        sigma_size: span.len(),
        is_stabilizer,
        factorization,
        quotient: q,
    })
}
