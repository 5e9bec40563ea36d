use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::setops::{has_trivial_stabilizer, sigma, ElementSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    /// `A = {±1, ..., ±n}` in `Z_N`, `N` the smallest prime above `2n(n+1)`.
    Interval,
    /// `A = {±1, ..., ±(p-1)}` in `Z_{p²}`, `p` an odd prime.
    UnitIntervalPsq,
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub param: u64,
    pub group: GroupSpec,
    pub set: ElementSet,
    pub sigma: ElementSet,
    /// Named predicates and whether each held.
    pub checks: Vec<(String, bool)>,
}

impl Construction {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| name.as_str()).collect()
    }

    /// `|Σ(A)| / |A|²`
    pub fn ratio(&self) -> BigRational {
        let c = self.set.len();
        BigRational::new(BigInt::from(self.sigma.len()), BigInt::from(c * c))
    }

    /// `|A| / √|G|`, defined when `|G|` is a perfect square.
    pub fn size_over_root(&self) -> Option<BigRational> {
        let order = self.group.order() as u64;
        let root = order.sqrt();
        (root * root == order).then(|| BigRational::new(BigInt::from(self.set.len()), BigInt::from(root)))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn next_prime_above(n: u64) -> u64 {
    (n + 1..).find(|&m| is_prime(m)).expect("primes are unbounded")
}

/// `{±1, ..., ±k}` in `g`.
fn symmetric_interval(g: &GroupSpec, k: u64) -> Result<ElementSet> {
    ElementSet::from_residues(g, (1..=k as i64).flat_map(|i| [i, -i]))
}

pub fn construction_family(kind: ConstructionKind, param: u64) -> Result<Construction> {
    match kind {
        ConstructionKind::Interval => {
            if param == 0 {
                return Err(Error::BelowDomain("interval family needs n >= 1".into()));
            }
            let n = param;
            let big_n = next_prime_above(2 * n * (n + 1));
            let g = GroupSpec::cyclic(big_n)?;
            let a = symmetric_interval(&g, n)?;
            let span = sigma(&a);
            let checks = vec![
                ("|A| = 2n".into(), a.len() as u64 == 2 * n),
                ("|Σ(A)| = n(n+1)+1".into(), span.len() as u64 == n * (n + 1) + 1),
                ("stab(Σ(A)) trivial".into(), has_trivial_stabilizer(&span)),
            ];
            Ok(Construction { kind, param, group: g, set: a, sigma: span, checks })
        }
        ConstructionKind::UnitIntervalPsq => {
            let p = param;
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if p == 2 {
                return Err(Error::BelowDomain("p must be an odd prime".into()));
            }
            let n = p * p;
            let g = GroupSpec::cyclic(n)?;
            let a = symmetric_interval(&g, p - 1)?;
            let span = sigma(&a);
            let probe = Element((p * (p - 1) / 2 + 1) as usize);
            let checks = vec![
                ("A ⊆ units".into(), a.iter().all(|x| (x.index() as u64).gcd(&n) == 1)),
                ("|A| = 2p-2".into(), a.len() as u64 == 2 * p - 2),
                ("Σ(A) ≠ Z_{p²}".into(), !span.is_full()),
                ("p(p-1)/2+1 ∉ Σ(A)".into(), !span.contains(probe)),
            ];
            Ok(Construction { kind, param, group: g, set: a, sigma: span, checks })
        }
    }
}
