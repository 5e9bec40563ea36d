use num_integer::Integer;
use serde::Serialize;

use super::bipartition::antisymmetric_bipartition;
use super::growth::{annotate_stages, greedy_grow, GrowthCertificate, StageSchedule, StopRule};
use crate::bounds::{f3, Fixed};
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::setops::{sigma, ElementSet};

/// How `covers` was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMethod {
    /// Both halves exceeded `n/2`, so `Σ(A₁) + Σ(A₂) = Z_n`.
    Pigeonhole,
    /// A half stalled and `Σ(A)` was computed outright.
    Direct,
}

#[derive(Debug, Clone)]
pub struct OlsonOutcome {
    pub n: u64,
    pub covers: bool,
    pub method: CoverMethod,
    pub halves: (ElementSet, ElementSet),
    pub cert1: GrowthCertificate,
    pub cert2: GrowthCertificate,
    /// Smallest residue outside `Σ(A)`, when not covering.
    pub missing: Option<Element>,
    /// `|Σ(A)|`, known only on the direct path.
    pub sigma_size: Option<usize>,
}

fn check_units(n: u64, a: &ElementSet) -> Result<()> {
    let g = a.group();
    if !g.is_cyclic() || g.order() as u64 != n {
        return Err(Error::GroupMismatch(g.to_string(), format!("Z{n}")));
    }
    for x in a.iter() {
        if (x.index() as u64).gcd(&n) != 1 {
            return Err(Error::NotAUnit { element: g.format_element(x), modulus: n });
        }
    }
    Ok(())
}

/// Decides `Σ(A) = Z_n` for `A ⊆ Z_n*` by splitting `A` into antisymmetric halves and
/// growing each past `n/2`.
pub fn olson_pipeline(n: u64, a: &ElementSet) -> Result<OlsonOutcome> {
    check_units(n, a)?;
    let (a1, a2) = antisymmetric_bipartition(a)?;
    let stop = StopRule::SpanAbove(n as usize / 2);
    let (c1, c2) = rayon::join(|| greedy_grow(&a1, stop), || greedy_grow(&a2, stop));
    let (mut cert1, mut cert2) = (c1?, c2?);
    annotate_stages(&mut cert1, n, StageSchedule::ThreeStage);
    annotate_stages(&mut cert2, n, StageSchedule::ThreeStage);

    let (covers, method, missing, sigma_size) = if cert1.reached && cert2.reached {
        (true, CoverMethod::Pigeonhole, None, None)
    } else {
        let span = sigma(a);
        let missing = span.complement().min_element();
        (span.is_full(), CoverMethod::Direct, missing, Some(span.len()))
    };
    Ok(OlsonOutcome { n, covers, method, halves: (a1, a2), cert1, cert2, missing, sigma_size })
}

/// `{±u}` over the smallest units `u < n - u`, taken until at least `min_size` elements.
pub fn symmetric_unit_set(n: u64, min_size: usize) -> Result<ElementSet> {
    let g = GroupSpec::cyclic(n)?;
    let mut a = ElementSet::empty(&g);
    let mut u = 1u64;
    while a.len() < min_size && 2 * u < n {
        if u.gcd(&n) == 1 {
            a.insert(Element(u as usize));
            a.insert(Element((n - u) as usize));
        }
        u += 1;
    }
    if a.len() < min_size {
        return Err(Error::TooLarge { count: min_size as u128, limit: a.len() as u128 });
    }
    Ok(a)
}

/// `symmetric_unit_set` sized to `⌈f₃(n)√n⌉`.
pub fn olson_test_set(n: u64) -> Result<ElementSet> {
    let size = f3(n)?.mul(&Fixed::sqrt(n)).ceil();
    symmetric_unit_set(n, size as usize)
}
