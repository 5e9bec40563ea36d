//! Exhaustive and sampled searches, plus exact oracles used to cross-check the greedy
//! procedures and the quadratic bounds.

mod construct;
mod kernel;
mod oracles;
mod scan;

pub use construct::{construction_family, is_prime, next_prime_above, Construction, ConstructionKind};
pub use oracles::{
    exact_g_oracle, find_nontrivial_stab_witness, max_coprime_noncovering, nontrivial_stab_witnesses, olson_scan,
    CoprimeExtremum, COPRIME_MAX_PHI, G_ORACLE_LIMIT, WITNESS_MAX_ORDER,
};
pub use scan::{min_ratio_scan, SearchMeta, SearchReport, SearchRow, EXHAUSTIVE_MAX_ORDER};
