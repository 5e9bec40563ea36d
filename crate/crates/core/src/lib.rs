//! Subset-sum machinery over finite abelian groups.
//!
//! * [`group`]: groups `Z_{n_1} x ... x Z_{n_k}`, subgroups, quotients.
//! * [`setops`]: bitset subsets, `Σ(A)`, stabilizers, `λ`, `ρ`, deficiency.
//! * [`bounds`]: the `n_k`, `α_k` sequences, the bound functions and the Kneser checker.
//! * [`procedures`]: bipartition, multiplicity decomposition, greedy growth, the Olson pipeline.
//! * [`search`]: exhaustive and sampled extremal searches and the small-case oracles.
//! * [`report`]: CSV / JSON emission and set files.

pub mod error;
pub mod group;
pub mod setops;
pub mod bounds;
pub mod procedures;
pub mod search;
pub mod report;

pub use error::{Error, Result};
pub use group::{make_group, Element, GroupSpec, QuotientView, Subgroup};
pub use setops::ElementSet;
