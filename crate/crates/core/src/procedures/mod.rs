//! Constructive procedures: bipartition, multiplicity decomposition, greedy growth and
//! the Olson pipeline for unit subsets of `Z_n`.

mod bipartition;
mod decomposition;
mod growth;
mod lemmas;
mod olson;

pub use bipartition::antisymmetric_bipartition;
pub use decomposition::{multiplicity_decomposition, DecompositionReport, FactorizationCheck};
pub use growth::{
    annotate_stages, deficiency_trace, greedy_grow, stage_bound_audit, stage_marks, AuditRow, GrowthCertificate,
    GrowthStep, StageSchedule, StopRule,
};
pub use lemmas::{averaging_lemma, eighth_lemma, expansion_lemma, increment_lemma, LemmaVerdict};
pub use olson::{olson_pipeline, olson_test_set, symmetric_unit_set, CoverMethod, OlsonOutcome};
