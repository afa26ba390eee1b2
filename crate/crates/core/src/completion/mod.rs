//! Positive semidefinite completion of partial Hermitian matrices over
//! chordal patterns, plus empirical checks of the completion's uniqueness
//! properties.

mod engine;
mod partial;
mod verify;

pub use engine::{
    complete, complete_along, complete_edge, explicit_block_pinv, rank_additivity_check,
    CompletionReport, MergeRecord,
};
pub use partial::{PartialHermitianMatrix, TriPartition};
pub use verify::{
    verify_det_maximality, verify_pinv_zero_pattern, MaximalityReport, MaximalityStatus,
    MaximalityViolation, ZeroPatternReport,
};
