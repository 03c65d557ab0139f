//! Elections, dissatisfaction functions and assignments, plus the scoring
//! and validity checks every solver result is held to.

mod assignment;
mod dissatisfaction;
mod election;

pub use assignment::{
    assign_favorites, contiguity_report, score, validate_assignment, Assignment, Block,
    ContiguityReport, Diagnostics, Rule, SolveResult, ValidationReport, Violation,
};
pub use dissatisfaction::{Aggregator, AlphaKind, DissatisfactionFunction};
pub use election::{CandidateId, Election, PreferenceOrder};

pub(crate) use election::is_permutation;
