//! Exact Chamberlin-Courant and Monroe winner determination on
//! single-crossing profiles and profiles of bounded single-crossing width,
//! with exhaustive reference solvers, domain checks, and the construction
//! showing utilitarian Monroe stays hard on single-crossing profiles.

pub mod acceptance;
pub mod cc;
pub mod domains;
pub mod error;
pub mod instances;
pub mod model;
pub mod monroe;
pub mod oracle;
pub mod profile_io;
pub mod reduction;

pub use cc::{solve_cc, solve_cc_width};
pub use error::{Error, Result};
pub use model::*;
pub use monroe::{solve_monroe_contiguous, solve_monroe_egalitarian_sc_narcissistic};
pub use oracle::{
    best_contiguous_bruteforce, optimal_balanced_assignment, solve_cc_bruteforce,
    solve_monroe_bruteforce, Oracle,
};

/// Table sentinel for unreachable states.
pub(crate) const INF: u64 = u64::MAX;

/// Scores `assignment`, checks it against `rule`, and packages the result.
pub(crate) fn finish(
    election: &Election,
    assignment: Assignment,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
    rule: Rule,
    diagnostics: Diagnostics,
) -> Result<SolveResult> {
    let report = validate_assignment(election, &assignment, rule);
    if !report.valid {
        return Err(Error::Internal(format!(
            "{} produced an invalid {rule} assignment: {:?}",
            diagnostics.solver, report.violations
        )));
    }
    let objective = score(election, &assignment, alpha, agg)?;
    Ok(SolveResult {
        assignment,
        objective,
        rule,
        aggregator: agg,
        diagnostics,
    })
}
