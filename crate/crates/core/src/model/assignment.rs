use std::collections::BTreeSet;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{Aggregator, CandidateId, DissatisfactionFunction, Election};
use crate::error::{Error, Result};

/// Which proportional representation rule an assignment is judged under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    ChamberlinCourant,
    Monroe,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::ChamberlinCourant => "cc",
            Rule::Monroe => "monroe",
        })
    }
}

/// A voter-to-representative map for a target committee size `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    rep_of: Vec<CandidateId>,
    k: usize,
}

impl Assignment {
    pub fn new(rep_of: Vec<CandidateId>, k: usize) -> Self {
        Assignment { rep_of, k }
    }

    pub fn from_indices(rep_of: &[usize], k: usize) -> Self {
        Self::new(rep_of.iter().copied().map(CandidateId).collect(), k)
    }

    pub fn rep_of(&self) -> &[CandidateId] {
        &self.rep_of
    }

    pub fn rep(&self, voter: usize) -> CandidateId {
        self.rep_of[voter]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.rep_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep_of.is_empty()
    }

    /// The set of candidates representing at least one voter.
    pub fn committee(&self) -> BTreeSet<CandidateId> {
        self.rep_of.iter().copied().collect()
    }

    /// Number of voters represented by each candidate (length `m`).
    pub fn loads(&self, m: usize) -> Vec<usize> {
        let mut loads = vec![0; m];
        for c in &self.rep_of {
            if c.0 < m {
                loads[c.0] += 1;
            }
        }
        loads
    }
}

/// Aggregated dissatisfaction of `assignment` in `election`.
pub fn score(
    election: &Election,
    assignment: &Assignment,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
) -> Result<u64> {
    if assignment.len() != election.n() {
        return Err(Error::invalid(format!(
            "assignment covers {} voters, election has {}",
            assignment.len(),
            election.n()
        )));
    }
    alpha.check_candidates(election.m())?;
    if let Some(c) = assignment.rep_of().iter().find(|c| c.0 >= election.m()) {
        return Err(Error::invalid(format!(
            "assignment uses candidate {} of {}",
            c.0,
            election.m()
        )));
    }
    Ok(agg.aggregate(
        assignment
            .rep_of()
            .iter()
            .enumerate()
            .map(|(i, &c)| alpha.eval(election.position(i, c))),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    VoterCountMismatch {
        assigned: usize,
        voters: usize,
    },
    UnknownCandidate {
        voter: usize,
        candidate: usize,
    },
    CommitteeTooLarge {
        size: usize,
        k: usize,
    },
    CommitteeSizeMismatch {
        size: usize,
        k: usize,
    },
    Unbalanced {
        candidate: usize,
        load: usize,
        lower: usize,
        upper: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VoterCountMismatch { assigned, voters } => {
                write!(
                    f,
                    "assignment covers {assigned} voters, election has {voters}"
                )
            }
            Violation::UnknownCandidate { voter, candidate } => {
                write!(
                    f,
                    "voter {} assigned unknown candidate {}",
                    voter + 1,
                    candidate + 1
                )
            }
            Violation::CommitteeTooLarge { size, k } => {
                write!(f, "committee has {size} members, at most {k} allowed")
            }
            Violation::CommitteeSizeMismatch { size, k } => {
                write!(f, "committee has {size} members, exactly {k} required")
            }
            Violation::Unbalanced {
                candidate,
                load,
                lower,
                upper,
            } => write!(
                f,
                "candidate {} represents {load} voters, allowed range [{lower}, {upper}]",
                candidate + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks the committee-size and (for Monroe) balance constraints.
pub fn validate_assignment(
    election: &Election,
    assignment: &Assignment,
    rule: Rule,
) -> ValidationReport {
    let (n, m, k) = (election.n(), election.m(), assignment.k());
    let mut violations = Vec::new();
    if assignment.len() != n {
        violations.push(Violation::VoterCountMismatch {
            assigned: assignment.len(),
            voters: n,
        });
    }
    for (voter, c) in assignment.rep_of().iter().enumerate() {
        if c.0 >= m {
            violations.push(Violation::UnknownCandidate {
                voter,
                candidate: c.0,
            });
        }
    }
    let size = assignment.committee().len();
    match rule {
        Rule::ChamberlinCourant => {
            if size > k {
                violations.push(Violation::CommitteeTooLarge { size, k });
            }
        }
        Rule::Monroe => {
            if size != k {
                violations.push(Violation::CommitteeSizeMismatch { size, k });
            }
            if let Some(lower) = n.checked_div(k) {
                let upper = n.div_ceil(k);
                for (candidate, &load) in assignment.loads(m).iter().enumerate() {
                    if load > 0 && (load < lower || load > upper) {
                        violations.push(Violation::Unbalanced {
                            candidate,
                            load,
                            lower,
                            upper,
                        });
                    }
                }
            }
        }
    }
    ValidationReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// A maximal run of consecutive voters sharing a representative.
/// Voter indices are 1-based and inclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub candidate: CandidateId,
    pub first: usize,
    pub last: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContiguityReport {
    /// Every representative's voters form one interval, and the intervals
    /// follow the first voter's ranking of the representatives.
    pub contiguous: bool,
    pub blocks: Vec<Block>,
}

pub fn contiguity_report(election: &Election, assignment: &Assignment) -> ContiguityReport {
    let mut blocks: Vec<Block> = Vec::new();
    for (i, &c) in assignment.rep_of().iter().enumerate() {
        match blocks.last_mut() {
            Some(b) if b.candidate == c => b.last = i + 1,
            _ => blocks.push(Block {
                candidate: c,
                first: i + 1,
                last: i + 1,
            }),
        }
    }
    let distinct = blocks.len() == assignment.committee().len();
    let ordered = assignment.len() == election.n()
        && blocks.iter().all(|b| b.candidate.0 < election.m())
        && blocks.windows(2).all(|w| {
            let first = election.voter(0);
            first.prefers(w[0].candidate, w[1].candidate)
        });
    ContiguityReport {
        contiguous: distinct && ordered,
        blocks,
    }
}

/// Solver bookkeeping attached to every result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub solver: String,
    #[serde(skip)]
    pub elapsed: Duration,
    /// Dimensions of the dynamic-programming table, when one was built.
    pub table_dims: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub assignment: Assignment,
    pub objective: u64,
    pub rule: Rule,
    pub aggregator: Aggregator,
    pub diagnostics: Diagnostics,
}

impl SolveResult {
    pub fn committee(&self) -> BTreeSet<CandidateId> {
        self.assignment.committee()
    }

    /// Committee as sorted candidate names.
    pub fn committee_names(&self, election: &Election) -> Vec<String> {
        self.committee()
            .into_iter()
            .map(|c| election.name(c).to_string())
            .collect()
    }
}

/// Reassigns every voter to her favorite member of the assignment's
/// committee. Never increases the CC objective.
pub fn assign_favorites(
    election: &Election,
    committee: &BTreeSet<CandidateId>,
    k: usize,
) -> Assignment {
    let rep_of = election
        .voters()
        .iter()
        .map(|v| {
            *committee
                .iter()
                .min_by_key(|&&c| v.position(c))
                .expect("nonempty committee")
        })
        .collect();
    Assignment::new(rep_of, k)
}
