//! Exhaustive reference solvers. Every polynomial-time solver in this crate
//! is tested against these, and `solve_monroe_bruteforce` is the only exact
//! utilitarian Monroe solver.
//!
//! Enumeration sizes are checked against an explicit budget before any work
//! starts; an oversized request fails with [`Error::SizeLimit`].

mod balanced;
pub mod flow;

use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;

pub use balanced::optimal_balanced_assignment;

use crate::error::{Error, Result};
use crate::finish;
use crate::model::{
    assign_favorites, Aggregator, Assignment, CandidateId, Diagnostics, DissatisfactionFunction,
    Election, Rule, SolveResult,
};

type Span = (usize, usize);

pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Enumeration limits and parallelism for the exhaustive solvers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub budget: u128,
    /// Worker threads for committee enumeration; `None` uses rayon's default.
    pub threads: Option<usize>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_BUDGET,
            threads: None,
        }
    }
}

impl Oracle {
    pub fn with_budget(budget: u128) -> Self {
        Oracle {
            budget,
            ..Oracle::default()
        }
    }

    /// Reads `FPR_BUDGET` and `FPR_THREADS`, falling back to defaults.
    pub fn from_env() -> Result<Self> {
        let mut oracle = Oracle::default();
        if let Ok(v) = std::env::var("FPR_BUDGET") {
            oracle.budget = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("FPR_BUDGET must be an integer, got '{v}'")))?;
        }
        if let Ok(v) = std::env::var("FPR_THREADS") {
            let threads: usize = v.trim().parse().map_err(|_| {
                Error::invalid(format!("FPR_THREADS must be an integer, got '{v}'"))
            })?;
            oracle.threads = Some(threads.max(1));
        }
        Ok(oracle)
    }

    fn check_budget(&self, what: &'static str, required: u128) -> Result<()> {
        if required > self.budget {
            return Err(Error::SizeLimit {
                what,
                required,
                limit: self.budget,
            });
        }
        Ok(())
    }

    /// Evaluates every size-`k` committee (in lexicographic order) and keeps
    /// the first one with the smallest objective.
    fn best_committee<F>(
        &self,
        m: usize,
        k: usize,
        eval: F,
    ) -> Result<(Vec<CandidateId>, Assignment)>
    where
        F: Fn(&[CandidateId]) -> Result<(u64, Assignment)> + Sync,
    {
        self.check_budget("committee enumeration", binomial(m, k))?;
        let committees: Vec<Vec<CandidateId>> = (0..m).map(CandidateId).combinations(k).collect();
        let run = || {
            committees
                .par_iter()
                .map(|c| eval(c))
                .collect::<Vec<Result<(u64, Assignment)>>>()
        };
        let outcomes = match self.threads {
            Some(threads) => rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?
                .install(run),
            None => run(),
        };
        let mut best: Option<(u64, usize, Assignment)> = None;
        for (idx, outcome) in outcomes.into_iter().enumerate() {
            let (value, assignment) = outcome?;
            if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
                best = Some((value, idx, assignment));
            }
        }
        let (_, idx, assignment) =
            best.ok_or_else(|| Error::Internal("no committee evaluated".into()))?;
        Ok((committees[idx].clone(), assignment))
    }

    /// Optimal `k`-CC assignment by enumerating all size-`k` committees with
    /// each voter served by her favorite member.
    pub fn solve_cc(
        &self,
        election: &Election,
        k: usize,
        alpha: &DissatisfactionFunction,
        agg: Aggregator,
    ) -> Result<SolveResult> {
        let start = Instant::now();
        let m = election.m();
        if k == 0 || k > m {
            return Err(Error::invalid(format!(
                "committee size {k} outside 1..={m}"
            )));
        }
        alpha.check_candidates(m)?;
        // favorites are assigned once, for the winning committee only
        let (committee, _) = self.best_committee(m, k, |committee| {
            let value = agg.aggregate(election.voters().iter().map(|v| {
                alpha.eval(
                    committee
                        .iter()
                        .map(|&c| v.position(c))
                        .min()
                        .expect("k >= 1"),
                )
            }));
            Ok((value, Assignment::new(Vec::new(), k)))
        })?;
        let assignment = assign_favorites(election, &committee.into_iter().collect(), k);
        finish(
            election,
            assignment,
            alpha,
            agg,
            Rule::ChamberlinCourant,
            Diagnostics {
                solver: "cc-bruteforce".into(),
                elapsed: start.elapsed(),
                table_dims: None,
            },
        )
    }

    /// Optimal `k`-Monroe assignment: the best balanced assignment over all
    /// size-`k` committees.
    pub fn solve_monroe(
        &self,
        election: &Election,
        k: usize,
        alpha: &DissatisfactionFunction,
        agg: Aggregator,
    ) -> Result<SolveResult> {
        let start = Instant::now();
        let (n, m) = (election.n(), election.m());
        if k == 0 || k > m || k > n {
            return Err(Error::invalid(format!(
                "committee size {k} outside 1..={}",
                m.min(n)
            )));
        }
        alpha.check_candidates(m)?;
        let (_, assignment) = self.best_committee(m, k, |committee| {
            let assignment = optimal_balanced_assignment(election, committee, k, alpha, agg)?
                .ok_or_else(|| Error::Internal("balanced assignment must exist".into()))?;
            let value = crate::model::score(election, &assignment, alpha, agg)?;
            Ok((value, assignment))
        })?;
        finish(
            election,
            assignment,
            alpha,
            agg,
            Rule::Monroe,
            Diagnostics {
                solver: "monroe-bruteforce".into(),
                elapsed: start.elapsed(),
                table_dims: None,
            },
        )
    }

    /// Best assignment whose representatives each serve one contiguous
    /// interval of voters, with no restriction on the candidate order.
    ///
    /// Monroe: `k` intervals of the balanced sizes. CC: any split into at
    /// most `k` intervals. Representatives are pairwise distinct.
    pub fn best_contiguous(
        &self,
        election: &Election,
        k: usize,
        alpha: &DissatisfactionFunction,
        agg: Aggregator,
        rule: Rule,
    ) -> Result<SolveResult> {
        let start = Instant::now();
        let (n, m) = (election.n(), election.m());
        let limit = match rule {
            Rule::ChamberlinCourant => m,
            Rule::Monroe => m.min(n),
        };
        if k == 0 || k > limit {
            return Err(Error::invalid(format!(
                "committee size {k} outside 1..={limit}"
            )));
        }
        alpha.check_candidates(m)?;

        let structures: Vec<Vec<usize>> = match rule {
            Rule::Monroe => balanced_block_sizes(n, k),
            Rule::ChamberlinCourant => (1..=k.min(n)).flat_map(|t| compositions(n, t)).collect(),
        };
        let required: u128 = structures
            .iter()
            .map(|s| permutations_count(m, s.len()))
            .sum();
        self.check_budget("contiguous block enumeration", required)?;

        let cost = BlockCost::new(election, alpha, agg);
        // (objective, voter blocks as half-open ranges, candidate per block)
        let mut best: Option<(u64, Vec<Span>, Vec<usize>)> = None;
        for sizes in &structures {
            let mut blocks = Vec::with_capacity(sizes.len());
            let mut at = 0;
            for &s in sizes {
                blocks.push((at, at + s));
                at += s;
            }
            let mut chosen = Vec::with_capacity(blocks.len());
            let mut used = vec![false; m];
            let bound = best.as_ref().map_or(u64::MAX, |b| b.0);
            if let Some((value, reps)) =
                search_injection(&cost, agg, &blocks, &mut used, &mut chosen, 0, bound)
            {
                if best.as_ref().is_none_or(|b| value < b.0) {
                    best = Some((value, blocks.clone(), reps));
                }
            }
        }
        let (_, blocks, reps) =
            best.ok_or_else(|| Error::Internal("no contiguous structure evaluated".into()))?;
        let mut rep_of = vec![CandidateId(0); n];
        for ((lo, hi), c) in blocks.into_iter().zip(reps) {
            rep_of[lo..hi].fill(CandidateId(c));
        }
        finish(
            election,
            Assignment::new(rep_of, k),
            alpha,
            agg,
            rule,
            Diagnostics {
                solver: "best-contiguous-bruteforce".into(),
                elapsed: start.elapsed(),
                table_dims: None,
            },
        )
    }
}

/// Per-candidate prefix data for block costs over voter intervals.
struct BlockCost {
    // alpha values, [candidate][voter]
    values: Vec<Vec<u64>>,
    prefix: Vec<Vec<u64>>,
    agg: Aggregator,
}

impl BlockCost {
    fn new(election: &Election, alpha: &DissatisfactionFunction, agg: Aggregator) -> Self {
        let values: Vec<Vec<u64>> = election
            .candidates()
            .map(|c| {
                (0..election.n())
                    .map(|v| alpha.eval(election.position(v, c)))
                    .collect()
            })
            .collect();
        let prefix = values
            .iter()
            .map(|row| {
                let mut acc = 0;
                std::iter::once(0)
                    .chain(row.iter().map(|&x| {
                        acc += x;
                        acc
                    }))
                    .collect()
            })
            .collect();
        BlockCost {
            values,
            prefix,
            agg,
        }
    }

    fn cost(&self, c: usize, (lo, hi): (usize, usize)) -> u64 {
        match self.agg {
            Aggregator::Sum => self.prefix[c][hi] - self.prefix[c][lo],
            Aggregator::Max => self.values[c][lo..hi].iter().copied().max().unwrap_or(0),
        }
    }
}

/// Depth-first search over distinct representatives for `blocks`, returning
/// the first strictly-better-than-`bound` optimum in lexicographic order.
fn search_injection(
    cost: &BlockCost,
    agg: Aggregator,
    blocks: &[(usize, usize)],
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    partial: u64,
    bound: u64,
) -> Option<(u64, Vec<usize>)> {
    if partial >= bound {
        return None;
    }
    if chosen.len() == blocks.len() {
        return Some((partial, chosen.clone()));
    }
    let block = blocks[chosen.len()];
    let mut best: Option<(u64, Vec<usize>)> = None;
    for c in 0..used.len() {
        if used[c] {
            continue;
        }
        used[c] = true;
        chosen.push(c);
        let current = best.as_ref().map_or(bound, |b| b.0);
        let next = agg.combine(partial, cost.cost(c, block));
        if let Some(found) = search_injection(cost, agg, blocks, used, chosen, next, current) {
            best = Some(found);
        }
        chosen.pop();
        used[c] = false;
    }
    best
}

/// All orderings of `k` block sizes from `{floor(n/k), ceil(n/k)}` with
/// exactly `n mod k` long blocks.
fn balanced_block_sizes(n: usize, k: usize) -> Vec<Vec<usize>> {
    let (short, extra) = (n / k, n % k);
    (0..k)
        .combinations(extra)
        .map(|long| {
            (0..k)
                .map(|b| if long.contains(&b) { short + 1 } else { short })
                .collect()
        })
        .collect()
}

/// Ordered splits of `n` into `t` positive parts.
fn compositions(n: usize, t: usize) -> Vec<Vec<usize>> {
    (1..n)
        .combinations(t - 1)
        .map(|cuts| {
            let mut parts = Vec::with_capacity(t);
            let mut last = 0;
            for c in cuts.into_iter().chain(std::iter::once(n)) {
                parts.push(c - last);
                last = c;
            }
            parts
        })
        .collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn permutations_count(m: usize, t: usize) -> u128 {
    if t > m {
        return 0;
    }
    (0..t).fold(1u128, |acc, i| acc.saturating_mul((m - i) as u128))
}

/// [`Oracle::solve_cc`] with the default budget.
pub fn solve_cc_bruteforce(
    election: &Election,
    k: usize,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
) -> Result<SolveResult> {
    Oracle::default().solve_cc(election, k, alpha, agg)
}

/// [`Oracle::solve_monroe`] with the default budget.
pub fn solve_monroe_bruteforce(
    election: &Election,
    k: usize,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
) -> Result<SolveResult> {
    Oracle::default().solve_monroe(election, k, alpha, agg)
}

/// [`Oracle::best_contiguous`] with the default budget.
pub fn best_contiguous_bruteforce(
    election: &Election,
    k: usize,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
    rule: Rule,
) -> Result<SolveResult> {
    Oracle::default().best_contiguous(election, k, alpha, agg, rule)
}
