//! Monroe winner determination over contiguous, candidate-ordered voter
//! blocks.
//!
//! Every block has `floor(n/k)` or `ceil(n/k)` voters. For the egalitarian
//! objective on single-crossing narcissistic profiles this class contains an
//! optimal Monroe assignment, so the table below is exact there; on other
//! inputs (or with the sum aggregator) it is optimal only within the class.

use std::collections::VecDeque;
use std::time::Instant;

use crate::domains::{check_narcissistic, check_single_crossing};
use crate::error::{Error, Result};
use crate::model::{
    Aggregator, Assignment, CandidateId, Diagnostics, DissatisfactionFunction, Election, Rule,
    SolveResult,
};
use crate::{finish, INF};

/// Worst (largest) position of each candidate over every window of `len`
/// consecutive voters.
pub struct WorstPosWindow {
    len: usize,
    // worst[c][i - len] covers voters i-len+1..=i (1-based)
    worst: Vec<Vec<usize>>,
}

impl WorstPosWindow {
    /// Sliding maximum with a monotone deque, O(nm) overall.
    pub fn new(election: &Election, len: usize) -> Self {
        let n = election.n();
        let worst = election
            .candidates()
            .map(|c| {
                if len == 0 || len > n {
                    return Vec::new();
                }
                let mut out = Vec::with_capacity(n + 1 - len);
                let mut queue: VecDeque<usize> = VecDeque::new();
                for v in 0..n {
                    let p = election.position(v, c);
                    while queue.back().is_some_and(|&u| election.position(u, c) <= p) {
                        queue.pop_back();
                    }
                    queue.push_back(v);
                    if queue[0] + len <= v {
                        queue.pop_front();
                    }
                    if v + 1 >= len {
                        out.push(election.position(queue[0], c));
                    }
                }
                out
            })
            .collect();
        WorstPosWindow { len, worst }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Worst position of `c` among voters `end-len+1..=end` (1-based).
    pub fn worst(&self, c: CandidateId, end: usize) -> usize {
        self.worst[c.0][end - self.len]
    }
}

/// Cost of giving one block of a fixed length to a candidate.
enum WindowCost {
    Worst(WorstPosWindow),
    Sum { len: usize, prefix: Vec<Vec<u64>> },
}

impl WindowCost {
    fn new(
        election: &Election,
        len: usize,
        alpha: &DissatisfactionFunction,
        agg: Aggregator,
    ) -> Self {
        match agg {
            Aggregator::Max => WindowCost::Worst(WorstPosWindow::new(election, len)),
            Aggregator::Sum => WindowCost::Sum {
                len,
                prefix: election
                    .candidates()
                    .map(|c| {
                        let mut acc = 0u64;
                        std::iter::once(0)
                            .chain((0..election.n()).map(|v| {
                                acc += alpha.eval(election.position(v, c));
                                acc
                            }))
                            .collect()
                    })
                    .collect(),
            },
        }
    }

    #[inline]
    fn cost(&self, alpha: &DissatisfactionFunction, c: CandidateId, end: usize) -> u64 {
        match self {
            WindowCost::Worst(w) => alpha.eval(w.worst(c, end)),
            WindowCost::Sum { len, prefix } => prefix[c.0][end] - prefix[c.0][end - len],
        }
    }
}

fn check_k(k: usize, m: usize, n: usize) -> Result<()> {
    if k == 0 || k > m || k > n {
        return Err(Error::invalid(format!(
            "committee size {k} outside 1..={}",
            m.min(n)
        )));
    }
    Ok(())
}

/// Optimal egalitarian `k`-Monroe assignment for a single-crossing
/// narcissistic election. Runs in O(n m^2 k), O(n m^2) when `k` divides `n`.
pub fn solve_monroe_egalitarian_sc_narcissistic(
    election: &Election,
    k: usize,
    alpha: &DissatisfactionFunction,
) -> Result<SolveResult> {
    check_k(k, election.m(), election.n())?;
    if !check_single_crossing(election) {
        return Err(Error::domain(
            "election is not single-crossing in the given voter order",
        ));
    }
    if !check_narcissistic(election) {
        return Err(Error::domain("election is not narcissistic"));
    }
    contiguous_dp(
        election,
        k,
        alpha,
        Aggregator::Max,
        "monroe-egalitarian-sc-narcissistic-dp",
    )
}

/// Best Monroe assignment whose blocks are contiguous voter intervals
/// following the first voter's candidate order. No domain precondition.
pub fn solve_monroe_contiguous(
    election: &Election,
    k: usize,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
) -> Result<SolveResult> {
    check_k(k, election.m(), election.n())?;
    contiguous_dp(election, k, alpha, agg, "monroe-contiguous-dp")
}

fn contiguous_dp(
    election: &Election,
    k: usize,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
    solver: &str,
) -> Result<SolveResult> {
    let start = Instant::now();
    let (n, m) = (election.n(), election.m());
    alpha.check_candidates(m)?;
    let order: Vec<CandidateId> = election.voter(0).ranking().to_vec();
    let (short, long) = (n / k, n.div_ceil(k));
    let lens: Vec<usize> = if short == long {
        vec![short]
    } else {
        vec![short, long]
    };
    let windows: Vec<WindowCost> = lens
        .iter()
        .map(|&len| WindowCost::new(election, len, alpha, agg))
        .collect();

    // value[(t, j, i)]: t blocks over voters 1..=i using candidates among the first j
    let idx = |t: usize, j: usize, i: usize| (t * (m + 1) + j) * (n + 1) + i;
    let mut value = vec![INF; (k + 1) * (m + 1) * (n + 1)];
    // packed (j' << 1 | window index) of the last block
    let mut choice = vec![u32::MAX; value.len()];
    for j in 0..=m {
        value[idx(0, j, 0)] = 0;
    }
    for t in 1..=k {
        // t blocks cover between t*short and t*long voters
        for i in (t * short).max(1)..=(t * long).min(n) {
            for j in 1..=m {
                let mut best = (INF, u32::MAX);
                for (w, (&len, window)) in lens.iter().zip(&windows).enumerate() {
                    if len > i {
                        continue;
                    }
                    for jp in 1..=j {
                        let prev = value[idx(t - 1, jp - 1, i - len)];
                        if prev == INF {
                            continue;
                        }
                        let v = agg.combine(prev, window.cost(alpha, order[jp - 1], i));
                        if v < best.0 {
                            best = (v, ((jp as u32) << 1) | w as u32);
                        }
                    }
                }
                value[idx(t, j, i)] = best.0;
                choice[idx(t, j, i)] = best.1;
            }
        }
    }
    let optimum = value[idx(k, m, n)];
    if optimum == INF {
        return Err(Error::Internal(format!(
            "no balanced contiguous assignment for n={n}, k={k}"
        )));
    }

    let mut rep_of = vec![CandidateId(0); n];
    let (mut i, mut j) = (n, m);
    for t in (1..=k).rev() {
        let packed = choice[idx(t, j, i)];
        let (jp, len) = ((packed >> 1) as usize, lens[(packed & 1) as usize]);
        rep_of[i - len..i].fill(order[jp - 1]);
        i -= len;
        j = jp - 1;
    }
    let result = finish(
        election,
        Assignment::new(rep_of, k),
        alpha,
        agg,
        Rule::Monroe,
        Diagnostics {
            solver: solver.into(),
            elapsed: start.elapsed(),
            table_dims: Some(vec![n + 1, m + 1, k + 1]),
        },
    )?;
    if result.objective != optimum {
        return Err(Error::Internal(format!(
            "reconstructed objective {} differs from table optimum {optimum}",
            result.objective
        )));
    }
    Ok(result)
}
