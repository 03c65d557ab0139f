//! Exact Chamberlin-Courant winner determination on single-crossing
//! profiles, and on profiles that become single-crossing after contracting
//! a given clone partition.
//!
//! Both solvers rest on the same structural fact: some optimal assignment
//! gives every representative (or every clone set) a contiguous interval of
//! voters, with the intervals following the first voter's ranking. The table
//! `A[t][j][i]` holds the best objective for the first `i` voters using at
//! most `t` seats among the first `j` candidates (or clone sets) of that
//! ranking. Dissatisfaction is always evaluated at positions in the full
//! candidate set.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::domains::{
    check_single_crossing, contract_clones, verify_clone_partition, ClonePartition,
};
use crate::error::{Error, Result};
use crate::model::{
    assign_favorites, Aggregator, CandidateId, Diagnostics, DissatisfactionFunction, Election,
    Rule, SolveResult,
};
use crate::{finish, INF};

const SKIP: u32 = u32::MAX;

/// Dense `(k+1) x (m+1) x (n+1)` table of objective values with the split
/// chosen for each entry.
pub struct CcDpTable {
    n: usize,
    m: usize,
    k: usize,
    value: Vec<u64>,
    // SKIP when the entry copies A[t][j-1][i]; otherwise the split voter i*
    split: Vec<u32>,
    // subset chosen by the width solver, unused otherwise
    subset: Vec<u32>,
}

impl CcDpTable {
    fn new(n: usize, m: usize, k: usize) -> Self {
        let len = (k + 1) * (m + 1) * (n + 1);
        let mut table = CcDpTable {
            n,
            m,
            k,
            value: vec![INF; len],
            split: vec![SKIP; len],
            subset: vec![0; len],
        };
        for t in 0..=k {
            for j in 0..=m {
                let at = table.idx(t, j, 0);
                table.value[at] = 0;
            }
        }
        table
    }

    #[inline]
    fn idx(&self, t: usize, j: usize, i: usize) -> usize {
        (t * (self.m + 1) + j) * (self.n + 1) + i
    }

    #[inline]
    fn row(&self, t: usize, j: usize) -> &[u64] {
        let at = self.idx(t, j, 0);
        &self.value[at..at + self.n + 1]
    }

    /// Optimal objective for `i` voters, the first `j` candidates and at
    /// most `t` seats; `None` stands for infeasible.
    pub fn get(&self, i: usize, j: usize, t: usize) -> Option<u64> {
        let v = self.value[self.idx(t, j, i)];
        (v != INF).then_some(v)
    }

    pub fn dims(&self) -> Vec<usize> {
        vec![self.n + 1, self.m + 1, self.k + 1]
    }
}

/// Per-voter dissatisfaction with one representative (or one subset of a
/// clone set), with prefix sums for constant-time block sums.
struct BlockCosts {
    cost: Vec<u64>,
    prefix: Vec<u64>,
}

impl BlockCosts {
    fn new(cost: Vec<u64>) -> Self {
        let mut prefix = Vec::with_capacity(cost.len() + 1);
        prefix.push(0u64);
        let mut acc = 0u64;
        for &c in &cost {
            acc = acc.saturating_add(c);
            prefix.push(acc);
        }
        BlockCosts { cost, prefix }
    }

    /// Best split `i*` for a block ending at voter `i` (1-based) that
    /// extends the previous-level row `prev`. Ties go to the smaller `i*`.
    #[inline]
    fn best_split(&self, agg: Aggregator, prev: &[u64], i: usize) -> (u64, usize) {
        let mut best = (INF, 0);
        match agg {
            Aggregator::Sum => {
                let end = self.prefix[i];
                for (split, (&p, &start)) in prev[..i].iter().zip(&self.prefix[..i]).enumerate() {
                    if p != INF {
                        let v = p.saturating_add(end - start);
                        if v < best.0 {
                            best = (v, split);
                        }
                    }
                }
            }
            Aggregator::Max => {
                let mut worst = 0;
                for split in (0..i).rev() {
                    worst = worst.max(self.cost[split]);
                    let p = prev[split];
                    if p != INF {
                        let v = p.max(worst);
                        if v <= best.0 {
                            best = (v, split);
                        }
                    }
                }
            }
        }
        best
    }
}

fn check_k(k: usize, m: usize) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::invalid(format!(
            "committee size {k} outside 1..={m}"
        )));
    }
    Ok(())
}

/// Optimal `k`-CC assignment for a single-crossing election (voter order as
/// given). Runs in O(m n^2 k).
pub fn solve_cc(
    election: &Election,
    k: usize,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
) -> Result<SolveResult> {
    let start = Instant::now();
    let (n, m) = (election.n(), election.m());
    check_k(k, m)?;
    alpha.check_candidates(m)?;
    if !check_single_crossing(election) {
        return Err(Error::domain(
            "solve_cc needs a single-crossing voter order (try --auto-order)",
        ));
    }
    let order: Vec<CandidateId> = election.voter(0).ranking().to_vec();
    let costs: Vec<BlockCosts> = order
        .iter()
        .map(|&c| {
            BlockCosts::new(
                (0..n)
                    .map(|v| alpha.eval(election.position(v, c)))
                    .collect(),
            )
        })
        .collect();

    let mut table = CcDpTable::new(n, m, k);
    for t in 1..=k {
        for j in 1..=m {
            for i in 1..=n {
                let skip = table.value[table.idx(t, j - 1, i)];
                let (v, split) = costs[j - 1].best_split(agg, table.row(t - 1, j - 1), i);
                let at = table.idx(t, j, i);
                if v < skip {
                    table.value[at] = v;
                    table.split[at] = split as u32;
                } else {
                    table.value[at] = skip;
                }
            }
        }
    }
    let optimum = table
        .get(n, m, k)
        .ok_or_else(|| Error::Internal("CC table has no feasible entry".into()))?;

    let mut committee = BTreeSet::new();
    let (mut i, mut j, mut t) = (n, m, k);
    while i > 0 {
        let at = table.idx(t, j, i);
        let split = table.split[at];
        if split != SKIP {
            committee.insert(order[j - 1]);
            i = split as usize;
            t -= 1;
        }
        j -= 1;
    }
    let assignment = assign_favorites(election, &committee, k);
    let result = finish(
        election,
        assignment,
        alpha,
        agg,
        Rule::ChamberlinCourant,
        Diagnostics {
            solver: "cc-single-crossing-dp".into(),
            elapsed: start.elapsed(),
            table_dims: Some(table.dims()),
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

/// Optimal `k`-CC assignment for an election whose contraction by
/// `partition` is single-crossing. Runs in O(s 2^w n^2 k) for `s` clone
/// sets of width at most `w`.
pub fn solve_cc_width(
    election: &Election,
    partition: &ClonePartition,
    k: usize,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
) -> Result<SolveResult> {
    let start = Instant::now();
    let (n, m) = (election.n(), election.m());
    check_k(k, m)?;
    alpha.check_candidates(m)?;
    if !verify_clone_partition(election, partition)? {
        return Err(Error::invalid(
            "partition sets are not clone sets of this election",
        ));
    }
    if !check_single_crossing(&contract_clones(election, partition)?) {
        return Err(Error::domain("contracted election is not single-crossing"));
    }
    if partition.width() > 24 {
        return Err(Error::SizeLimit {
            what: "clone set width",
            required: partition.width() as u128,
            limit: 24,
        });
    }
    // clone sets in the first voter's order
    let first = election.voter(0);
    let mut sets: Vec<Vec<CandidateId>> = partition.sets().to_vec();
    sets.sort_by_key(|set| set.iter().map(|&c| first.position(c)).min());

    let mut table = CcDpTable::new(n, sets.len(), k);
    for (j, set) in sets.iter().enumerate().map(|(j, s)| (j + 1, s)) {
        let subsets: Vec<(u32, usize, BlockCosts)> = (1u32..(1 << set.len()))
            .map(|mask| {
                let cost = (0..n)
                    .map(|v| {
                        let best = members(set, mask).map(|c| election.position(v, c)).min();
                        alpha.eval(best.expect("nonempty subset"))
                    })
                    .collect();
                (mask, mask.count_ones() as usize, BlockCosts::new(cost))
            })
            .collect();
        for t in 1..=k {
            for i in 1..=n {
                let mut best = (table.value[table.idx(t, j - 1, i)], SKIP, 0u32);
                for (mask, size, costs) in &subsets {
                    if *size > t {
                        continue;
                    }
                    let (v, split) = costs.best_split(agg, table.row(t - size, j - 1), i);
                    if v < best.0 {
                        best = (v, split as u32, *mask);
                    }
                }
                let at = table.idx(t, j, i);
                table.value[at] = best.0;
                table.split[at] = best.1;
                table.subset[at] = best.2;
            }
        }
    }
    let optimum = table
        .get(n, sets.len(), k)
        .ok_or_else(|| Error::Internal("width table has no feasible entry".into()))?;

    let mut committee = BTreeSet::new();
    let (mut i, mut j, mut t) = (n, sets.len(), k);
    while i > 0 {
        let at = table.idx(t, j, i);
        if table.split[at] != SKIP {
            let mask = table.subset[at];
            committee.extend(members(&sets[j - 1], mask));
            i = table.split[at] as usize;
            t -= mask.count_ones() as usize;
        }
        j -= 1;
    }
    // members nobody prefers drop out of the image
    let assignment = assign_favorites(election, &committee, k);
    let result = finish(
        election,
        assignment,
        alpha,
        agg,
        Rule::ChamberlinCourant,
        Diagnostics {
            solver: "cc-clone-width-dp".into(),
            elapsed: start.elapsed(),
            table_dims: Some(table.dims()),
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

fn members(set: &[CandidateId], mask: u32) -> impl Iterator<Item = CandidateId> + '_ {
    set.iter()
        .enumerate()
        .filter(move |(b, _)| mask >> b & 1 == 1)
        .map(|(_, &c)| c)
}
