//! Recognition and verification of the restricted preference domains the
//! exact solvers rely on: single-crossing, narcissistic, single-peaked, and
//! clone partitions with their single-crossing width.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{is_permutation, CandidateId, Election, PreferenceOrder};

/// True iff, for every pair `a`, `b` with `a` above `b` in the first vote,
/// the voters preferring `a` to `b` form a prefix of the voter order.
pub fn check_single_crossing(election: &Election) -> bool {
    let m = election.m();
    let first = election.voter(0);
    // A pair may flip once; it must never flip back.
    election.voters().windows(2).all(|w| {
        let (prev, next) = (&w[0], &w[1]);
        prev == next
            || (0..m).all(|x| {
                let a = first.at(x + 1);
                (x + 1..m).all(|y| {
                    let b = first.at(y + 1);
                    !(prev.prefers(b, a) && next.prefers(a, b))
                })
            })
    })
}

/// Number of candidate pairs the two votes order differently.
pub fn swap_distance(u: &PreferenceOrder, v: &PreferenceOrder) -> usize {
    let r = u.ranking();
    let mut count = 0;
    for x in 0..r.len() {
        for y in x + 1..r.len() {
            if v.prefers(r[y], r[x]) {
                count += 1;
            }
        }
    }
    count
}

/// Finds a voter permutation under which the election is single-crossing.
///
/// Along a single-crossing order the swap distance is additive, so the voter
/// farthest from voter 1 is an end of some witness order; sorting every
/// voter by distance from that end yields the witness. The result is always
/// re-checked. A voter order that already works is returned unchanged.
pub fn find_single_crossing_order(election: &Election) -> Option<Vec<usize>> {
    let n = election.n();
    if check_single_crossing(election) {
        return Some((0..n).collect());
    }
    let voters = election.voters();
    let end = (0..n)
        .max_by_key(|&i| (swap_distance(&voters[0], &voters[i]), std::cmp::Reverse(i)))
        .expect("nonempty");
    // identical votes share the group of their first occurrence
    let group: Vec<usize> = (0..n)
        .map(|i| (0..=i).find(|&j| voters[j] == voters[i]).unwrap_or(i))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (swap_distance(&voters[end], &voters[i]), group[i], i));
    let candidate = election.reorder_voters(&order).ok()?;
    check_single_crossing(&candidate).then_some(order)
}

/// True iff every candidate is ranked first by at least one voter.
pub fn check_narcissistic(election: &Election) -> bool {
    let mut seen = vec![false; election.m()];
    for v in election.voters() {
        seen[v.top().0] = true;
    }
    seen.into_iter().all(|s| s)
}

/// A societal axis: a left-to-right ordering of all candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    order: Vec<CandidateId>,
}

impl Axis {
    pub fn new(order: Vec<CandidateId>) -> Self {
        Axis { order }
    }

    pub fn from_indices(order: &[usize]) -> Self {
        Self::new(order.iter().copied().map(CandidateId).collect())
    }

    pub fn order(&self) -> &[CandidateId] {
        &self.order
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Axis { order }
    }
}

/// True iff every vote is single-peaked with respect to `axis`: each prefix
/// of the vote occupies an interval of the axis around the voter's peak.
pub fn check_single_peaked_axis(election: &Election, axis: &Axis) -> Result<bool> {
    let m = election.m();
    let raw: Vec<usize> = axis.order.iter().map(|c| c.0).collect();
    if !is_permutation(&raw, m) {
        return Err(Error::invalid(
            "axis is not a permutation of the candidates",
        ));
    }
    let mut place = vec![0usize; m];
    for (p, &c) in raw.iter().enumerate() {
        place[c] = p;
    }
    Ok(election.voters().iter().all(|v| {
        let peak = place[v.top().0];
        let (mut left, mut right) = (peak, peak);
        v.ranking()[1..].iter().all(|c| {
            let p = place[c.0];
            if left > 0 && p == left - 1 {
                left -= 1;
                true
            } else if p == right + 1 {
                right += 1;
                true
            } else {
                false
            }
        })
    }))
}

/// Voter order induced by an axis: each vote is read as the string of its
/// candidates' axis positions, and voters are sorted lexicographically by
/// that string (stable, so equal votes keep their order).
pub fn axis_voter_order(election: &Election, axis: &Axis) -> Vec<usize> {
    let mut slot = vec![0; election.m()];
    for (p, c) in axis.order().iter().enumerate() {
        slot[c.0] = p;
    }
    let keys: Vec<Vec<usize>> = election
        .voters()
        .iter()
        .map(|v| v.ranking().iter().map(|c| slot[c.0]).collect())
        .collect();
    let mut order: Vec<usize> = (0..election.n()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    order
}

pub const DEFAULT_AXIS_MAX_M: usize = 8;

/// Tries every axis in lexicographic order and returns the first one the
/// election is single-peaked on.
pub fn find_single_peaked_axis_bruteforce(
    election: &Election,
    max_m: usize,
) -> Result<Option<Axis>> {
    Ok(single_peaked_axes(election, max_m, true)?
        .into_iter()
        .next())
}

/// Every axis (in lexicographic order) the election is single-peaked on.
pub fn all_single_peaked_axes(election: &Election, max_m: usize) -> Result<Vec<Axis>> {
    single_peaked_axes(election, max_m, false)
}

fn single_peaked_axes(election: &Election, max_m: usize, first_only: bool) -> Result<Vec<Axis>> {
    let m = election.m();
    if m > max_m {
        return Err(Error::SizeLimit {
            what: "axis enumeration (candidates)",
            required: m as u128,
            limit: max_m as u128,
        });
    }
    let mut found = Vec::new();
    for perm in (0..m).permutations(m) {
        let axis = Axis::from_indices(&perm);
        if check_single_peaked_axis(election, &axis)? {
            found.push(axis);
            if first_only {
                break;
            }
        }
    }
    Ok(found)
}

/// An ordered partition of the candidates into clone sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClonePartition {
    sets: Vec<Vec<CandidateId>>,
}

impl ClonePartition {
    /// Validates that `sets` are nonempty, pairwise disjoint and cover all
    /// `m` candidates.
    pub fn new(sets: Vec<Vec<CandidateId>>, m: usize) -> Result<Self> {
        let mut seen = vec![false; m];
        for set in &sets {
            if set.is_empty() {
                return Err(Error::invalid("clone partition contains an empty set"));
            }
            for c in set {
                if c.0 >= m {
                    return Err(Error::invalid(format!(
                        "clone set names unknown candidate {}",
                        c.0
                    )));
                }
                if seen[c.0] {
                    return Err(Error::invalid(format!(
                        "candidate {} appears in two clone sets",
                        c.0
                    )));
                }
                seen[c.0] = true;
            }
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return Err(Error::invalid(format!(
                "clone partition misses candidate {c}"
            )));
        }
        Ok(ClonePartition { sets })
    }

    pub fn from_indices(sets: &[Vec<usize>], m: usize) -> Result<Self> {
        Self::new(
            sets.iter()
                .map(|s| s.iter().copied().map(CandidateId).collect())
                .collect(),
            m,
        )
    }

    pub fn singletons(m: usize) -> Self {
        ClonePartition {
            sets: (0..m).map(|c| vec![CandidateId(c)]).collect(),
        }
    }

    pub fn whole(m: usize) -> Self {
        ClonePartition {
            sets: vec![(0..m).map(CandidateId).collect()],
        }
    }

    pub fn sets(&self) -> &[Vec<CandidateId>] {
        &self.sets
    }

    pub fn width(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn covers(&self, m: usize) -> Result<()> {
        Self::new(self.sets.clone(), m).map(|_| ())
    }
}

/// True iff every set of the partition occupies consecutive positions in
/// every vote.
pub fn verify_clone_partition(election: &Election, partition: &ClonePartition) -> Result<bool> {
    partition.covers(election.m())?;
    Ok(partition.sets().iter().all(|set| {
        election.voters().iter().all(|v| {
            let (lo, hi) = set
                .iter()
                .map(|&c| v.position(c))
                .fold((usize::MAX, 0), |(lo, hi), p| (lo.min(p), hi.max(p)));
            hi - lo + 1 == set.len()
        })
    }))
}

/// Collapses each clone set to a single candidate; candidate `i` of the
/// result stands for set `i` of the partition.
pub fn contract_clones(election: &Election, partition: &ClonePartition) -> Result<Election> {
    if !verify_clone_partition(election, partition)? {
        return Err(Error::invalid(
            "partition sets are not clone sets of this election",
        ));
    }
    let m = election.m();
    let mut set_of = vec![0usize; m];
    for (s, set) in partition.sets().iter().enumerate() {
        for c in set {
            set_of[c.0] = s;
        }
    }
    let names = partition
        .sets()
        .iter()
        .map(|set| {
            if set.len() == 1 {
                election.name(set[0]).to_string()
            } else {
                format!("{{{}}}", set.iter().map(|&c| election.name(c)).join(","))
            }
        })
        .collect();
    let rankings: Vec<Vec<usize>> = election
        .voters()
        .iter()
        .map(|v| v.ranking().iter().map(|c| set_of[c.0]).dedup().collect())
        .collect();
    Election::with_names(names, &rankings)
}

pub const DEFAULT_WIDTH_MAX_M: usize = 10;

/// Smallest single-crossing width by exhaustive search, with a witness
/// partition whose sets follow the first vote.
///
/// A clone set is consecutive in the first vote, so only the 2^(m-1) ways to
/// cut that vote into segments are examined.
pub fn compute_width_bruteforce(
    election: &Election,
    max_m: usize,
) -> Result<(usize, ClonePartition)> {
    let m = election.m();
    if m > max_m {
        return Err(Error::SizeLimit {
            what: "width enumeration (candidates)",
            required: m as u128,
            limit: max_m as u128,
        });
    }
    let first = election.voter(0).ranking();
    let mut best: Option<(usize, ClonePartition)> = None;
    for cuts in 0u64..(1u64 << (m - 1)) {
        let mut sets = vec![vec![first[0]]];
        for (p, &c) in first.iter().enumerate().skip(1) {
            if cuts >> (p - 1) & 1 == 1 {
                sets.push(vec![c]);
            } else {
                sets.last_mut().expect("nonempty").push(c);
            }
        }
        let partition = ClonePartition { sets };
        let width = partition.width();
        if best.as_ref().is_some_and(|(w, _)| *w <= width) {
            continue;
        }
        if verify_clone_partition(election, &partition)?
            && check_single_crossing(&contract_clones(election, &partition)?)
        {
            best = Some((width, partition));
        }
    }
    best.ok_or_else(|| Error::Internal("the one-set partition is always valid".into()))
}
