use std::collections::HashMap;

use super::flow::FlowNetwork;
use crate::error::{Error, Result};
use crate::model::{Aggregator, Assignment, CandidateId, DissatisfactionFunction, Election};

/// Transportation network for a fixed committee: identical votes are merged
/// into one supply node.
///
/// Every member has an arc of capacity `floor(n/k)` to the sink and an arc of
/// capacity one into a shared pool of capacity `n mod k`. Sink capacity is
/// exactly `n`, so a flow of value `n` saturates every member's floor arc and
/// meets the lower bound without lower-bounded flow machinery.
struct Transport {
    net: FlowNetwork,
    source: usize,
    sink: usize,
    // voter indices per merged vote, in voter order
    groups: Vec<Vec<usize>>,
    // (group, member slot, arc id, dissatisfaction)
    links: Vec<(usize, usize, usize, u64)>,
}

impl Transport {
    fn build(
        election: &Election,
        committee: &[CandidateId],
        alpha: &DissatisfactionFunction,
        threshold: Option<u64>,
    ) -> Self {
        let (n, k) = (election.n(), committee.len());
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut group_of: HashMap<&[CandidateId], usize> = HashMap::new();
        for (i, v) in election.voters().iter().enumerate() {
            let g = *group_of.entry(v.ranking()).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(i);
        }
        let g = groups.len();
        let (source, pool, sink) = (0, g + k + 1, g + k + 2);
        let mut net = FlowNetwork::new(g + k + 3);
        let mut links = Vec::with_capacity(g * k);
        for (gi, members) in groups.iter().enumerate() {
            let supply = members.len() as i64;
            net.add_arc(source, 1 + gi, supply, 0);
            let voter = members[0];
            for (slot, &c) in committee.iter().enumerate() {
                let cost = alpha.eval(election.position(voter, c));
                if threshold.is_some_and(|t| cost > t) {
                    continue;
                }
                let arc = net.add_arc(1 + gi, 1 + g + slot, supply, cost as i64);
                links.push((gi, slot, arc, cost));
            }
        }
        let (floor, extra) = (n / k, n % k);
        for slot in 0..k {
            net.add_arc(1 + g + slot, sink, floor as i64, 0);
            if extra > 0 {
                net.add_arc(1 + g + slot, pool, 1, 0);
            }
        }
        if extra > 0 {
            net.add_arc(pool, sink, extra as i64, 0);
        }
        Transport {
            net,
            source,
            sink,
            groups,
            links,
        }
    }

    /// Hands out each merged vote's flow to its voters in voter order and
    /// members in committee order.
    fn decompose(&self, committee: &[CandidateId], k: usize) -> Assignment {
        let n = self.groups.iter().map(Vec::len).sum();
        let mut rep_of = vec![CandidateId(0); n];
        let mut cursor = vec![0usize; self.groups.len()];
        for &(g, slot, arc, _) in &self.links {
            for _ in 0..self.net.flow(arc) {
                rep_of[self.groups[g][cursor[g]]] = committee[slot];
                cursor[g] += 1;
            }
        }
        Assignment::new(rep_of, k)
    }
}

/// Best Monroe-valid assignment that uses exactly the given committee.
///
/// The sum objective comes from a min-cost flow. The max objective comes
/// from a binary search over the distinct dissatisfaction values with a
/// max-flow feasibility test, followed by a min-cost flow over the arcs
/// within the optimal threshold.
pub fn optimal_balanced_assignment(
    election: &Election,
    committee: &[CandidateId],
    k: usize,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
) -> Result<Option<Assignment>> {
    let (n, m) = (election.n(), election.m());
    alpha.check_candidates(m)?;
    if committee.len() != k {
        return Err(Error::invalid(format!(
            "committee has {} members, expected {k}",
            committee.len()
        )));
    }
    if k == 0 || k > n {
        return Err(Error::invalid(format!(
            "committee size {k} outside 1..={n}"
        )));
    }
    let mut sorted = committee.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.iter().any(|c| c.0 >= m) {
        return Err(Error::invalid(
            "committee members must be distinct candidates",
        ));
    }

    let threshold = match agg {
        Aggregator::Sum => None,
        Aggregator::Max => {
            let mut values: Vec<u64> = election
                .voters()
                .iter()
                .flat_map(|v| committee.iter().map(move |&c| alpha.eval(v.position(c))))
                .collect();
            values.sort_unstable();
            values.dedup();
            // the largest value admits every arc, which is always feasible
            let (mut lo, mut hi) = (0, values.len() - 1);
            while lo < hi {
                let mid = (lo + hi) / 2;
                let mut t = Transport::build(election, committee, alpha, Some(values[mid]));
                if t.net.max_flow(t.source, t.sink) == n as i64 {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            Some(values[lo])
        }
    };
    let mut transport = Transport::build(election, committee, alpha, threshold);
    let (s, t) = (transport.source, transport.sink);
    let flow = transport.net.min_cost_flow(s, t, n as i64);
    if flow != n as i64 {
        return Ok(None);
    }
    Ok(Some(transport.decompose(committee, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{score, validate_assignment, Rule};

    #[test]
    fn forced_balance_moves_a_voter() {
        // all three prefer a; k = 3 forces one voter each
        let e = Election::from_letters("abc", &["abc", "abc", "acb"]).unwrap();
        let committee: Vec<CandidateId> = (0..3).map(CandidateId).collect();
        let borda = DissatisfactionFunction::borda(3);
        let a = optimal_balanced_assignment(&e, &committee, 3, &borda, Aggregator::Sum)
            .unwrap()
            .unwrap();
        assert!(validate_assignment(&e, &a, Rule::Monroe).valid);
        // a:0, then b and c at positions 2 for some voter: voter 3 takes c (1), one of 1/2 takes b (1)
        assert_eq!(score(&e, &a, &borda, Aggregator::Sum).unwrap(), 2);
        let a = optimal_balanced_assignment(&e, &committee, 3, &borda, Aggregator::Max)
            .unwrap()
            .unwrap();
        assert_eq!(score(&e, &a, &borda, Aggregator::Max).unwrap(), 1);
    }

    #[test]
    fn uneven_loads_respect_bounds() {
        let e = Election::from_letters("ab", &["ab"; 5]).unwrap();
        let committee = [CandidateId(0), CandidateId(1)];
        let borda = DissatisfactionFunction::borda(2);
        let a = optimal_balanced_assignment(&e, &committee, 2, &borda, Aggregator::Sum)
            .unwrap()
            .unwrap();
        assert_eq!(a.loads(2), vec![3, 2]);
    }

    #[test]
    fn rejects_wrong_committee() {
        let e = Election::from_letters("ab", &["ab", "ba"]).unwrap();
        let borda = DissatisfactionFunction::borda(2);
        assert!(
            optimal_balanced_assignment(&e, &[CandidateId(0)], 2, &borda, Aggregator::Sum).is_err()
        );
        assert!(optimal_balanced_assignment(
            &e,
            &[CandidateId(0), CandidateId(0)],
            2,
            &borda,
            Aggregator::Sum
        )
        .is_err());
    }
}
