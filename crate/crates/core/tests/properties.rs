//! Randomized properties checked against small exhaustive searches written
//! independently of the library solvers.

use std::collections::BTreeSet;

use fpr::domains::{
    check_narcissistic, check_single_crossing, check_single_peaked_axis, contract_clones,
    find_single_crossing_order, find_single_peaked_axis_bruteforce, Axis, ClonePartition,
};
use fpr::instances::{gen_cloned_pairs, gen_random_sc_narcissistic, gen_random_single_crossing};
use fpr::profile_io::{parse_profile, profile_to_string};
use fpr::reduction::{build_adjustment_profile, build_rotation_profile, rotation_inverse};
use fpr::{
    best_contiguous_bruteforce, contiguity_report, optimal_balanced_assignment, score, solve_cc,
    solve_cc_bruteforce, solve_cc_width, solve_monroe_bruteforce, solve_monroe_contiguous,
    solve_monroe_egalitarian_sc_narcissistic, validate_assignment, Aggregator, Assignment,
    CandidateId, DissatisfactionFunction, Election, Oracle, Rule,
};
use proptest::prelude::*;

fn election_strategy(max_m: usize, max_n: usize) -> impl Strategy<Value = Election> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        proptest::collection::vec(Just((0..m).collect::<Vec<usize>>()).prop_shuffle(), n)
            .prop_map(move |rankings| Election::from_rankings(m, &rankings).unwrap())
    })
}

fn alphas(m: usize) -> Vec<DissatisfactionFunction> {
    vec![
        DissatisfactionFunction::borda(m),
        DissatisfactionFunction::t_approval(m, 2).unwrap(),
    ]
}

/// Pairwise definition: for each pair the voters agreeing with voter 1
/// form a prefix.
fn naive_single_crossing(e: &Election) -> bool {
    let m = e.m();
    for a in 0..m {
        for b in 0..m {
            if a == b || !e.voter(0).prefers(CandidateId(a), CandidateId(b)) {
                continue;
            }
            let agree: Vec<bool> = e
                .voters()
                .iter()
                .map(|v| v.prefers(CandidateId(a), CandidateId(b)))
                .collect();
            if agree.windows(2).any(|w| !w[0] && w[1]) {
                return false;
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

fn naive_cost(
    e: &Election,
    rep: &[usize],
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
) -> u64 {
    agg.aggregate(
        rep.iter()
            .enumerate()
            .map(|(i, &c)| alpha.eval(e.position(i, CandidateId(c)))),
    )
}

fn naive_cc(e: &Election, k: usize, alpha: &DissatisfactionFunction, agg: Aggregator) -> u64 {
    let m = e.m();
    let mut best = u64::MAX;
    for mask in 1u32..(1 << m) {
        if mask.count_ones() as usize > k {
            continue;
        }
        let value = agg.aggregate((0..e.n()).map(|i| {
            (0..m)
                .filter(|c| mask >> c & 1 == 1)
                .map(|c| alpha.eval(e.position(i, CandidateId(c))))
                .min()
                .unwrap()
        }));
        best = best.min(value);
    }
    best
}

/// Every map voters -> candidates (m^n of them), filtered by `keep`.
fn all_maps(n: usize, m: usize, mut keep: impl FnMut(&[usize]) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rep = vec![0; n];
    loop {
        if keep(&rep) {
            out.push(rep.clone());
        }
        let mut i = 0;
        while i < n && rep[i] + 1 == m {
            rep[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        rep[i] += 1;
    }
}

fn balanced(rep: &[usize], m: usize, k: usize) -> bool {
    let n = rep.len();
    let mut load = vec![0; m];
    for &c in rep {
        load[c] += 1;
    }
    let used: Vec<usize> = load.into_iter().filter(|&l| l > 0).collect();
    used.len() == k && used.iter().all(|&l| l >= n / k && l <= n.div_ceil(k))
}

/// Blocks are intervals and follow voter 1's order of the used candidates.
fn ordered_blocks(e: &Election, rep: &[usize]) -> bool {
    let mut seen: Vec<usize> = Vec::new();
    for (i, &c) in rep.iter().enumerate() {
        if i == 0 || rep[i - 1] != c {
            if seen.contains(&c) {
                return false;
            }
            seen.push(c);
        }
    }
    seen.windows(2)
        .all(|w| e.voter(0).prefers(CandidateId(w[0]), CandidateId(w[1])))
}

fn naive_monroe(
    e: &Election,
    k: usize,
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
    contiguous: bool,
) -> Option<u64> {
    all_maps(e.n(), e.m(), |rep| {
        balanced(rep, e.m(), k) && (!contiguous || ordered_blocks(e, rep))
    })
    .iter()
    .map(|rep| naive_cost(e, rep, alpha, agg))
    .min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn single_crossing_checker_matches_definition(e in election_strategy(4, 6)) {
        prop_assert_eq!(check_single_crossing(&e), naive_single_crossing(&e));
        prop_assert_eq!(check_single_crossing(&e), check_single_crossing(&e.reversed_voters()));
    }

    #[test]
    fn order_recovery_agrees_with_exhaustive_search(e in election_strategy(5, 6)) {
        let exists = permutations(e.n())
            .iter()
            .any(|p| naive_single_crossing(&e.reorder_voters(p).unwrap()));
        let found = find_single_crossing_order(&e);
        prop_assert_eq!(found.is_some(), exists);
        if let Some(order) = found {
            prop_assert!(naive_single_crossing(&e.reorder_voters(&order).unwrap()));
        }
    }

    #[test]
    fn shuffled_single_crossing_is_recovered(
        m in 1usize..7, n in 1usize..9, seed in any::<u64>(),
        order in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let e = gen_random_single_crossing(m, n, seed).unwrap();
        let perm: Vec<usize> = order.into_iter().filter(|&i| i < n).collect();
        let shuffled = e.reorder_voters(&perm).unwrap();
        let found = find_single_crossing_order(&shuffled).expect("a witness order exists");
        prop_assert!(check_single_crossing(&shuffled.reorder_voters(&found).unwrap()));
    }

    #[test]
    fn sum_dominates_max(
        e in election_strategy(5, 6),
        picks in proptest::collection::vec(0usize..60, 6),
    ) {
        let rep: Vec<usize> = (0..e.n()).map(|i| picks[i] % e.m()).collect();
        let a = Assignment::from_indices(&rep, e.m());
        for alpha in alphas(e.m()) {
            let sum = score(&e, &a, &alpha, Aggregator::Sum).unwrap();
            let max = score(&e, &a, &alpha, Aggregator::Max).unwrap();
            prop_assert!(sum >= max);
            prop_assert_eq!(sum, naive_cost(&e, &rep, &alpha, Aggregator::Sum));
            if e.n() == 1 {
                prop_assert_eq!(sum, max);
            }
        }
        for k in 1..=e.m() {
            let a = Assignment::from_indices(&rep, k);
            if validate_assignment(&e, &a, Rule::Monroe).valid {
                prop_assert!(validate_assignment(&e, &a, Rule::ChamberlinCourant).valid);
            }
        }
    }

    #[test]
    fn score_is_label_invariant(
        e in election_strategy(5, 5),
        perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let perm: Vec<usize> = perm.into_iter().filter(|&c| c < e.m()).collect();
        let perm = {
            // compress to 0..m
            let mut sorted = perm.clone();
            sorted.sort();
            perm.iter().map(|c| sorted.binary_search(c).unwrap()).collect::<Vec<_>>()
        };
        let r = e.relabel(&perm).unwrap();
        let rep: Vec<usize> = (0..e.n()).map(|i| e.voter(i).at(e.m().min(2)).0).collect();
        let moved: Vec<usize> = rep.iter().map(|&c| perm[c]).collect();
        let alpha = DissatisfactionFunction::borda(e.m());
        for agg in Aggregator::ALL {
            prop_assert_eq!(
                score(&e, &Assignment::from_indices(&rep, e.m()), &alpha, agg).unwrap(),
                score(&r, &Assignment::from_indices(&moved, e.m()), &alpha, agg).unwrap()
            );
        }
    }

    #[test]
    fn cc_dp_matches_subset_enumeration(m in 1usize..7, n in 1usize..9, seed in any::<u64>()) {
        let e = gen_random_single_crossing(m, n, seed).unwrap();
        for alpha in alphas(m) {
            for agg in Aggregator::ALL {
                let mut last = u64::MAX;
                for k in 1..=m.min(3) {
                    let r = solve_cc(&e, k, &alpha, agg).unwrap();
                    prop_assert_eq!(r.objective, naive_cc(&e, k, &alpha, agg));
                    prop_assert!(contiguity_report(&e, &r.assignment).contiguous);
                    prop_assert!(r.objective <= last);
                    last = r.objective;
                    for i in 0..n {
                        let mine = e.position(i, r.assignment.rep(i));
                        for &c in r.assignment.committee().iter() {
                            prop_assert!(mine <= e.position(i, c));
                        }
                    }
                }
                prop_assert_eq!(solve_cc(&e, m, &alpha, agg).unwrap().objective, 0);
                let singles = solve_cc_width(&e, &ClonePartition::singletons(m), m.min(2), &alpha, agg)
                    .unwrap();
                prop_assert_eq!(singles.objective, solve_cc(&e, m.min(2), &alpha, agg).unwrap().objective);
            }
        }
    }

    #[test]
    fn width_two_matches_subset_enumeration(base_m in 1usize..5, n in 1usize..7, seed in any::<u64>()) {
        let (e, p) = gen_cloned_pairs(base_m, n, seed).unwrap();
        let contracted = contract_clones(&e, &p).unwrap();
        prop_assert!(check_single_crossing(&contracted));
        prop_assert_eq!(contracted.n(), e.n());
        for alpha in alphas(e.m()) {
            for agg in Aggregator::ALL {
                for k in 1..=e.m().min(3) {
                    let r = solve_cc_width(&e, &p, k, &alpha, agg).unwrap();
                    prop_assert_eq!(r.objective, naive_cc(&e, k, &alpha, agg));
                }
                prop_assert_eq!(solve_cc_width(&e, &p, e.m(), &alpha, agg).unwrap().objective, 0);
            }
        }
    }

    #[test]
    fn contiguous_monroe_matches_enumeration(e in election_strategy(4, 6)) {
        for k in 1..=e.m().min(e.n()).min(3) {
            for alpha in alphas(e.m()) {
                for agg in Aggregator::ALL {
                    let r = solve_monroe_contiguous(&e, k, &alpha, agg).unwrap();
                    prop_assert_eq!(Some(r.objective), naive_monroe(&e, k, &alpha, agg, true));
                    prop_assert!(validate_assignment(&e, &r.assignment, Rule::Monroe).valid);
                    prop_assert!(contiguity_report(&e, &r.assignment).contiguous);
                    let long = r.assignment.loads(e.m()).into_iter().filter(|&l| l == e.n().div_ceil(k)).count();
                    if e.n() % k != 0 {
                        prop_assert_eq!(long, e.n() % k);
                    }
                    let free = best_contiguous_bruteforce(&e, k, &alpha, agg, Rule::Monroe).unwrap();
                    let unrestricted = solve_monroe_bruteforce(&e, k, &alpha, agg).unwrap();
                    prop_assert!(free.objective <= r.objective);
                    prop_assert!(unrestricted.objective <= free.objective);
                    prop_assert_eq!(Some(unrestricted.objective), naive_monroe(&e, k, &alpha, agg, false));
                    let cc = solve_cc_bruteforce(&e, k, &alpha, agg).unwrap();
                    prop_assert!(unrestricted.objective >= cc.objective);
                }
            }
        }
    }

    #[test]
    fn egalitarian_narcissistic_matches_enumeration(m in 1usize..6, extra in 0usize..4, seed in any::<u64>()) {
        let n = m + extra;
        let e = gen_random_sc_narcissistic(m, n, seed).unwrap();
        prop_assert!(check_single_crossing(&e) && check_narcissistic(&e));
        for k in 1..=m.min(3) {
            for alpha in alphas(m) {
                let r = solve_monroe_egalitarian_sc_narcissistic(&e, k, &alpha).unwrap();
                prop_assert_eq!(Some(r.objective), naive_monroe(&e, k, &alpha, Aggregator::Max, false));
                let contiguous = solve_monroe_contiguous(&e, k, &alpha, Aggregator::Max).unwrap();
                prop_assert_eq!(contiguous.objective, r.objective);
            }
        }
    }

    #[test]
    fn narcissistic_single_crossing_is_single_peaked(m in 1usize..7, extra in 0usize..4, seed in any::<u64>()) {
        let e = gen_random_sc_narcissistic(m, m + extra, seed).unwrap();
        let axis = find_single_peaked_axis_bruteforce(&e, 8).unwrap();
        prop_assert!(axis.is_some());
        let axis = axis.unwrap();
        prop_assert!(check_single_peaked_axis(&e, &axis.reversed()).unwrap());
    }

    #[test]
    fn balanced_flow_matches_enumeration(e in election_strategy(4, 6), mask in 1u32..16) {
        let committee: Vec<CandidateId> = (0..e.m()).filter(|c| mask >> c & 1 == 1).map(CandidateId).collect();
        let k = committee.len();
        prop_assume!(k >= 1 && k <= e.n());
        let members: BTreeSet<usize> = committee.iter().map(|c| c.0).collect();
        for alpha in alphas(e.m()) {
            for agg in Aggregator::ALL {
                let expected = all_maps(e.n(), e.m(), |rep| {
                    rep.iter().all(|c| members.contains(c)) && balanced(rep, e.m(), k)
                })
                .iter()
                .map(|rep| naive_cost(&e, rep, &alpha, agg))
                .min();
                let got = optimal_balanced_assignment(&e, &committee, k, &alpha, agg).unwrap();
                let got = got.map(|a| score(&e, &a, &alpha, agg).unwrap());
                prop_assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn profile_text_round_trips(e in election_strategy(6, 8)) {
        let text = profile_to_string(&e);
        prop_assert_eq!(parse_profile(text.as_bytes()).unwrap(), e);
    }

    #[test]
    fn generators_are_reproducible(m in 1usize..8, n in 1usize..10, seed in any::<u64>()) {
        let e = gen_random_single_crossing(m, n, seed).unwrap();
        prop_assert!(check_single_crossing(&e));
        prop_assert_eq!(&e, &gen_random_single_crossing(m, n, seed).unwrap());
        let (c, p) = gen_cloned_pairs(m, n, seed).unwrap();
        prop_assert_eq!((c, p), gen_cloned_pairs(m, n, seed).unwrap());
    }

    #[test]
    fn rotation_inverse_round_trips(
        order in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
        copies in 1usize..4,
    ) {
        let order: Vec<CandidateId> = order.into_iter().map(CandidateId).collect();
        let r = build_rotation_profile(&rotation_inverse(&order), copies).unwrap();
        prop_assert_eq!(r.voter(r.n() - 1).ranking(), &order[..]);
        prop_assert!(check_single_crossing(&r) && check_narcissistic(&r));
        prop_assert_eq!(r.n(), 6 * copies);
    }

    #[test]
    fn bracketed_adjustment_is_single_crossing(e in election_strategy(3, 4), target in 0usize..3) {
        prop_assume!(target < e.m());
        let span = e.m() * e.n();
        let a: Vec<String> = (0..span).map(|i| format!("a{i}")).collect();
        let b: Vec<String> = (0..span).map(|i| format!("b{i}")).collect();
        let adj = build_adjustment_profile(&e, CandidateId(target), &a, &b).unwrap();
        let t = CandidateId(2 * span);
        for j in 0..e.n() {
            prop_assert_eq!(adj.position(j, t), span + e.position(j, CandidateId(target)));
            let a_order: Vec<usize> = adj.voter(j).ranking().iter().map(|c| c.0).filter(|&c| c < span).collect();
            let b_order: Vec<usize> = adj.voter(j).ranking().iter().map(|c| c.0).filter(|&c| c >= span && c < 2 * span).collect();
            prop_assert!(a_order.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(b_order.windows(2).all(|w| w[0] < w[1]));
        }
        let first: Vec<usize> = (0..span).chain([2 * span]).chain(span..2 * span).collect();
        let last: Vec<usize> = (span..2 * span).chain([2 * span]).chain(0..span).collect();
        let mut rankings = vec![first];
        rankings.extend(adj.voters().iter().map(|v| v.ranking().iter().map(|c| c.0).collect::<Vec<_>>()));
        rankings.push(last);
        let bracketed = Election::from_rankings(2 * span + 1, &rankings).unwrap();
        prop_assert!(naive_single_crossing(&bracketed));
    }
}

#[test]
fn oracle_is_thread_independent() {
    let e = gen_random_single_crossing(6, 8, 42).unwrap();
    let alpha = DissatisfactionFunction::borda(6);
    let one = Oracle {
        threads: Some(1),
        ..Oracle::default()
    };
    let many = Oracle {
        threads: Some(4),
        ..Oracle::default()
    };
    for agg in Aggregator::ALL {
        for k in 1..=3 {
            let a = one.solve_monroe(&e, k, &alpha, agg).unwrap();
            let b = many.solve_monroe(&e, k, &alpha, agg).unwrap();
            assert_eq!(a.assignment, b.assignment);
            let a = one.solve_cc(&e, k, &alpha, agg).unwrap();
            let b = many.solve_cc(&e, k, &alpha, agg).unwrap();
            assert_eq!(a.assignment, b.assignment);
        }
    }
}

#[test]
fn axis_reversal_is_symmetric() {
    let e = Election::from_letters("abcd", &["abcd", "bacd", "cbda", "dcba"]).unwrap();
    for axis in [
        Axis::from_indices(&[0, 1, 2, 3]),
        Axis::from_indices(&[1, 0, 2, 3]),
    ] {
        assert_eq!(
            check_single_peaked_axis(&e, &axis).unwrap(),
            check_single_peaked_axis(&e, &axis.reversed()).unwrap()
        );
    }
}
