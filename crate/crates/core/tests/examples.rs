//! Fixed worked examples for each public operation.

use fpr::domains::{
    check_narcissistic, check_single_crossing, check_single_peaked_axis, compute_width_bruteforce,
    contract_clones, find_single_crossing_order, find_single_peaked_axis_bruteforce,
    verify_clone_partition, Axis, ClonePartition,
};
use fpr::instances::{
    example_sp_axis, gen_cloned_pairs, gen_example_narcissistic_util, gen_example_sc_gap,
    gen_example_sp, gen_random_single_crossing,
};
use fpr::reduction::{
    build_adjustment_profile, build_monroe_reduction, build_rotation_profile, rotation_inverse,
    ReductionSizes,
};
use fpr::{
    best_contiguous_bruteforce, contiguity_report, optimal_balanced_assignment, score, solve_cc,
    solve_cc_bruteforce, solve_cc_width, solve_monroe_bruteforce, solve_monroe_contiguous,
    solve_monroe_egalitarian_sc_narcissistic, validate_assignment, Aggregator, Assignment,
    CandidateId, DissatisfactionFunction, Election, Rule,
};

use Aggregator::{Max, Sum};

fn letters(e: &Election, s: &str) -> Vec<usize> {
    s.chars()
        .map(|c| e.candidate(&c.to_string()).unwrap().0)
        .collect()
}

fn committee(e: &Election, names: &[&str]) -> Vec<CandidateId> {
    names.iter().map(|n| e.candidate(n).unwrap()).collect()
}

fn committee_of(e: &Election, a: &Assignment) -> Vec<String> {
    a.committee()
        .iter()
        .map(|&c| e.name(c).to_string())
        .collect()
}

fn borda(e: &Election) -> DissatisfactionFunction {
    DissatisfactionFunction::borda(e.m())
}

#[test]
fn scoring() {
    let e = gen_example_narcissistic_util();
    let tops: Vec<usize> = e.voters().iter().map(|v| v.top().0).collect();
    let a = Assignment::from_indices(&tops, e.m());
    assert_eq!(score(&e, &a, &borda(&e), Sum).unwrap(), 0);

    let bd = letters(&e, "bbbbbbdddddd");
    assert_eq!(
        score(&e, &Assignment::from_indices(&bd, 2), &borda(&e), Sum).unwrap(),
        13
    );
    let ec = letters(&e, "eecccccceeee");
    assert_eq!(
        score(&e, &Assignment::from_indices(&ec, 2), &borda(&e), Sum).unwrap(),
        11
    );

    let short = Assignment::from_indices(&[0], 2);
    assert!(score(&e, &short, &borda(&e), Sum).is_err());
}

#[test]
fn validation() {
    let e = Election::from_letters("ab", &["ab", "ab", "ba", "ba"]).unwrap();
    let even = Assignment::from_indices(&[0, 0, 1, 1], 2);
    assert!(validate_assignment(&e, &even, Rule::Monroe).valid);
    let single = Assignment::from_indices(&[0, 0, 0, 0], 2);
    assert!(!validate_assignment(&e, &single, Rule::Monroe).valid);
    assert!(validate_assignment(&e, &single, Rule::ChamberlinCourant).valid);
}

#[test]
fn contiguity() {
    let e = gen_example_narcissistic_util();
    let bd = Assignment::from_indices(&letters(&e, "bbbbbbdddddd"), 2);
    let report = contiguity_report(&e, &bd);
    assert!(report.contiguous);
    let spans: Vec<(usize, usize)> = report.blocks.iter().map(|b| (b.first, b.last)).collect();
    assert_eq!(spans, [(1, 6), (7, 12)]);
    let ec = Assignment::from_indices(&letters(&e, "eecccccceeee"), 2);
    assert!(!contiguity_report(&e, &ec).contiguous);
    let one = Election::from_letters("abc", &["bca"]).unwrap();
    assert!(contiguity_report(&one, &Assignment::from_indices(&[2], 1)).contiguous);
}

#[test]
fn alpha_contracts() {
    let b = DissatisfactionFunction::borda(7);
    assert!((1..=7).all(|i| b.eval(i) == i as u64 - 1));
    assert!(DissatisfactionFunction::custom(vec![1, 2]).is_err());
    assert!(DissatisfactionFunction::custom(vec![0, 3, 2]).is_err());
    assert!(DissatisfactionFunction::custom(vec![0, 3, 3]).is_ok());
}

#[test]
fn single_crossing_recognition() {
    let order: Vec<CandidateId> = (0..4).map(CandidateId).collect();
    assert!(check_single_crossing(
        &build_rotation_profile(&order, 2).unwrap()
    ));
    let twice = Election::from_letters("ab", &["ab", "ba", "ab"]).unwrap();
    assert!(!check_single_crossing(&twice));
    let one = Election::from_letters("abc", &["cab"]).unwrap();
    assert!(check_single_crossing(&one));
    assert_eq!(find_single_crossing_order(&one), Some(vec![0]));

    let cycle = Election::from_letters("abc", &["abc", "bca", "cab"]).unwrap();
    assert_eq!(find_single_crossing_order(&cycle), None);

    let rotation = build_rotation_profile(&order, 2).unwrap();
    let shuffled = rotation.reorder_voters(&[5, 0, 7, 2, 4, 1, 6, 3]).unwrap();
    let found = find_single_crossing_order(&shuffled).unwrap();
    assert!(check_single_crossing(
        &shuffled.reorder_voters(&found).unwrap()
    ));
}

#[test]
fn narcissism() {
    let order: Vec<CandidateId> = (0..3).map(CandidateId).collect();
    assert!(check_narcissistic(
        &build_rotation_profile(&order, 1).unwrap()
    ));
    assert!(!check_narcissistic(&gen_example_sp(2).unwrap()));
    assert!(check_narcissistic(
        &Election::from_letters("a", &["a", "a"]).unwrap()
    ));
}

#[test]
fn single_peakedness() {
    let e = gen_example_sp(3).unwrap();
    assert!(check_single_peaked_axis(&e, &example_sp_axis(3)).unwrap());
    let one = Election::from_letters("abc", &["bca"]).unwrap();
    let own = Axis::new(one.voter(0).ranking().to_vec());
    assert!(check_single_peaked_axis(&one, &own).unwrap());
    let bad = Election::from_letters("abc", &["acb"]).unwrap();
    assert!(!check_single_peaked_axis(&bad, &Axis::from_indices(&[0, 1, 2])).unwrap());
    assert!(check_single_peaked_axis(&bad, &Axis::from_indices(&[0, 1])).is_err());

    let small = gen_example_sp(1).unwrap();
    let axis = find_single_peaked_axis_bruteforce(&small, 8)
        .unwrap()
        .unwrap();
    let pos = |name: &str| {
        let c = small.candidate(name).unwrap();
        axis.order().iter().position(|&x| x == c).unwrap()
    };
    let mut centre = [pos("a"), pos("b"), pos("c"), pos("d")];
    centre.sort();
    assert_eq!(centre[3] - centre[0], 3);
    assert!(centre[0] > 0 && centre[3] < small.m() - 1);

    let own = find_single_peaked_axis_bruteforce(&one, 8)
        .unwrap()
        .unwrap();
    assert!(check_single_peaked_axis(&one, &own).unwrap());
    let two = Election::from_letters("ab", &["ab", "ba"]).unwrap();
    assert!(find_single_peaked_axis_bruteforce(&two, 8)
        .unwrap()
        .is_some());
    let big = gen_example_sp(3).unwrap();
    assert!(find_single_peaked_axis_bruteforce(&big, 8).is_err());
}

#[test]
fn clones() {
    let e = gen_example_sc_gap(2, 1).unwrap();
    let m = e.m();
    assert!(verify_clone_partition(&e, &ClonePartition::singletons(m)).unwrap());
    assert!(verify_clone_partition(&e, &ClonePartition::whole(m)).unwrap());
    let pair = ClonePartition::from_indices(&[vec![0, 1], vec![2, 3], vec![4, 5]], m).unwrap();
    assert!(!verify_clone_partition(&e, &pair).unwrap());
    assert!(ClonePartition::from_indices(&[vec![0, 1], vec![1, 2]], 3).is_err());
    assert!(ClonePartition::from_indices(&[vec![0]], 2).is_err());

    assert_eq!(
        contract_clones(&e, &ClonePartition::singletons(m)).unwrap(),
        e
    );
    let whole = contract_clones(&e, &ClonePartition::whole(m)).unwrap();
    assert_eq!((whole.m(), whole.n()), (1, e.n()));
    assert!(contract_clones(&e, &pair).is_err());

    let base = gen_random_single_crossing(4, 6, 9).unwrap();
    let (cloned, p) = gen_cloned_pairs(4, 6, 9).unwrap();
    let back = contract_clones(&cloned, &p).unwrap();
    let strip = |x: &Election| -> Vec<Vec<usize>> {
        x.voters()
            .iter()
            .map(|v| v.ranking().iter().map(|c| c.0).collect())
            .collect()
    };
    assert_eq!(strip(&back), strip(&base));
    assert!(check_single_crossing(&back));
}

#[test]
fn width() {
    let e = gen_random_single_crossing(5, 6, 3).unwrap();
    let (w, p) = compute_width_bruteforce(&e, 10).unwrap();
    assert_eq!((w, p.sets().len()), (1, 5));
    let one = Election::from_letters("a", &["a"]).unwrap();
    assert_eq!(compute_width_bruteforce(&one, 10).unwrap().0, 1);
    let mut found = false;
    for seed in 0..200 {
        let (c, _) = gen_cloned_pairs(4, 6, seed).unwrap();
        if !check_single_crossing(&c) {
            assert_eq!(compute_width_bruteforce(&c, 10).unwrap().0, 2);
            found = true;
        }
    }
    assert!(found);
    let wide = gen_example_sp(4).unwrap();
    assert!(compute_width_bruteforce(&wide, 10).is_err());
}

#[test]
fn cc_dp() {
    for (m, n) in [(1, 1), (2, 3), (3, 2)] {
        let e = gen_example_sc_gap(m, n).unwrap();
        for k in [1, 2] {
            assert_eq!(solve_cc(&e, k, &borda(&e), Sum).unwrap().objective, 0);
        }
        for agg in [Sum, Max] {
            assert_eq!(solve_cc(&e, e.m(), &borda(&e), agg).unwrap().objective, 0);
        }
    }
    let e = gen_example_narcissistic_util();
    let r = solve_cc(&e, 2, &borda(&e), Sum).unwrap();
    assert_eq!(r.objective, 7);
    assert_eq!(committee_of(&e, &r.assignment), ["c", "e"]);
    assert_eq!(
        r.objective,
        score(&e, &r.assignment, &borda(&e), Sum).unwrap()
    );

    let not_sc = Election::from_letters("abc", &["abc", "bca", "cab"]).unwrap();
    assert!(solve_cc(&not_sc, 1, &borda(&not_sc), Sum).is_err());
}

#[test]
fn cc_width() {
    let e = gen_random_single_crossing(5, 7, 1).unwrap();
    let singles = ClonePartition::singletons(5);
    for k in 1..=3 {
        assert_eq!(
            solve_cc_width(&e, &singles, k, &borda(&e), Sum)
                .unwrap()
                .objective,
            solve_cc(&e, k, &borda(&e), Sum).unwrap().objective
        );
    }
    let (c, p) = gen_cloned_pairs(4, 6, 5).unwrap();
    for k in 1..=3 {
        assert_eq!(
            solve_cc_width(&c, &p, k, &borda(&c), Sum)
                .unwrap()
                .objective,
            solve_cc_bruteforce(&c, k, &borda(&c), Sum)
                .unwrap()
                .objective
        );
    }
    assert_eq!(
        solve_cc_width(&c, &p, c.m(), &borda(&c), Max)
            .unwrap()
            .objective,
        0
    );
}

#[test]
fn egalitarian_monroe() {
    let order: Vec<CandidateId> = (0..4).map(CandidateId).collect();
    let r = build_rotation_profile(&order, 3).unwrap();
    assert_eq!(
        solve_monroe_egalitarian_sc_narcissistic(&r, 4, &borda(&r))
            .unwrap()
            .objective,
        0
    );
    let e = gen_example_narcissistic_util();
    let res = solve_monroe_egalitarian_sc_narcissistic(&e, 2, &borda(&e)).unwrap();
    assert_eq!(res.objective, 2);
    assert_eq!(
        res.objective,
        solve_monroe_bruteforce(&e, 2, &borda(&e), Max)
            .unwrap()
            .objective
    );

    let distinct = Election::from_letters("abc", &["abc", "bac", "cba"]).unwrap();
    assert_eq!(
        solve_monroe_egalitarian_sc_narcissistic(&distinct, 3, &borda(&distinct))
            .unwrap()
            .objective,
        0
    );
    let gap = gen_example_sc_gap(1, 1).unwrap();
    assert!(solve_monroe_egalitarian_sc_narcissistic(&gap, 2, &borda(&gap)).is_err());
}

#[test]
fn contiguous_monroe() {
    let e = gen_example_narcissistic_util();
    let r = solve_monroe_contiguous(&e, 2, &borda(&e), Sum).unwrap();
    assert_eq!(r.objective, 13);
    assert_eq!(committee_of(&e, &r.assignment), ["b", "d"]);

    for m in 1..=3 {
        let sp = gen_example_sp(m).unwrap();
        let m = m as u64;
        assert_eq!(
            solve_monroe_contiguous(&sp, 2, &borda(&sp), Sum)
                .unwrap()
                .objective,
            2 * (m + 1)
        );
        assert_eq!(
            solve_monroe_contiguous(&sp, 2, &borda(&sp), Max)
                .unwrap()
                .objective,
            m + 1
        );
    }
    let gap = gen_example_sc_gap(2, 2).unwrap();
    assert_eq!(
        solve_monroe_contiguous(&gap, 2, &borda(&gap), Sum)
            .unwrap()
            .objective,
        2 * 4
    );
    assert!(solve_monroe_contiguous(&gap, gap.n() + 1, &borda(&gap), Sum).is_err());
}

#[test]
fn oracle_values() {
    let e = gen_example_narcissistic_util();
    let b = borda(&e);
    let cc = solve_cc_bruteforce(&e, 2, &b, Sum).unwrap();
    assert_eq!(cc.objective, 7);
    assert_eq!(committee_of(&e, &cc.assignment), ["c", "e"]);
    assert_eq!(
        solve_cc_bruteforce(&e, e.m(), &b, Sum).unwrap().objective,
        0
    );
    let one = Election::from_letters("abc", &["bca"]).unwrap();
    assert_eq!(
        solve_cc_bruteforce(&one, 1, &borda(&one), Sum)
            .unwrap()
            .objective,
        0
    );

    let ce = optimal_balanced_assignment(&e, &committee(&e, &["c", "e"]), 2, &b, Sum)
        .unwrap()
        .unwrap();
    assert_eq!(score(&e, &ce, &b, Sum).unwrap(), 11);
    let cd = optimal_balanced_assignment(&e, &committee(&e, &["c", "d"]), 2, &b, Sum)
        .unwrap()
        .unwrap();
    assert!(score(&e, &cd, &b, Sum).unwrap() >= 12);
    let distinct = Election::from_letters("abc", &["abc", "bac", "cba"]).unwrap();
    let tops = committee(&distinct, &["a", "b", "c"]);
    let a = optimal_balanced_assignment(&distinct, &tops, 3, &borda(&distinct), Sum)
        .unwrap()
        .unwrap();
    assert_eq!(score(&distinct, &a, &borda(&distinct), Sum).unwrap(), 0);

    let monroe = solve_monroe_bruteforce(&e, 2, &b, Sum).unwrap();
    assert_eq!(monroe.objective, 11);

    for n in 1..=3 {
        let gap = gen_example_sc_gap(2, n).unwrap();
        let gb = borda(&gap);
        assert_eq!(
            solve_monroe_bruteforce(&gap, 2, &gb, Sum)
                .unwrap()
                .objective,
            2 * n as u64
        );
        assert_eq!(
            solve_monroe_bruteforce(&gap, 2, &gb, Max)
                .unwrap()
                .objective,
            1
        );
        assert_eq!(
            best_contiguous_bruteforce(&gap, 2, &gb, Sum, Rule::Monroe)
                .unwrap()
                .objective,
            n as u64 * 4
        );
    }

    for m in 1..=2 {
        let sp = gen_example_sp(m).unwrap();
        let sb = borda(&sp);
        assert_eq!(
            solve_monroe_bruteforce(&sp, 2, &sb, Sum).unwrap().objective,
            4
        );
        let max = solve_monroe_bruteforce(&sp, 2, &sb, Max).unwrap();
        assert_eq!(max.objective, 2);
        for agg in [Sum, Max] {
            let cc = best_contiguous_bruteforce(&sp, 2, &sb, agg, Rule::ChamberlinCourant).unwrap();
            assert!(cc.objective > m as u64);
        }
    }
}

#[test]
fn rotation() {
    let ab: Vec<CandidateId> = (0..2).map(CandidateId).collect();
    let r = build_rotation_profile(&ab, 2).unwrap();
    let votes: Vec<Vec<usize>> = r
        .voters()
        .iter()
        .map(|v| v.ranking().iter().map(|c| c.0).collect())
        .collect();
    assert_eq!(votes, [[0, 1], [0, 1], [1, 0], [1, 0]]);
    assert!(check_single_crossing(&r) && check_narcissistic(&r));

    let single = build_rotation_profile(&[CandidateId(0)], 3).unwrap();
    assert!(single.voters().iter().all(|v| v == single.voter(0)));
    assert!(build_rotation_profile(&[], 1).is_err());

    let abc: Vec<CandidateId> = (0..3).map(CandidateId).collect();
    assert_eq!(
        rotation_inverse(&abc),
        [CandidateId(2), CandidateId(1), CandidateId(0)]
    );
    assert_eq!(rotation_inverse(&abc[..1]), &abc[..1]);
    let three = build_rotation_profile(&abc, 1).unwrap();
    assert!(check_single_crossing(&three));
    assert_eq!(
        three.voter(2).ranking(),
        three.voter(0).reversed().ranking()
    );
}

#[test]
fn adjustment() {
    let names = |p: &str, k: usize| (0..k).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    let flat = Election::from_letters("ab", &["ab", "ab", "ab"]).unwrap();
    let adj =
        build_adjustment_profile(&flat, CandidateId(0), &names("x", 6), &names("y", 6)).unwrap();
    assert!(adj.voters().iter().all(|v| v == adj.voter(0)));
    assert_eq!(adj.position(0, CandidateId(12)), 7);

    let moving = Election::from_letters("ab", &["ab", "ba"]).unwrap();
    let adj =
        build_adjustment_profile(&moving, CandidateId(0), &names("x", 4), &names("y", 4)).unwrap();
    assert_eq!(
        (
            adj.position(0, CandidateId(8)),
            adj.position(1, CandidateId(8))
        ),
        (5, 6)
    );
    assert!(
        build_adjustment_profile(&moving, CandidateId(0), &names("x", 3), &names("y", 4)).is_err()
    );
}

#[test]
fn reduction_sizes() {
    let s = ReductionSizes::new(2, 2, 1).unwrap();
    assert_eq!(
        (
            s.h,
            s.f.clone(),
            s.e_i.clone(),
            s.e,
            s.d.clone(),
            s.g_i.clone(),
            s.g,
            s.c_prime
        ),
        (
            1,
            vec![4, 4],
            vec![36, 18],
            10,
            vec![36, 18],
            vec![4, 4],
            18,
            2
        )
    );
    assert_eq!(s.voter_lists, [2, 216, 2, 2, 240]);
    assert_eq!((s.candidates().unwrap(), s.voters().unwrap()), (155, 462));

    let source = Election::from_letters("ab", &["ab", "ba"]).unwrap();
    let out = build_monroe_reduction(&source, 1).unwrap();
    assert_eq!(out.k_sc, 154);
    assert!(check_single_crossing(&out.sc_election));
    assert_eq!(out.k_sc * (source.n() / out.k + 1), out.sc_election.n());
    assert!(build_monroe_reduction(&source, 2).is_err());
    let odd = Election::from_letters("ab", &["ab", "ba", "ab"]).unwrap();
    assert!(build_monroe_reduction(&odd, 2).is_err());
}
