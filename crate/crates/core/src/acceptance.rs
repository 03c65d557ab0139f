//! The acceptance suite: eleven end-to-end checks of the solvers against the
//! exhaustive oracles, the fixed counterexample profiles, the reduction, and
//! the running-time growth of the dynamic programs.
//!
//! Shared by the `acceptance` integration test and `fpr verify-paper`.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;

use crate::cc::{solve_cc, solve_cc_width};
use crate::domains::{
    all_single_peaked_axes, axis_voter_order, check_single_peaked_axis, ClonePartition,
};
use crate::error::{Error, Result};
use crate::instances::{
    example_sp_axis, gen_cloned_pairs, gen_example_narcissistic_util, gen_example_sc_gap,
    gen_example_sp, gen_random_sc_narcissistic, gen_random_single_crossing,
};
use crate::model::{
    contiguity_report, score, Aggregator, CandidateId, DissatisfactionFunction, Election, Rule,
};
use crate::monroe::{solve_monroe_contiguous, solve_monroe_egalitarian_sc_narcissistic};
use crate::oracle::{optimal_balanced_assignment, Oracle};
use crate::reduction::{
    build_monroe_reduction, calibrate_offset_with, check_structure, extract_original_committee,
    solve_reduced,
};

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "CC dynamic program matches brute force"),
    (2, "CC dynamic program outputs are contiguous"),
    (3, "clone-width CC solver matches brute force"),
    (4, "egalitarian Monroe dynamic program matches brute force"),
    (5, "twelve-voter narcissistic profile golden numbers"),
    (6, "gap profile golden formulas"),
    (7, "single-peaked profile golden numbers"),
    (8, "reduction structure"),
    (9, "reduction end to end"),
    (10, "balanced assignment flow matches enumeration"),
    (11, "dynamic program running-time growth"),
];

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({:.1}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Outcome of one criterion: overall verdict plus the individual failures.
struct Outcome {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        self.checks += 1;
        if got != want {
            self.failures
                .push(format!("{label}: got {got:?}, expected {want:?}"));
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn within(&mut self, label: &str, elapsed: Duration, limit: Duration) {
        self.check(elapsed <= limit, || {
            format!(
                "{label} took {:.1}s, limit {}s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            )
        });
        self.note(format!("{label} {:.2}s", elapsed.as_secs_f64()));
    }

    fn summary(&self) -> String {
        let mut parts = vec![format!(
            "{}/{} checks passed",
            self.checks - self.failures.len(),
            self.checks
        )];
        parts.extend(self.notes.iter().cloned());
        const SHOWN: usize = 6;
        for f in self.failures.iter().take(SHOWN) {
            parts.push(format!("FAILED {f}"));
        }
        if self.failures.len() > SHOWN {
            parts.push(format!("... {} more failures", self.failures.len() - SHOWN));
        }
        parts.join("; ")
    }
}

/// Runs one criterion by number (1 to 11).
pub fn run_criterion(id: u8) -> CriterionReport {
    let title = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown criterion", |(_, t)| t);
    let start = Instant::now();
    let result = match id {
        1 => cc_equivalence(),
        2 => cc_contiguity(),
        3 => width_equivalence(),
        4 => egalitarian_equivalence(),
        5 => narcissistic_golden(),
        6 => gap_golden(),
        7 => single_peaked_golden(),
        8 => reduction_structure(),
        9 => reduction_end_to_end(),
        10 => flow_equivalence(),
        11 => growth(),
        _ => Err(Error::invalid(format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(outcome) => (outcome.failures.is_empty(), outcome.summary()),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionReport {
        id,
        title,
        passed,
        detail,
        elapsed,
    }
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id)).collect()
}

fn alphas(m: usize) -> Result<Vec<DissatisfactionFunction>> {
    Ok(vec![
        DissatisfactionFunction::borda(m),
        DissatisfactionFunction::t_approval(m, 2)?,
    ])
}

/// Seeded (m, n) draw in the given ranges.
fn dims(seed: u64, m: (usize, usize), n_max: usize) -> (usize, usize) {
    let mut rng = Pcg32::seed_from_u64(seed.wrapping_mul(0x2545_f491_4f6c_dd1d));
    let m = rng.random_range(m.0..=m.1);
    let n = rng.random_range(m.max(1).min(n_max)..=n_max);
    (m, n)
}

const SWEEP: u64 = 500;

fn cc_equivalence() -> Result<Outcome> {
    let mut out = Outcome::new();
    let oracle = Oracle::default();
    let start = Instant::now();
    for seed in 0..SWEEP {
        let (m, _) = dims(seed, (1, 6), 8);
        let n = 1 + (seed as usize * 7) % 8;
        let e = gen_random_single_crossing(m, n, seed)?;
        for k in 1..=3.min(m) {
            for alpha in alphas(m)? {
                for agg in Aggregator::ALL {
                    let dp = solve_cc(&e, k, &alpha, agg)?.objective;
                    let bf = oracle.solve_cc(&e, k, &alpha, agg)?.objective;
                    out.check(dp == bf, || {
                        format!("seed {seed} m={m} n={n} k={k} {alpha} {agg}: dp {dp}, brute force {bf}")
                    });
                }
            }
        }
    }
    out.within("sweep", start.elapsed(), Duration::from_secs(60));
    Ok(out)
}

fn cc_contiguity() -> Result<Outcome> {
    let mut out = Outcome::new();
    for seed in 0..SWEEP {
        let (m, _) = dims(seed, (1, 6), 8);
        let n = 1 + (seed as usize * 7) % 8;
        let e = gen_random_single_crossing(m, n, seed)?;
        for k in 1..=3.min(m) {
            for alpha in alphas(m)? {
                for agg in Aggregator::ALL {
                    let r = solve_cc(&e, k, &alpha, agg)?;
                    out.check(contiguity_report(&e, &r.assignment).contiguous, || {
                        format!("seed {seed} m={m} n={n} k={k} {alpha} {agg}")
                    });
                }
            }
        }
    }
    Ok(out)
}

fn width_equivalence() -> Result<Outcome> {
    let mut out = Outcome::new();
    let oracle = Oracle::default();
    for seed in 0..200u64 {
        let (base_m, n) = dims(seed, (2, 4), 8);
        let (e, partition) = gen_cloned_pairs(base_m, n, seed)?;
        let alpha = DissatisfactionFunction::borda(e.m());
        for k in 1..=3.min(e.m()) {
            for agg in Aggregator::ALL {
                let w = solve_cc_width(&e, &partition, k, &alpha, agg)?.objective;
                let bf = oracle.solve_cc(&e, k, &alpha, agg)?.objective;
                out.check(w == bf, || {
                    format!(
                        "cloned seed {seed} m={} n={n} k={k} {agg}: width dp {w}, brute force {bf}",
                        e.m()
                    )
                });
            }
        }
    }
    for seed in 0..200u64 {
        let (m, n) = dims(seed, (1, 6), 8);
        let e = gen_random_single_crossing(m, n, seed)?;
        let singletons = ClonePartition::singletons(m);
        for k in 1..=3.min(m) {
            for alpha in alphas(m)? {
                for agg in Aggregator::ALL {
                    let w = solve_cc_width(&e, &singletons, k, &alpha, agg)?.objective;
                    let dp = solve_cc(&e, k, &alpha, agg)?.objective;
                    out.check(w == dp, || {
                        format!("singleton seed {seed} k={k} {alpha} {agg}: width dp {w}, dp {dp}")
                    });
                }
            }
        }
    }
    Ok(out)
}

fn egalitarian_equivalence() -> Result<Outcome> {
    let mut out = Outcome::new();
    let oracle = Oracle::default();
    let start = Instant::now();
    for seed in 0..SWEEP {
        let (m, n) = dims(seed, (1, 6), 8);
        let e = gen_random_sc_narcissistic(m, n, seed)?;
        let alpha = DissatisfactionFunction::borda(m);
        for k in 1..=3.min(m) {
            let dp = solve_monroe_egalitarian_sc_narcissistic(&e, k, &alpha)?.objective;
            let bf = oracle
                .solve_monroe(&e, k, &alpha, Aggregator::Max)?
                .objective;
            out.check(dp == bf, || {
                format!("seed {seed} m={m} n={n} k={k}: dp {dp}, brute force {bf}")
            });
        }
    }
    out.within("sweep", start.elapsed(), Duration::from_secs(120));
    Ok(out)
}

fn names(e: &Election, set: impl IntoIterator<Item = CandidateId>) -> Vec<String> {
    set.into_iter().map(|c| e.name(c).to_string()).collect()
}

fn narcissistic_golden() -> Result<Outcome> {
    let mut out = Outcome::new();
    let e = gen_example_narcissistic_util();
    let borda = DissatisfactionFunction::borda(6);
    let oracle = Oracle::default();

    let best = oracle.solve_monroe(&e, 2, &borda, Aggregator::Sum)?;
    out.expect_eq("Monroe optimum", best.objective, 11);
    out.expect_eq(
        "Monroe committee",
        best.committee_names(&e),
        vec!["c".into(), "e".into()],
    );

    let contiguous = solve_monroe_contiguous(&e, 2, &borda, Aggregator::Sum)?;
    out.expect_eq("contiguous optimum", contiguous.objective, 13);
    out.expect_eq(
        "contiguous committee",
        contiguous.committee_names(&e),
        vec!["b".into(), "d".into()],
    );

    let cd = [e.candidate("c"), e.candidate("d")]
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("candidates c and d missing".into()))?;
    let assignment = optimal_balanced_assignment(&e, &cd, 2, &borda, Aggregator::Sum)?
        .ok_or_else(|| Error::Internal("no balanced assignment for {c, d}".into()))?;
    let value = score(&e, &assignment, &borda, Aggregator::Sum)?;
    out.check(value >= 12, || {
        format!("balanced value for {{c, d}} is {value}, expected >= 12")
    });
    out.note(format!("balanced {{c,d}} = {value}"));

    let lowest: Vec<u64> = e
        .candidates()
        .map(|c| {
            let mut values: Vec<u64> = (0..e.n()).map(|v| borda.eval(e.position(v, c))).collect();
            values.sort_unstable();
            values[..6].iter().sum()
        })
        .collect();
    out.expect_eq("best-six sums a..f", lowest, vec![9, 4, 1, 9, 10, 14]);
    Ok(out)
}

fn gap_golden() -> Result<Outcome> {
    let mut out = Outcome::new();
    let oracle = Oracle::default();
    for n in 1..=3u64 {
        let mut ratios = Vec::new();
        for m in 1..=4u64 {
            let e = gen_example_sc_gap(m as usize, n as usize)?;
            let borda = DissatisfactionFunction::borda(e.m());
            let tag = format!("m={m} n={n}");
            let cs = oracle.best_contiguous(&e, 2, &borda, Aggregator::Sum, Rule::Monroe)?;
            let cm = oracle.best_contiguous(&e, 2, &borda, Aggregator::Max, Rule::Monroe)?;
            let us = oracle.solve_monroe(&e, 2, &borda, Aggregator::Sum)?;
            let um = oracle.solve_monroe(&e, 2, &borda, Aggregator::Max)?;
            out.expect_eq(&format!("{tag} contiguous Sum"), cs.objective, n * (m + 2));
            out.expect_eq(&format!("{tag} contiguous Max"), cm.objective, m + 1);
            out.expect_eq(&format!("{tag} unrestricted Sum"), us.objective, 2 * n);
            out.expect_eq(&format!("{tag} unrestricted Max"), um.objective, 1);
            ratios.push((m, cm.objective as f64 / um.objective.max(1) as f64));
        }
        for w in ratios.windows(2) {
            let ((m0, r0), (m1, r1)) = (w[0], w[1]);
            out.check(r1 > r0, || {
                format!("n={n}: Max ratio {r1} at m={m1} does not exceed {r0} at m={m0}")
            });
        }
    }
    Ok(out)
}

fn single_peaked_golden() -> Result<Outcome> {
    let mut out = Outcome::new();
    let oracle = Oracle::default();
    for m in 1..=3u64 {
        let e = gen_example_sp(m as usize)?;
        let borda = DissatisfactionFunction::borda(e.m());
        let axis = example_sp_axis(m as usize);
        let tag = format!("m={m}");
        out.check(check_single_peaked_axis(&e, &axis)?, || {
            format!("{tag}: not single-peaked on the displayed axis")
        });
        out.expect_eq(
            &format!("{tag} induced voter order"),
            axis_voter_order(&e, &axis),
            vec![0, 1, 2, 3],
        );
        let us = oracle
            .solve_monroe(&e, 2, &borda, Aggregator::Sum)?
            .objective;
        let um = oracle
            .solve_monroe(&e, 2, &borda, Aggregator::Max)?
            .objective;
        out.expect_eq(&format!("{tag} Monroe Sum"), us, 4);
        out.expect_eq(&format!("{tag} Monroe Max"), um, 2);
        let cs = oracle
            .best_contiguous(&e, 2, &borda, Aggregator::Sum, Rule::Monroe)?
            .objective;
        let cm = oracle
            .best_contiguous(&e, 2, &borda, Aggregator::Max, Rule::Monroe)?
            .objective;
        out.expect_eq(&format!("{tag} contiguous Monroe Sum"), cs, 2 * (m + 1));
        out.expect_eq(&format!("{tag} contiguous Monroe Max"), cm, m + 1);
        for agg in Aggregator::ALL {
            let cc = oracle
                .best_contiguous(&e, 2, &borda, agg, Rule::ChamberlinCourant)?
                .objective;
            out.check(cc > m, || {
                format!("{tag} contiguous CC {agg} = {cc}, expected >= {}", m + 1)
            });
        }
    }
    let e = gen_example_sp(1)?;
    let axes = all_single_peaked_axes(&e, 6)?;
    out.check(!axes.is_empty(), || "no single-peaked axis for m=1".into());
    let abcd: Vec<CandidateId> = ["a", "b", "c", "d"]
        .iter()
        .filter_map(|n| e.candidate(n))
        .collect();
    let dcba: Vec<CandidateId> = abcd.iter().rev().copied().collect();
    for axis in &axes {
        let center = &axis.order()[1..5];
        out.check(center == abcd || center == dcba, || {
            format!(
                "axis {:?} does not center a,b,c,d",
                names(&e, axis.order().iter().copied())
            )
        });
    }
    out.note(format!("{} axes for m=1", axes.len()));
    Ok(out)
}

fn random_profile(m: usize, n: usize, seed: u64) -> Result<Election> {
    let mut rng = Pcg32::seed_from_u64(seed);
    let rankings: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut v: Vec<usize> = (0..m).collect();
            v.shuffle(&mut rng);
            v
        })
        .collect();
    Election::from_rankings(m, &rankings)
}

fn reduction_structure() -> Result<Outcome> {
    let mut out = Outcome::new();
    for (i, (m, n, k)) in [(2, 2, 1), (2, 4, 2), (3, 3, 1)].into_iter().enumerate() {
        let source = random_profile(m, n, 100 + i as u64)?;
        let output = build_monroe_reduction(&source, k)?;
        let report = check_structure(&output)?;
        let tag = format!("({m},{n},{k})");
        out.check(report.all(), || format!("{tag}: {report:?}"));
        out.expect_eq(
            &format!("{tag} balance"),
            output.k_sc * (n / k + 1),
            output.sc_election.n(),
        );
        out.note(format!(
            "{tag}: {} candidates, {} voters",
            output.sc_election.m(),
            output.sc_election.n()
        ));
        if (m, n, k) == (2, 2, 1) {
            let s = &output.sizes;
            out.expect_eq("candidates", output.sc_election.m(), 155);
            out.expect_eq("voters", output.sc_election.n(), 462);
            out.expect_eq("k_sc", output.k_sc, 154);
            out.expect_eq(
                "set sizes H,F,E_i,E,D,G_i,G,C'",
                (
                    s.h,
                    s.f.clone(),
                    s.e_i.clone(),
                    s.e,
                    s.d.clone(),
                    s.g_i.clone(),
                    s.g,
                    s.c_prime,
                ),
                (
                    1,
                    vec![4, 4],
                    vec![36, 18],
                    10,
                    vec![36, 18],
                    vec![4, 4],
                    18,
                    2,
                ),
            );
            out.expect_eq("voter lists", s.voter_lists, [2, 216, 2, 2, 240]);
        }
    }
    Ok(out)
}

fn reduction_end_to_end() -> Result<Outcome> {
    let mut out = Outcome::new();
    let oracle = Oracle::default();
    let start = Instant::now();
    let delta = calibrate_offset_with(&oracle, 2, 2, 1)?;
    out.note(format!("offset {delta}"));
    let borda = DissatisfactionFunction::borda(2);
    for votes in [["ab", "ab"], ["ab", "ba"], ["ba", "ab"], ["ba", "ba"]] {
        let source = Election::from_letters("ab", &votes)?;
        let output = build_monroe_reduction(&source, 1)?;
        let (sc_opt, assignment) = solve_reduced(&output, &oracle)?;
        let opt = oracle
            .solve_monroe(&source, 1, &borda, Aggregator::Sum)?
            .objective;
        let tag = votes.join("/");
        out.expect_eq(&format!("{tag} offset"), sc_opt as i64 - opt as i64, delta);
        let committee: Vec<CandidateId> = extract_original_committee(&output, &assignment)?
            .into_iter()
            .collect();
        let extracted =
            optimal_balanced_assignment(&source, &committee, 1, &borda, Aggregator::Sum)?
                .ok_or_else(|| Error::Internal("extracted committee has no assignment".into()))?;
        let value = score(&source, &extracted, &borda, Aggregator::Sum)?;
        out.expect_eq(&format!("{tag} extracted committee value"), value, opt);
    }
    out.within("end to end", start.elapsed(), Duration::from_secs(600));
    Ok(out)
}

/// Best balanced value by trying every voter-to-member map.
fn enumerate_balanced(
    e: &Election,
    committee: &[CandidateId],
    alpha: &DissatisfactionFunction,
    agg: Aggregator,
) -> Option<u64> {
    let (n, k) = (e.n(), committee.len());
    let (lo, hi) = (n / k, n.div_ceil(k));
    let mut slots = vec![0usize; n];
    let mut best: Option<u64> = None;
    loop {
        let mut loads = vec![0usize; k];
        for &s in &slots {
            loads[s] += 1;
        }
        if loads.iter().all(|&l| l >= lo && l <= hi) {
            let value = agg.aggregate(
                slots
                    .iter()
                    .enumerate()
                    .map(|(v, &s)| alpha.eval(e.position(v, committee[s]))),
            );
            best = Some(best.map_or(value, |b: u64| b.min(value)));
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            slots[i] += 1;
            if slots[i] < k {
                break;
            }
            slots[i] = 0;
            i += 1;
        }
    }
}

fn flow_equivalence() -> Result<Outcome> {
    let mut out = Outcome::new();
    for seed in 0..200u64 {
        let mut rng = Pcg32::seed_from_u64(seed ^ 0x0051_ab1e);
        let m = rng.random_range(2..=5);
        let n = rng.random_range(1..=8);
        let k = rng.random_range(1..=3.min(m).min(n));
        let e = random_profile(m, n, seed)?;
        let mut pool: Vec<CandidateId> = e.candidates().collect();
        pool.shuffle(&mut rng);
        let committee = &pool[..k];
        let alpha = DissatisfactionFunction::borda(m);
        for agg in Aggregator::ALL {
            let flow = optimal_balanced_assignment(&e, committee, k, &alpha, agg)?
                .map(|a| score(&e, &a, &alpha, agg))
                .transpose()?;
            let brute = enumerate_balanced(&e, committee, &alpha, agg);
            out.check(flow == brute, || {
                format!("seed {seed} m={m} n={n} k={k} {agg}: flow {flow:?}, enumeration {brute:?}")
            });
        }
    }
    Ok(out)
}

/// Per-call time of `f`, from the fastest of `samples` batches that each
/// repeat `f` for at least `batch`.
fn time_per_call(
    samples: usize,
    batch: Duration,
    mut f: impl FnMut() -> Result<()>,
) -> Result<Duration> {
    let mut best = Duration::MAX;
    for _ in 0..samples {
        let start = Instant::now();
        let mut calls = 0u32;
        while calls == 0 || start.elapsed() < batch {
            f()?;
            calls += 1;
        }
        best = best.min(start.elapsed() / calls);
    }
    Ok(best)
}

fn growth() -> Result<Outcome> {
    let mut out = Outcome::new();

    let start = Instant::now();
    let (m, k) = (50, 10);
    let borda = DissatisfactionFunction::borda(m);
    let mut times = Vec::new();
    for n in [1000, 2000, 4000] {
        let e = gen_random_single_crossing(m, n, n as u64)?;
        let samples = if n < 4000 { 3 } else { 1 };
        let t = time_per_call(samples, Duration::from_secs(1), || {
            solve_cc(&e, k, &borda, Aggregator::Sum).map(|_| ())
        })?;
        out.note(format!("cc n={n} {:.3}s", t.as_secs_f64()));
        times.push(t);
    }
    for w in times.windows(2) {
        let r = w[1].as_secs_f64() / w[0].as_secs_f64();
        out.check((2.0..=8.0).contains(&r), || {
            format!("cc doubling ratio {r:.2} outside [2, 8]")
        });
        out.note(format!("cc ratio {r:.2}"));
    }
    out.within("cc total", start.elapsed(), Duration::from_secs(60));

    let start = Instant::now();
    let m = 60;
    let borda = DissatisfactionFunction::borda(m);
    let mut times = Vec::new();
    for n in [500, 1000, 2000] {
        let e = gen_random_sc_narcissistic(m, n, n as u64)?;
        let t = time_per_call(5, Duration::from_millis(200), || {
            solve_monroe_egalitarian_sc_narcissistic(&e, k, &borda).map(|_| ())
        })?;
        out.note(format!("monroe n={n} {:.4}s", t.as_secs_f64()));
        times.push(t);
    }
    for w in times.windows(2) {
        let r = w[1].as_secs_f64() / w[0].as_secs_f64();
        out.check((1.0..=4.0).contains(&r), || {
            format!("monroe doubling ratio {r:.2} outside [1, 4]")
        });
        out.note(format!("monroe ratio {r:.2}"));
    }
    out.within("monroe total", start.elapsed(), Duration::from_secs(60));
    Ok(out)
}
