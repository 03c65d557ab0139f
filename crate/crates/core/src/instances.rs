//! Fixed counterexample profiles and seeded random generators for the
//! single-crossing, single-crossing narcissistic, and cloned domains.
//!
//! Random generators use PCG32 (`Lcg64Xsh32`, 64-bit state) seeded through
//! `SeedableRng::seed_from_u64`, so a seed reproduces the same election on
//! every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;

use crate::domains::{Axis, ClonePartition};
use crate::error::{Error, Result};
use crate::model::{CandidateId, Election};

fn rng(seed: u64) -> Pcg32 {
    Pcg32::seed_from_u64(seed)
}

/// Single-crossing profile on which every contiguous Monroe assignment is
/// far from optimal.
///
/// Candidates `c1, c2, a1..am, b1..bm`; four groups of `n` identical votes:
/// `c1 B c2 A`, `c1 c2 rev(B) A`, `c1 c2 A rev(B)`, `c1 rev(A) c2 rev(B)`.
pub fn gen_example_sc_gap(m: usize, n: usize) -> Result<Election> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("gap example needs m >= 1 and n >= 1"));
    }
    let (c1, c2) = (0, 1);
    let a: Vec<usize> = (2..2 + m).collect();
    let b: Vec<usize> = (2 + m..2 + 2 * m).collect();
    let rev = |s: &[usize]| s.iter().rev().copied().collect::<Vec<_>>();
    let templates = [
        [vec![c1], b.clone(), vec![c2], a.clone()].concat(),
        [vec![c1, c2], rev(&b), a.clone()].concat(),
        [vec![c1, c2], a.clone(), rev(&b)].concat(),
        [vec![c1], rev(&a), vec![c2], rev(&b)].concat(),
    ];
    let names = ["c1".to_string(), "c2".to_string()]
        .into_iter()
        .chain((1..=m).map(|i| format!("a{i}")))
        .chain((1..=m).map(|i| format!("b{i}")))
        .collect();
    let rankings: Vec<Vec<usize>> = templates
        .iter()
        .flat_map(|t| std::iter::repeat_n(t.clone(), n))
        .collect();
    Election::with_names(names, &rankings)
}

/// Twelve-voter narcissistic single-crossing profile over `a..f` whose
/// utilitarian Borda 2-Monroe optimum is not contiguous.
pub fn gen_example_narcissistic_util() -> Election {
    let votes = [
        "abcdef", "bacdef", "bcadef", "cbadef", "cbadef", "cbadef", "cbdaef", "cdbaef", "defcba",
        "efdcba", "efdcba", "fedcba",
    ];
    Election::from_letters("abcdef", &votes).expect("fixed profile is well formed")
}

/// Four-voter single-peaked profile over `x1..xm, y1..ym, a, b, c, d`.
pub fn gen_example_sp(m: usize) -> Result<Election> {
    if m == 0 {
        return Err(Error::invalid("single-peaked example needs m >= 1"));
    }
    let x: Vec<usize> = (0..m).collect();
    let y: Vec<usize> = (m..2 * m).collect();
    let (a, b, c, d) = (2 * m, 2 * m + 1, 2 * m + 2, 2 * m + 3);
    let rankings = vec![
        [vec![a], x.clone(), vec![b, c, d], y.clone()].concat(),
        [vec![b, c, d], y.clone(), vec![a], x.clone()].concat(),
        [vec![c, b, a], x.clone(), vec![d], y.clone()].concat(),
        [vec![d], y.clone(), vec![c, b, a], x.clone()].concat(),
    ];
    let names = (1..=m)
        .map(|i| format!("x{i}"))
        .chain((1..=m).map(|i| format!("y{i}")))
        .chain(["a", "b", "c", "d"].map(String::from))
        .collect();
    Election::with_names(names, &rankings)
}

/// The axis `x_m .. x_1, a, b, c, d, y_1 .. y_m` for [`gen_example_sp`].
pub fn example_sp_axis(m: usize) -> Axis {
    let order: Vec<usize> = (0..m)
        .rev()
        .chain(2 * m..2 * m + 4)
        .chain(m..2 * m)
        .collect();
    Axis::from_indices(&order)
}

/// Random single-crossing election: a random first vote, then each next
/// vote applies a random number of adjacent swaps, each of which inverts a
/// pair not inverted before.
pub fn gen_random_single_crossing(m: usize, n: usize, seed: u64) -> Result<Election> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("random profile needs m >= 1 and n >= 1"));
    }
    let mut rng = rng(seed);
    let mut vote: Vec<usize> = (0..m).collect();
    vote.shuffle(&mut rng);
    let mut rank_first = vec![0; m];
    for (p, &c) in vote.iter().enumerate() {
        rank_first[c] = p;
    }
    let mut rankings = Vec::with_capacity(n);
    rankings.push(vote.clone());
    for _ in 1..n {
        let swaps = rng.random_range(0..=m);
        for _ in 0..swaps {
            let open: Vec<usize> = (0..m.saturating_sub(1))
                .filter(|&p| rank_first[vote[p]] < rank_first[vote[p + 1]])
                .collect();
            if open.is_empty() {
                break;
            }
            let p = open[rng.random_range(0..open.len())];
            vote.swap(p, p + 1);
        }
        rankings.push(vote.clone());
    }
    Election::from_rankings(m, &rankings)
}

/// Random single-crossing narcissistic election drawn from the rotation
/// chain of a random order; every rotation appears at least once.
pub fn gen_random_sc_narcissistic(m: usize, n: usize, seed: u64) -> Result<Election> {
    if m == 0 || n < m {
        return Err(Error::invalid(format!(
            "narcissistic profile needs 1 <= m <= n, got m={m}, n={n}"
        )));
    }
    let mut rng = rng(seed);
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut rng);
    let mut copies = vec![1usize; m];
    for _ in m..n {
        copies[rng.random_range(0..m)] += 1;
    }
    let mut rankings = Vec::with_capacity(n);
    for (i, &count) in copies.iter().enumerate() {
        let vote: Vec<usize> = order[i..]
            .iter()
            .chain(order[..i].iter().rev())
            .copied()
            .collect();
        rankings.extend(std::iter::repeat_n(vote, count));
    }
    Election::from_rankings(m, &rankings)
}

/// Random election of single-crossing width at most two: a random
/// single-crossing profile over `base_m` candidates in which some
/// candidates are replaced by two clones ranked in a random order by each
/// voter. At least one candidate is cloned.
pub fn gen_cloned_pairs(base_m: usize, n: usize, seed: u64) -> Result<(Election, ClonePartition)> {
    let base = gen_random_single_crossing(base_m, n, seed)?;
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut cloned: Vec<bool> = (0..base_m).map(|_| rng.random_bool(0.5)).collect();
    if !cloned.iter().any(|&c| c) {
        cloned[rng.random_range(0..base_m)] = true;
    }
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(base_m);
    let mut names = Vec::new();
    for (c, &twin) in cloned.iter().enumerate() {
        let start = names.len();
        if twin {
            names.push(format!("c{}a", c + 1));
            names.push(format!("c{}b", c + 1));
        } else {
            names.push(format!("c{}", c + 1));
        }
        sets.push((start..names.len()).collect());
    }
    let rankings: Vec<Vec<usize>> = base
        .voters()
        .iter()
        .map(|v| {
            v.ranking()
                .iter()
                .flat_map(|&CandidateId(c)| {
                    let mut members = sets[c].clone();
                    members.shuffle(&mut rng);
                    members
                })
                .collect()
        })
        .collect();
    let m = names.len();
    let election = Election::with_names(names, &rankings)?;
    Ok((election, ClonePartition::from_indices(&sets, m)?))
}
