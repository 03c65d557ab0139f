//! Builds, from an arbitrary election, a single-crossing election whose
//! utilitarian Borda-Monroe optimum equals the original optimum plus an
//! offset that depends only on `(m, n, k)`.
//!
//! Candidate groups and voter lists follow the construction's naming:
//! `H`, `F_i`, `E_i`, `E`, `D_i`, `G_i`, `G`, and `C'` (copies of the
//! original candidates); voters form the lists `V_1` to `V_5`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use serde_json::{json, Value};

use crate::domains::check_single_crossing;
use crate::error::{Error, Result};
use crate::model::{
    Aggregator, Assignment, CandidateId, DissatisfactionFunction, Election, PreferenceOrder,
};
use crate::oracle::Oracle;

/// Largest constructed profile (candidates times voters) we agree to build.
pub const MAX_PROFILE_ENTRIES: u64 = 60_000_000;

/// Vote `i` of the rotation chain: `order[i..]` followed by `order[..i]`
/// reversed, so the last vote is `order` reversed.
fn rotation_votes<T: Copy>(order: &[T], copies: usize) -> Vec<Vec<T>> {
    let mut votes = Vec::with_capacity(order.len() * copies);
    for i in 0..order.len() {
        let vote: Vec<T> = order[i..]
            .iter()
            .chain(order[..i].iter().rev())
            .copied()
            .collect();
        votes.extend(std::iter::repeat_n(vote, copies));
    }
    votes
}

/// Single-crossing, narcissistic profile over `order.len()` candidates in
/// which each candidate tops `copies` consecutive votes.
///
/// `order` must list every candidate `0..order.len()` once; it is the first
/// voter's ranking.
pub fn build_rotation_profile(order: &[CandidateId], copies: usize) -> Result<Election> {
    if order.is_empty() {
        return Err(Error::invalid(
            "rotation profile needs at least one candidate",
        ));
    }
    if copies == 0 {
        return Err(Error::invalid(
            "rotation profile needs at least one copy per block",
        ));
    }
    let m = order.len();
    let indices: Vec<usize> = order.iter().map(|c| c.0).collect();
    if !crate::model::is_permutation(&indices, m) {
        return Err(Error::invalid(
            "rotation order must list every candidate exactly once",
        ));
    }
    let rankings: Vec<Vec<usize>> = rotation_votes(&indices, copies);
    Election::from_rankings(m, &rankings)
}

/// The order whose rotation profile ends with `order`.
pub fn rotation_inverse(order: &[CandidateId]) -> Vec<CandidateId> {
    order.iter().rev().copied().collect()
}

/// Positions (1-based) of `target` over the source votes, shifted into a
/// block `A ∪ B ∪ {target}` of `2 * span + 1` candidates.
///
/// Vote shape: `a_1..a_x, b_1..b_y, target, b_{y+1}.., a_{x+1}..`. The first
/// vote has `x = span`; each step either moves `d` members of `B` ahead of
/// the target or `|d|` members of `A` behind it, so the target's position is
/// always `span + pos`.
fn adjustment_votes<T: Copy>(positions: &[usize], a: &[T], target: T, b: &[T]) -> Vec<Vec<T>> {
    let span = a.len();
    let (mut x, mut y) = (span, positions[0] - 1);
    let mut votes = Vec::with_capacity(positions.len());
    for (j, &pos) in positions.iter().enumerate() {
        if j > 0 {
            let d = pos as isize - positions[j - 1] as isize;
            if d >= 0 {
                y += d as usize;
            } else {
                x -= d.unsigned_abs();
            }
        }
        debug_assert_eq!(x + y + 1, span + pos);
        let mut vote = Vec::with_capacity(2 * span + 1);
        vote.extend_from_slice(&a[..x]);
        vote.extend_from_slice(&b[..y]);
        vote.push(target);
        vote.extend_from_slice(&b[y..]);
        vote.extend_from_slice(&a[x..]);
        votes.push(vote);
    }
    votes
}

/// Adjustment gadget for `target`: one vote per source voter over
/// `A ∪ B ∪ {target}`, with `target` at position `mn + pos` where `pos` is
/// its position in the matching source vote.
///
/// The result's candidates are `A` (ids `0..mn`), then `B`, then the target.
pub fn build_adjustment_profile(
    source: &Election,
    target: CandidateId,
    a: &[String],
    b: &[String],
) -> Result<Election> {
    let span = source.m() * source.n();
    if a.len() != span || b.len() != span {
        return Err(Error::invalid(format!(
            "adjustment sets need exactly {span} candidates each, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if target.0 >= source.m() {
        return Err(Error::invalid(format!(
            "unknown target candidate {}",
            target.0
        )));
    }
    let positions: Vec<usize> = (0..source.n())
        .map(|j| source.position(j, target))
        .collect();
    let a_ids: Vec<usize> = (0..span).collect();
    let b_ids: Vec<usize> = (span..2 * span).collect();
    let rankings = adjustment_votes(&positions, &a_ids, 2 * span, &b_ids);
    let names = a
        .iter()
        .chain(b)
        .cloned()
        .chain(std::iter::once(source.name(target).to_string()))
        .collect();
    Election::with_names(names, &rankings)
}

/// Which part of the construction a candidate belongs to. Indices are
/// 1-based, matching the set names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CandidateGroup {
    H,
    F(usize),
    Ei(usize),
    E,
    D(usize),
    Gi(usize),
    G,
    /// Copy of an original candidate.
    Original(CandidateId),
}

impl fmt::Display for CandidateGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateGroup::H => write!(f, "H"),
            CandidateGroup::F(i) => write!(f, "F_{i}"),
            CandidateGroup::Ei(i) => write!(f, "E_{i}"),
            CandidateGroup::E => write!(f, "E"),
            CandidateGroup::D(i) => write!(f, "D_{i}"),
            CandidateGroup::Gi(i) => write!(f, "G_{i}"),
            CandidateGroup::G => write!(f, "G"),
            CandidateGroup::Original(_) => write!(f, "C'"),
        }
    }
}

/// Set and voter-list sizes of the construction, from the closed formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionSizes {
    pub h: u64,
    pub f: Vec<u64>,
    pub e_i: Vec<u64>,
    pub e: u64,
    pub d: Vec<u64>,
    pub g_i: Vec<u64>,
    pub g: u64,
    pub c_prime: u64,
    /// `V_1` to `V_5`.
    pub voter_lists: [u64; 5],
}

fn overflow() -> Error {
    Error::SizeLimit {
        what: "reduction size arithmetic",
        required: u128::MAX,
        limit: u64::MAX as u128,
    }
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or_else(overflow)
}

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or_else(overflow)
}

fn sum(values: &[u64]) -> Result<u64> {
    values.iter().try_fold(0, |acc, &v| add(acc, v))
}

fn check_parameters(m: usize, n: usize, k: usize) -> Result<()> {
    if k == 0 || !n.is_multiple_of(k) || n <= k {
        return Err(Error::invalid(format!(
            "the construction needs k to divide n and n > k, got n={n}, k={k}"
        )));
    }
    if k > m {
        return Err(Error::invalid(format!(
            "committee size {k} exceeds {m} candidates"
        )));
    }
    Ok(())
}

impl ReductionSizes {
    pub fn new(m: usize, n: usize, k: usize) -> Result<Self> {
        check_parameters(m, n, k)?;
        let (m64, n64, k64) = (m as u64, n as u64, k as u64);
        let ratio = n64 / k64;
        let mn = mul(m64, n64)?;
        let m2n = mul(m64, mn)?;
        let f = vec![mn; m];
        let e_i = (1..=m64)
            .map(|i| {
                let base = add(mul(2, m2n)?, m64)?;
                let extra = mul(mul(m64 - i, add(mul(2, mn)?, 1)?)?, ratio)?;
                add(base, extra)
            })
            .collect::<Result<Vec<_>>>()?;
        let e = add(m2n, m64)?;
        let d = e_i.clone();
        let g_i = vec![mn; m];
        let g = add(sum(&f)?, e)?;
        let per_block = add(ratio, 1)?;
        let v2 = mul(add(add(sum(&f)?, sum(&e_i)?)?, e)?, per_block)?;
        let v5 = mul(add(add(sum(&d)?, sum(&g_i)?)?, g)?, per_block)?;
        Ok(ReductionSizes {
            h: m64 - k64,
            f,
            e_i,
            e,
            d,
            g_i,
            g,
            c_prime: m64,
            voter_lists: [mul(m64 - k64, ratio)?, v2, m64, n64, v5],
        })
    }

    pub fn candidates(&self) -> Result<u64> {
        let sets = [
            self.h,
            sum(&self.f)?,
            sum(&self.e_i)?,
            self.e,
            sum(&self.d)?,
            sum(&self.g_i)?,
            self.g,
            self.c_prime,
        ];
        sum(&sets)
    }

    pub fn voters(&self) -> Result<u64> {
        sum(&self.voter_lists)
    }

    /// Position thresholds used by the structural checks.
    pub fn thresholds(&self) -> Result<Thresholds> {
        let (f, e_i, e) = (sum(&self.f)?, sum(&self.e_i)?, self.e);
        let head = add(self.h, e_i)?;
        let m = self.c_prime;
        let mn = self.f.first().copied().unwrap_or(0);
        let last = self.e_i.last().copied().unwrap_or(0);
        Ok(Thresholds {
            outer: add(add(head, f)?, e)?,
            window_high: add(add(head, mul(2, mul(m, mn)?)?)?, m)?,
            window_low: head,
            near: add(add(add(self.h, f)?, add(e_i - last, e)?)?, 1)?,
        })
    }
}

/// Position thresholds for the copies of the original candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    /// `V_1`, `V_2`, `V_5` rank every copy strictly below this position.
    pub outer: u64,
    /// `V_4` ranks every copy strictly between `window_low` and `window_high`.
    pub window_high: u64,
    pub window_low: u64,
    /// Each copy sits at or above this position for exactly one `V_3` voter
    /// and strictly below `window_high` for the others.
    pub near: u64,
}

/// Voter-list and candidate-group bookkeeping for a constructed election.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupIndex {
    /// Group of every constructed candidate, by candidate id.
    pub candidates: Vec<CandidateGroup>,
    /// List (1 to 5) of every constructed voter, by voter index.
    pub voters: Vec<u8>,
}

impl GroupIndex {
    pub fn voters_in(&self, list: u8) -> impl Iterator<Item = usize> + '_ {
        self.voters
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l == list)
            .map(|(i, _)| i)
    }

    /// JSON form: `{"candidates": [{"name", "group"}...], "voters": [...]}`.
    pub fn to_json(&self, election: &Election) -> Value {
        let candidates: Vec<Value> = self
            .candidates
            .iter()
            .enumerate()
            .map(|(c, g)| {
                let mut entry = json!({
                    "name": election.name(CandidateId(c)),
                    "group": g.to_string(),
                });
                if let CandidateGroup::Original(orig) = g {
                    entry["original"] = json!(orig.0 + 1);
                }
                entry
            })
            .collect();
        let voters: Vec<Value> = self
            .voters
            .iter()
            .map(|l| Value::String(format!("V_{l}")))
            .collect();
        json!({ "candidates": candidates, "voters": voters })
    }
}

/// A constructed single-crossing instance together with its provenance.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub sc_election: Election,
    pub k_sc: usize,
    pub group_index: GroupIndex,
    pub sizes: ReductionSizes,
    pub original: Election,
    pub k: usize,
}

/// Candidate-id ranges of every group in the constructed election.
struct Layout {
    h: Range<usize>,
    f: Vec<Range<usize>>,
    e_i: Vec<Range<usize>>,
    e: Range<usize>,
    d: Vec<Range<usize>>,
    g_i: Vec<Range<usize>>,
    g: Range<usize>,
    c: Range<usize>,
}

struct Ids(Vec<CandidateId>);

impl Ids {
    fn new() -> Self {
        Ids(Vec::new())
    }

    fn range(&mut self, r: &Range<usize>) -> &mut Self {
        self.0.extend(r.clone().map(CandidateId));
        self
    }

    fn ranges<'a>(&mut self, rs: impl IntoIterator<Item = &'a Range<usize>>) -> &mut Self {
        for r in rs {
            self.range(r);
        }
        self
    }

    fn slice(&mut self, ids: &[CandidateId]) -> &mut Self {
        self.0.extend_from_slice(ids);
        self
    }

    fn take(&mut self) -> Vec<CandidateId> {
        std::mem::take(&mut self.0)
    }
}

fn to_usize(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| overflow())
}

/// Single-crossing instance for the original `k`-Monroe problem.
///
/// Requires `k | n`, `n > k`, and `k <= m`.
pub fn build_monroe_reduction(election: &Election, k: usize) -> Result<ReductionOutput> {
    let (m, n) = (election.m(), election.n());
    let sizes = ReductionSizes::new(m, n, k)?;
    let total_c = sizes.candidates()?;
    let total_v = sizes.voters()?;
    let entries = mul(total_c, total_v)?;
    if entries > MAX_PROFILE_ENTRIES {
        return Err(Error::SizeLimit {
            what: "constructed profile entries",
            required: entries as u128,
            limit: MAX_PROFILE_ENTRIES as u128,
        });
    }

    let mut names: Vec<String> = Vec::with_capacity(to_usize(total_c)?);
    let mut groups: Vec<CandidateGroup> = Vec::with_capacity(names.capacity());
    let mut alloc = |size: u64, group: CandidateGroup, label: &str| -> Result<Range<usize>> {
        let start = names.len();
        for j in 1..=to_usize(size)? {
            names.push(format!("{label}.{j}"));
            groups.push(group);
        }
        Ok(start..names.len())
    };
    let h = alloc(sizes.h, CandidateGroup::H, "H")?;
    let f = (1..=m)
        .map(|i| alloc(sizes.f[i - 1], CandidateGroup::F(i), &format!("F{i}")))
        .collect::<Result<Vec<_>>>()?;
    let e_i = (1..=m)
        .map(|i| alloc(sizes.e_i[i - 1], CandidateGroup::Ei(i), &format!("E{i}")))
        .collect::<Result<Vec<_>>>()?;
    let e = alloc(sizes.e, CandidateGroup::E, "E")?;
    let d = (1..=m)
        .map(|i| alloc(sizes.d[i - 1], CandidateGroup::D(i), &format!("D{i}")))
        .collect::<Result<Vec<_>>>()?;
    let g_i = (1..=m)
        .map(|i| alloc(sizes.g_i[i - 1], CandidateGroup::Gi(i), &format!("G{i}")))
        .collect::<Result<Vec<_>>>()?;
    let g = alloc(sizes.g, CandidateGroup::G, "G")?;
    let c_start = names.len();
    for c in election.candidates() {
        names.push(format!("C'{}", election.name(c)));
        groups.push(CandidateGroup::Original(c));
    }
    let layout = Layout {
        h,
        f,
        e_i,
        e,
        d,
        g_i,
        g,
        c: c_start..names.len(),
    };
    let cp = |i: usize| CandidateId(layout.c.start + i - 1);

    let ratio = n / k;
    let mut votes: Vec<Vec<CandidateId>> = Vec::with_capacity(to_usize(total_v)?);
    let mut lists: Vec<u8> = Vec::with_capacity(votes.capacity());
    let mut ids = Ids::new();

    // shared segments
    let x = ids
        .ranges(&layout.f)
        .range(&layout.e)
        .ranges(layout.e_i.iter().rev())
        .take();
    let c_up: Vec<CandidateId> = (1..=m).map(cp).collect();
    let c_down: Vec<CandidateId> = c_up.iter().rev().copied().collect();
    let tail_v12 = ids
        .slice(&c_up)
        .ranges(&layout.d)
        .ranges(&layout.g_i)
        .range(&layout.g)
        .take();
    let inner = rotation_inverse(&x);

    for _ in 0..to_usize(sizes.voter_lists[0])? {
        votes.push(ids.range(&layout.h).slice(&inner).slice(&tail_v12).take());
        lists.push(1);
    }
    for r in rotation_votes(&inner, ratio + 1) {
        votes.push(ids.range(&layout.h).slice(&r).slice(&tail_v12).take());
        lists.push(2);
    }
    for j in 1..=m {
        let rest: Vec<CandidateId> = (j + 1..=m).chain((1..j).rev()).map(cp).collect();
        votes.push(
            ids.range(&layout.h)
                .ranges(&layout.f)
                .range(&layout.e)
                .ranges(&layout.d[..j - 1])
                .ranges(layout.e_i[j..].iter().rev())
                .slice(&[cp(j)])
                .range(&layout.e_i[j - 1])
                .slice(&rest)
                .ranges(layout.e_i[..j - 1].iter().rev())
                .ranges(&layout.d[j - 1..])
                .ranges(&layout.g_i)
                .range(&layout.g)
                .take(),
        );
        lists.push(3);
    }
    let blocks: Vec<Vec<Vec<CandidateId>>> = (1..=m)
        .map(|i| {
            let target = cp(m + 1 - i);
            let a: Vec<CandidateId> = layout.f[i - 1].clone().map(CandidateId).collect();
            let b: Vec<CandidateId> = layout.g_i[i - 1].clone().map(CandidateId).collect();
            let positions: Vec<usize> = (0..n)
                .map(|j| election.position(j, CandidateId(m - i)))
                .collect();
            adjustment_votes(&positions, &a, target, &b)
        })
        .collect();
    for j in 0..n {
        ids.range(&layout.h).ranges(&layout.d);
        for block in &blocks {
            ids.slice(&block[j]);
        }
        votes.push(
            ids.range(&layout.e)
                .ranges(layout.e_i.iter().rev())
                .range(&layout.g)
                .take(),
        );
        lists.push(4);
    }
    let y = ids
        .ranges(&layout.d)
        .ranges(&layout.g_i)
        .range(&layout.g)
        .take();
    let tail_v5 = ids
        .slice(&c_down)
        .ranges(&layout.f)
        .range(&layout.e)
        .ranges(layout.e_i.iter().rev())
        .take();
    for r in rotation_votes(&y, ratio + 1) {
        votes.push(ids.range(&layout.h).slice(&r).slice(&tail_v5).take());
        lists.push(5);
    }

    let voters = votes
        .into_iter()
        .map(PreferenceOrder::new)
        .collect::<Result<Vec<_>>>()?;
    let sc_election = Election::new(names, voters)?;
    let k_sc = sc_election.m() - (m - k);
    Ok(ReductionOutput {
        sc_election,
        k_sc,
        group_index: GroupIndex {
            candidates: groups,
            voters: lists,
        },
        sizes,
        original: election.clone(),
        k,
    })
}

/// Members of a constructed-instance committee that are copies of original
/// candidates, mapped back to the original ids.
///
/// Fails unless exactly `k` such members are present, which an optimal
/// solution always satisfies.
pub fn extract_original_committee(
    output: &ReductionOutput,
    sc_solution: &Assignment,
) -> Result<BTreeSet<CandidateId>> {
    let picked: BTreeSet<CandidateId> = sc_solution
        .committee()
        .into_iter()
        .filter_map(|c| match output.group_index.candidates.get(c.0) {
            Some(CandidateGroup::Original(orig)) => Some(*orig),
            _ => None,
        })
        .collect();
    if picked.len() != output.k {
        return Err(Error::Extraction(format!(
            "committee contains {} copies of original candidates, expected {}",
            picked.len(),
            output.k
        )));
    }
    Ok(picked)
}

/// Structural checks on a constructed election.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub single_crossing: bool,
    pub candidate_sizes_match: bool,
    pub voter_sizes_match: bool,
    pub h_on_top: bool,
    /// Every `V_1`, `V_2`, `V_5` voter ranks every copy below `outer`.
    pub outer_lists_far: bool,
    /// Every `V_4` voter ranks every copy inside the window.
    pub v4_in_window: bool,
    /// Every copy is near the top for exactly one `V_3` voter.
    pub v3_unique_near: bool,
    /// `V_4` positions equal the shifted source positions.
    pub v4_shift: bool,
    /// Every copy's position in `V_1`, `V_2`, `V_5` is worse than every
    /// copy's position in `V_4`.
    pub outer_below_v4: bool,
}

impl StructureReport {
    pub fn all(&self) -> bool {
        self.single_crossing
            && self.candidate_sizes_match
            && self.voter_sizes_match
            && self.h_on_top
            && self.outer_lists_far
            && self.v4_in_window
            && self.v3_unique_near
            && self.v4_shift
            && self.outer_below_v4
    }
}

/// Runs every structural check on `output`.
pub fn check_structure(output: &ReductionOutput) -> Result<StructureReport> {
    let e = &output.sc_election;
    let idx = &output.group_index;
    let sizes = &output.sizes;
    let t = sizes.thresholds()?;
    let (m, n) = (output.original.m(), output.original.n());

    let count = |g: CandidateGroup| idx.candidates.iter().filter(|&&x| x == g).count() as u64;
    let per_set =
        |f: fn(usize) -> CandidateGroup, want: &[u64]| (1..=m).all(|i| count(f(i)) == want[i - 1]);
    let originals = idx
        .candidates
        .iter()
        .filter(|g| matches!(g, CandidateGroup::Original(_)))
        .count() as u64;
    let candidate_sizes_match = count(CandidateGroup::H) == sizes.h
        && per_set(CandidateGroup::F, &sizes.f)
        && per_set(CandidateGroup::Ei, &sizes.e_i)
        && count(CandidateGroup::E) == sizes.e
        && per_set(CandidateGroup::D, &sizes.d)
        && per_set(CandidateGroup::Gi, &sizes.g_i)
        && count(CandidateGroup::G) == sizes.g
        && originals == sizes.c_prime
        && e.m() as u64 == sizes.candidates()?
        && output.k_sc as u64 == sizes.candidates()? - sizes.h;
    let voter_sizes_match = (1..=5u8)
        .all(|l| idx.voters_in(l).count() as u64 == sizes.voter_lists[l as usize - 1])
        && e.n() as u64 == sizes.voters()?;

    let h_ids: Vec<CandidateId> = idx
        .candidates
        .iter()
        .enumerate()
        .filter(|(_, g)| **g == CandidateGroup::H)
        .map(|(c, _)| CandidateId(c))
        .collect();
    let h_on_top = e.voters().iter().all(|v| {
        h_ids
            .iter()
            .enumerate()
            .all(|(p, &c)| v.position(c) == p + 1)
    });

    let copies: Vec<(CandidateId, CandidateId)> = idx
        .candidates
        .iter()
        .enumerate()
        .filter_map(|(c, g)| match g {
            CandidateGroup::Original(orig) => Some((CandidateId(c), *orig)),
            _ => None,
        })
        .collect();
    let pos = |v: usize, c: CandidateId| e.position(v, c) as u64;
    let outer_lists_far = [1u8, 2, 5]
        .iter()
        .flat_map(|&l| idx.voters_in(l))
        .all(|v| copies.iter().all(|&(c, _)| pos(v, c) > t.outer));
    let v4: Vec<usize> = idx.voters_in(4).collect();
    let outer_best = [1u8, 2, 5]
        .iter()
        .flat_map(|&l| idx.voters_in(l))
        .flat_map(|v| copies.iter().map(move |&(c, _)| (v, c)))
        .map(|(v, c)| pos(v, c))
        .min()
        .unwrap_or(u64::MAX);
    let v4_worst = v4
        .iter()
        .flat_map(|&v| copies.iter().map(move |&(c, _)| pos(v, c)))
        .max()
        .unwrap_or(0);
    let v4_in_window = v4.iter().all(|&v| {
        copies
            .iter()
            .all(|&(c, _)| pos(v, c) > t.window_low && pos(v, c) < t.window_high)
    });
    let v3: Vec<usize> = idx.voters_in(3).collect();
    let v3_unique_near = copies.iter().all(|&(c, _)| {
        let near = v3.iter().filter(|&&v| pos(v, c) <= t.near).count();
        let far = v3.iter().filter(|&&v| pos(v, c) > t.window_high).count();
        near == 1 && far == v3.len() - 1
    });
    // copy of c_{m+1-i} sits in Adj block i, after H and the D sets
    let block = (2 * m * n + 1) as u64;
    let v4_shift = v4.iter().enumerate().all(|(j, &v)| {
        copies.iter().all(|&(c, orig)| {
            let i = (m - orig.0) as u64;
            let base = t.window_low + (i - 1) * block + (m * n) as u64;
            pos(v, c) == base + output.original.position(j, orig) as u64
        })
    });

    Ok(StructureReport {
        single_crossing: check_single_crossing(e),
        candidate_sizes_match,
        voter_sizes_match,
        h_on_top,
        outer_lists_far,
        v4_in_window,
        v3_unique_near,
        v4_shift,
        outer_below_v4: outer_best > v4_worst,
    })
}

/// Optimal utilitarian Borda `k_sc`-Monroe value of the constructed election,
/// with the optimal assignment.
pub fn solve_reduced(output: &ReductionOutput, oracle: &Oracle) -> Result<(u64, Assignment)> {
    let e = &output.sc_election;
    let borda = DissatisfactionFunction::borda(e.m());
    let result = oracle.solve_monroe(e, output.k_sc, &borda, Aggregator::Sum)?;
    Ok((result.objective, result.assignment))
}

/// Fixed calibration source: voter `j` ranks the candidates rotated by
/// `j mod m`.
pub fn calibration_instance(m: usize, n: usize) -> Result<Election> {
    let rankings: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..m).map(|c| (c + j) % m).collect())
        .collect();
    Election::from_rankings(m, &rankings)
}

/// Difference between the constructed and the original Borda-Monroe optima,
/// measured on [`calibration_instance`].
pub fn calibrate_offset(m: usize, n: usize, k: usize) -> Result<i64> {
    calibrate_offset_with(&Oracle::from_env()?, m, n, k)
}

pub fn calibrate_offset_with(oracle: &Oracle, m: usize, n: usize, k: usize) -> Result<i64> {
    offset_on(oracle, &calibration_instance(m, n)?, k)
}

/// Offset measured on a specific source election.
pub fn offset_on(oracle: &Oracle, source: &Election, k: usize) -> Result<i64> {
    let output = build_monroe_reduction(source, k)?;
    let (sc_opt, _) = solve_reduced(&output, oracle)?;
    let borda = DissatisfactionFunction::borda(source.m());
    let opt = oracle
        .solve_monroe(source, k, &borda, Aggregator::Sum)?
        .objective;
    Ok(sc_opt as i64 - opt as i64)
}
