use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a candidate within one [`Election`], in `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateId(pub usize);

impl CandidateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0 + 1)
    }
}

/// A strict, complete ranking of the candidates, best first.
///
/// Positions are 1-based: the top candidate sits at position 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreferenceOrder {
    ranking: Vec<CandidateId>,
    rank_of: Vec<usize>,
}

impl PreferenceOrder {
    /// Builds an order from a best-first ranking; the ranking must be a
    /// permutation of `0..ranking.len()`.
    pub fn new(ranking: Vec<CandidateId>) -> Result<Self> {
        let m = ranking.len();
        let mut rank_of = vec![0usize; m];
        for (p, c) in ranking.iter().enumerate() {
            if c.0 >= m {
                return Err(Error::invalid(format!(
                    "candidate {} out of range for {m} candidates",
                    c.0
                )));
            }
            if rank_of[c.0] != 0 {
                return Err(Error::invalid(format!("candidate {} ranked twice", c.0)));
            }
            rank_of[c.0] = p + 1;
        }
        Ok(PreferenceOrder { ranking, rank_of })
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        Self::new(indices.iter().copied().map(CandidateId).collect())
    }

    pub fn identity(m: usize) -> Self {
        PreferenceOrder {
            ranking: (0..m).map(CandidateId).collect(),
            rank_of: (1..=m).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    pub fn ranking(&self) -> &[CandidateId] {
        &self.ranking
    }

    /// 1-based position of `c`.
    pub fn position(&self, c: CandidateId) -> usize {
        self.rank_of[c.0]
    }

    pub fn top(&self) -> CandidateId {
        self.ranking[0]
    }

    /// Candidate at 1-based position `p`.
    pub fn at(&self, p: usize) -> CandidateId {
        self.ranking[p - 1]
    }

    pub fn prefers(&self, a: CandidateId, b: CandidateId) -> bool {
        self.rank_of[a.0] < self.rank_of[b.0]
    }

    pub fn reversed(&self) -> Self {
        let mut ranking = self.ranking.clone();
        ranking.reverse();
        let m = ranking.len();
        let rank_of = self.rank_of.iter().map(|p| m + 1 - p).collect();
        PreferenceOrder { ranking, rank_of }
    }
}

/// An ordered list of voters over a common candidate set.
///
/// The voter order is significant: the solvers for single-crossing profiles
/// read it as the single-crossing witness order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    names: Vec<String>,
    voters: Vec<PreferenceOrder>,
}

impl Election {
    pub fn new(names: Vec<String>, voters: Vec<PreferenceOrder>) -> Result<Self> {
        let m = names.len();
        if m == 0 {
            return Err(Error::invalid("an election needs at least one candidate"));
        }
        if voters.is_empty() {
            return Err(Error::invalid("an election needs at least one voter"));
        }
        if let Some((i, v)) = voters.iter().enumerate().find(|(_, v)| v.len() != m) {
            return Err(Error::invalid(format!(
                "voter {} ranks {} candidates, expected {m}",
                i + 1,
                v.len()
            )));
        }
        Ok(Election { names, voters })
    }

    /// Builds an election from 0-based best-first index lists, naming
    /// candidates `c1..cm`.
    pub fn from_rankings(m: usize, rankings: &[Vec<usize>]) -> Result<Self> {
        let names = (1..=m).map(|i| format!("c{i}")).collect();
        Self::with_names(names, rankings)
    }

    pub fn with_names(names: Vec<String>, rankings: &[Vec<usize>]) -> Result<Self> {
        let voters = rankings
            .iter()
            .map(|r| PreferenceOrder::from_indices(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, voters)
    }

    /// Parses compact votes such as `"abc"` over single-character names.
    pub fn from_letters(names: &str, votes: &[&str]) -> Result<Self> {
        let alphabet: Vec<char> = names.chars().collect();
        let rankings = votes
            .iter()
            .map(|v| {
                v.chars()
                    .map(|ch| {
                        alphabet
                            .iter()
                            .position(|&a| a == ch)
                            .ok_or_else(|| Error::invalid(format!("unknown candidate '{ch}'")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_names(alphabet.iter().map(|c| c.to_string()).collect(), &rankings)
    }

    pub fn m(&self) -> usize {
        self.names.len()
    }

    pub fn n(&self) -> usize {
        self.voters.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.names[c.0]
    }

    pub fn candidate(&self, name: &str) -> Option<CandidateId> {
        self.names.iter().position(|n| n == name).map(CandidateId)
    }

    pub fn candidates(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.m()).map(CandidateId)
    }

    pub fn voters(&self) -> &[PreferenceOrder] {
        &self.voters
    }

    pub fn voter(&self, i: usize) -> &PreferenceOrder {
        &self.voters[i]
    }

    /// 1-based position of candidate `c` in the vote of voter `i` (0-based).
    pub fn position(&self, i: usize, c: CandidateId) -> usize {
        self.voters[i].position(c)
    }

    /// New election whose `i`-th voter is `self.voter(order[i])`.
    pub fn reorder_voters(&self, order: &[usize]) -> Result<Self> {
        if !is_permutation(order, self.n()) {
            return Err(Error::invalid("voter order is not a permutation"));
        }
        Ok(Election {
            names: self.names.clone(),
            voters: order.iter().map(|&i| self.voters[i].clone()).collect(),
        })
    }

    pub fn reversed_voters(&self) -> Self {
        let mut voters = self.voters.clone();
        voters.reverse();
        Election {
            names: self.names.clone(),
            voters,
        }
    }

    /// Renames candidate `c` to `perm[c]` throughout; names move along.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let m = self.m();
        if !is_permutation(perm, m) {
            return Err(Error::invalid("relabeling is not a permutation"));
        }
        let mut names = vec![String::new(); m];
        for (c, name) in self.names.iter().enumerate() {
            names[perm[c]] = name.clone();
        }
        let voters = self
            .voters
            .iter()
            .map(|v| {
                PreferenceOrder::new(v.ranking().iter().map(|c| CandidateId(perm[c.0])).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Election::new(names, voters)
    }
}

pub(crate) fn is_permutation(xs: &[usize], n: usize) -> bool {
    if xs.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in xs {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}
