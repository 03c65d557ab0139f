//! Text profile files and JSON result documents.
//!
//! Profile format (strict complete orders, 1-based indices, best first):
//!
//! ```text
//! 3
//! 1 a
//! 2 b
//! 3 c
//! 4 2
//! 3: 1,2,3
//! 1: 3,2,1
//! ```
//!
//! The line after the names gives the voter count and the number of vote
//! lines. Each vote line stands for `count` consecutive voters, so the file
//! order is the voter order. Blank lines and lines starting with `#` are
//! ignored.

use std::io::{BufRead, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    contiguity_report, score, validate_assignment, Aggregator, AlphaKind, Assignment, CandidateId,
    DissatisfactionFunction, Election, PreferenceOrder, Rule, SolveResult,
};

/// Reads a profile from any reader.
pub fn parse_profile<R: Read>(reader: R) -> Result<Election> {
    let reader = std::io::BufReader::new(reader);
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lines.push((i + 1, trimmed.to_string()));
    }
    let mut it = lines.into_iter();
    let last_line = |l: &Option<(usize, String)>| l.as_ref().map_or(0, |(n, _)| *n);

    let (line_no, header) = it.next().ok_or_else(|| Error::parse(0, "empty profile"))?;
    let m: usize = header
        .parse()
        .map_err(|_| Error::parse(line_no, format!("expected candidate count, got '{header}'")))?;
    if m == 0 {
        return Err(Error::parse(line_no, "candidate count must be positive"));
    }

    let mut names = vec![None; m];
    for expected in 1..=m {
        let (no, line) = it.next().ok_or_else(|| {
            Error::parse(
                line_no,
                format!("file ends before candidate {expected} is named"),
            )
        })?;
        let (idx, name) = line
            .split_once(['\t', ' ', ','])
            .ok_or_else(|| Error::parse(no, "expected 'index<TAB>name'"))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| Error::parse(no, format!("bad candidate index '{idx}'")))?;
        if idx == 0 || idx > m {
            return Err(Error::parse(
                no,
                format!("candidate index {idx} outside 1..={m}"),
            ));
        }
        if names[idx - 1].is_some() {
            return Err(Error::parse(no, format!("candidate {idx} named twice")));
        }
        names[idx - 1] = Some(name.trim().to_string());
    }
    let names: Vec<String> = names.into_iter().map(|n| n.expect("all named")).collect();

    let counts_line = it.next();
    let (no, line) = counts_line
        .clone()
        .ok_or_else(|| Error::parse(last_line(&counts_line), "missing voter count line"))?;
    let fields: Vec<&str> = line
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    let parse_num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(no, format!("expected 'n n_distinct', got '{line}'")))
    };
    if fields.len() != 2 {
        return Err(Error::parse(
            no,
            format!("expected 'n n_distinct', got '{line}'"),
        ));
    }
    let (n, distinct) = (parse_num(fields[0])?, parse_num(fields[1])?);

    let mut voters = Vec::with_capacity(n);
    let mut vote_lines = 0;
    for (no, line) in it {
        vote_lines += 1;
        let (count, order) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(no, "expected 'count: i_1,...,i_m'"))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| Error::parse(no, format!("bad vote count '{}'", count.trim())))?;
        let ranking = order
            .split(',')
            .map(|s| {
                let s = s.trim();
                match s.parse::<usize>() {
                    Ok(i) if (1..=m).contains(&i) => Ok(CandidateId(i - 1)),
                    _ => Err(Error::parse(no, format!("bad candidate index '{s}'"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if ranking.len() != m {
            return Err(Error::parse(
                no,
                format!("vote ranks {} candidates, expected {m}", ranking.len()),
            ));
        }
        let vote = PreferenceOrder::new(ranking)
            .map_err(|_| Error::parse(no, "vote repeats a candidate"))?;
        voters.extend(std::iter::repeat_n(vote, count));
    }
    if vote_lines != distinct {
        return Err(Error::parse(
            no,
            format!("header announces {distinct} vote lines, found {vote_lines}"),
        ));
    }
    if voters.len() != n {
        return Err(Error::parse(
            no,
            format!(
                "header announces {n} voters, vote counts sum to {}",
                voters.len()
            ),
        ));
    }
    if n == 0 {
        return Err(Error::parse(no, "profile has no voters"));
    }
    Election::new(names, voters)
}

pub fn read_profile(path: &Path) -> Result<Election> {
    parse_profile(std::fs::File::open(path)?)
}

/// Canonical text form; runs of identical consecutive votes share a line.
pub fn write_profile<W: Write>(election: &Election, mut out: W) -> Result<()> {
    writeln!(out, "{}", election.m())?;
    for (i, name) in election.names().iter().enumerate() {
        writeln!(out, "{}\t{name}", i + 1)?;
    }
    let mut runs: Vec<(usize, &PreferenceOrder)> = Vec::new();
    for v in election.voters() {
        match runs.last_mut() {
            Some((count, prev)) if *prev == v => *count += 1,
            _ => runs.push((1, v)),
        }
    }
    writeln!(out, "{} {}", election.n(), runs.len())?;
    for (count, v) in runs {
        let order: Vec<String> = v.ranking().iter().map(|c| (c.0 + 1).to_string()).collect();
        writeln!(out, "{count}: {}", order.join(","))?;
    }
    Ok(())
}

pub fn profile_to_string(election: &Election) -> String {
    let mut buf = Vec::new();
    write_profile(election, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("profile text is UTF-8")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentBlock {
    pub candidate: String,
    pub first: usize,
    pub last: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentContiguity {
    pub contiguous: bool,
    pub blocks: Vec<DocumentBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentDiagnostics {
    pub solver: String,
    pub table_dims: Option<Vec<usize>>,
}

/// Solver output in a stable, self-checking JSON shape. Wall time is left
/// out so identical runs give identical documents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub rule: Rule,
    pub aggregator: Aggregator,
    pub alpha: AlphaKind,
    pub k: usize,
    pub objective: u64,
    pub committee: Vec<String>,
    /// Representative name per voter, in voter order.
    pub assignment: Vec<String>,
    pub contiguity: DocumentContiguity,
    pub diagnostics: DocumentDiagnostics,
}

impl ResultDocument {
    pub fn new(election: &Election, result: &SolveResult, alpha: &DissatisfactionFunction) -> Self {
        let name = |c: CandidateId| election.name(c).to_string();
        let report = contiguity_report(election, &result.assignment);
        ResultDocument {
            rule: result.rule,
            aggregator: result.aggregator,
            alpha: alpha.kind().clone(),
            k: result.assignment.k(),
            objective: result.objective,
            committee: result.committee_names(election),
            assignment: result
                .assignment
                .rep_of()
                .iter()
                .map(|&c| name(c))
                .collect(),
            contiguity: DocumentContiguity {
                contiguous: report.contiguous,
                blocks: report
                    .blocks
                    .iter()
                    .map(|b| DocumentBlock {
                        candidate: name(b.candidate),
                        first: b.first,
                        last: b.last,
                    })
                    .collect(),
            },
            diagnostics: DocumentDiagnostics {
                solver: result.diagnostics.solver.clone(),
                table_dims: result.diagnostics.table_dims.clone(),
            },
        }
    }

    /// The document's assignment rebuilt against `election`.
    pub fn to_assignment(&self, election: &Election) -> Result<Assignment> {
        let rep_of = self
            .assignment
            .iter()
            .map(|n| {
                election
                    .candidate(n)
                    .ok_or_else(|| Error::invalid(format!("unknown candidate '{n}' in result")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Assignment::new(rep_of, self.k))
    }

    /// Re-scores the assignment and checks it against the stated rule and
    /// objective.
    pub fn validate(&self, election: &Election) -> Result<()> {
        let assignment = self.to_assignment(election)?;
        let report = validate_assignment(election, &assignment, self.rule);
        if !report.valid {
            return Err(Error::invalid(format!(
                "assignment violates {}: {:?}",
                self.rule, report.violations
            )));
        }
        let alpha = match &self.alpha {
            AlphaKind::Borda => DissatisfactionFunction::borda(election.m()),
            AlphaKind::TApproval { t } => DissatisfactionFunction::t_approval(election.m(), *t)?,
            AlphaKind::Custom { values } => DissatisfactionFunction::custom(values.clone())?,
        };
        let objective = score(election, &assignment, &alpha, self.aggregator)?;
        if objective != self.objective {
            return Err(Error::invalid(format!(
                "document states objective {}, assignment scores {objective}",
                self.objective
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }
}
