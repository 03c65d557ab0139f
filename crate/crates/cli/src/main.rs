//! `fpr`: command-line front end for the committee solvers.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use fpr::acceptance;
use fpr::domains::{
    check_narcissistic, check_single_crossing, find_single_crossing_order,
    find_single_peaked_axis_bruteforce, ClonePartition, DEFAULT_AXIS_MAX_M,
};
use fpr::instances;
use fpr::profile_io::{parse_profile, profile_to_string, ResultDocument};
use fpr::reduction::build_monroe_reduction;
use fpr::{Aggregator, DissatisfactionFunction, Election, Error, Oracle, Rule, SolveResult};

const EXIT_FAILURE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_SIZE: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "fpr",
    version,
    about = "Chamberlin-Courant and Monroe committee solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chamberlin-Courant on a single-crossing profile (or bounded width).
    SolveCc(SolveCcArgs),
    /// Egalitarian Monroe on a single-crossing narcissistic profile.
    SolveMonroe(SolveMonroeArgs),
    /// Report single-crossing, narcissistic and single-peaked structure.
    CheckDomain(InputArgs),
    /// Exhaustive solver for either rule.
    Oracle(OracleArgs),
    /// Build the single-crossing Monroe instance for a profile.
    Reduce(ReduceArgs),
    /// Generate an example or random profile.
    Gen(GenArgs),
    /// Run the acceptance suite and print a pass/fail table.
    #[command(alias = "acceptance")]
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Profile file; reads standard input when absent or `-`.
    profile: Option<PathBuf>,
}

#[derive(Args)]
struct ObjectiveArgs {
    #[arg(long)]
    k: usize,
    /// `borda`, `tapprox:T`, or `custom:FILE`.
    #[arg(long, default_value = "borda")]
    alpha: String,
    #[arg(long, default_value = "sum")]
    agg: Aggregator,
}

#[derive(Args)]
struct SolveCcArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    objective: ObjectiveArgs,
    /// Clone partition file: one clone set per line, 1-based indices.
    #[arg(long)]
    width_partition: Option<PathBuf>,
    /// Reorder voters into a single-crossing order first.
    #[arg(long)]
    auto_order: bool,
}

#[derive(Args)]
struct SolveMonroeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    objective: ObjectiveArgs,
    /// Use exhaustive search instead of the dynamic program.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    auto_order: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Cc,
    Monroe,
}

impl From<RuleArg> for Rule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Cc => Rule::ChamberlinCourant,
            RuleArg::Monroe => Rule::Monroe,
        }
    }
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    objective: ObjectiveArgs,
    #[arg(long, value_enum)]
    rule: RuleArg,
    /// Restrict to assignments with contiguous voter intervals.
    #[arg(long)]
    contiguous: bool,
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    k: usize,
    /// Output profile path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Group index path; defaults to `<out>.groups.json` when `--out` is set.
    #[arg(long)]
    groups: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    /// Single-crossing profile with a large contiguity gap (`--m`, `--n`).
    Example1,
    /// Fixed twelve-voter narcissistic profile.
    Example2,
    /// Four-voter single-peaked profile (`--m`).
    Example3,
    /// Random single-crossing profile.
    RandomSc,
    /// Random single-crossing narcissistic profile.
    RandomScNarcissistic,
    /// Random profile of single-crossing width two.
    ClonedPairs,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// For `cloned-pairs`: where to write the clone partition.
    #[arg(long)]
    partition_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these criteria (1 to 11).
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::DomainViolation(_) => EXIT_DOMAIN,
        Error::Parse { .. } => EXIT_PARSE,
        Error::SizeLimit { .. } => EXIT_SIZE,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fpr: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn parse_error(line: usize, message: String) -> Error {
    Error::Parse { line, message }
}

fn read_input(args: &InputArgs) -> fpr::Result<Election> {
    match args.profile.as_deref() {
        Some(p) if p != Path::new("-") => fpr::profile_io::read_profile(p),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            parse_profile(text.as_bytes())
        }
    }
}

fn parse_alpha(spec: &str, m: usize) -> fpr::Result<DissatisfactionFunction> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("borda") {
        return Ok(DissatisfactionFunction::borda(m));
    }
    if let Some(t) = spec
        .strip_prefix("tapprox:")
        .or_else(|| spec.strip_prefix("tapproval:"))
    {
        let t = t
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad approval threshold '{t}'")))?;
        return DissatisfactionFunction::t_approval(m, t);
    }
    if let Some(path) = spec.strip_prefix("custom:") {
        let text = fs::read_to_string(path)?;
        let values = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|_| parse_error(1, format!("bad dissatisfaction value '{s}'")))
            })
            .collect::<fpr::Result<Vec<_>>>()?;
        return DissatisfactionFunction::custom(values)?.for_candidates(m);
    }
    Err(Error::InvalidInput(format!(
        "unknown alpha '{spec}' (expected borda, tapprox:T or custom:FILE)"
    )))
}

fn read_partition(path: &Path, m: usize) -> fpr::Result<ClonePartition> {
    let text = fs::read_to_string(path)?;
    let mut sets = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let set = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| match s.parse::<usize>() {
                Ok(c) if c >= 1 => Ok(c - 1),
                _ => Err(parse_error(i + 1, format!("bad candidate index '{s}'"))),
            })
            .collect::<fpr::Result<Vec<_>>>()?;
        sets.push(set);
    }
    ClonePartition::from_indices(&sets, m)
}

/// Applies `--auto-order`, returning the election to solve and the voter
/// permutation used (new voter `i` is original voter `order[i]`).
fn ordered(election: Election, auto: bool) -> fpr::Result<(Election, Option<Vec<usize>>)> {
    if !auto || check_single_crossing(&election) {
        return Ok((election, None));
    }
    let order = find_single_crossing_order(&election)
        .ok_or_else(|| Error::DomainViolation("no single-crossing voter order exists".into()))?;
    info!("reordered voters: {order:?}");
    let reordered = election.reorder_voters(&order)?;
    Ok((reordered, Some(order)))
}

/// Prints the result document after re-validating it against the original
/// voter order.
fn emit(
    original: &Election,
    solved_on: &Election,
    order: Option<&[usize]>,
    result: &SolveResult,
    alpha: &DissatisfactionFunction,
) -> fpr::Result<u8> {
    let mut doc = ResultDocument::new(solved_on, result, alpha);
    if let Some(order) = order {
        let mut back = vec![String::new(); doc.assignment.len()];
        for (new, &old) in order.iter().enumerate() {
            back[old] = doc.assignment[new].clone();
        }
        doc.assignment = back;
    }
    doc.validate(original)?;
    info!(
        "{} finished in {:.3}s",
        result.diagnostics.solver,
        result.diagnostics.elapsed.as_secs_f64()
    );
    let mut out = io::stdout().lock();
    writeln!(out, "{}", doc.to_json())?;
    Ok(0)
}

fn run(cli: Cli) -> fpr::Result<u8> {
    match cli.command {
        Command::SolveCc(args) => {
            let original = read_input(&args.input)?;
            let alpha = parse_alpha(&args.objective.alpha, original.m())?;
            let (k, agg) = (args.objective.k, args.objective.agg);
            let result;
            let (election, order) = match &args.width_partition {
                Some(path) => {
                    let partition = read_partition(path, original.m())?;
                    result = fpr::solve_cc_width(&original, &partition, k, &alpha, agg)?;
                    (original.clone(), None)
                }
                None => {
                    let (election, order) = ordered(original.clone(), args.auto_order)?;
                    result = fpr::solve_cc(&election, k, &alpha, agg)?;
                    (election, order)
                }
            };
            emit(&original, &election, order.as_deref(), &result, &alpha)
        }
        Command::SolveMonroe(args) => {
            let original = read_input(&args.input)?;
            let alpha = parse_alpha(&args.objective.alpha, original.m())?;
            let (k, agg) = (args.objective.k, args.objective.agg);
            if args.oracle {
                let result = Oracle::from_env()?.solve_monroe(&original, k, &alpha, agg)?;
                return emit(&original, &original, None, &result, &alpha);
            }
            if agg != Aggregator::Max {
                return Err(Error::DomainViolation(
                    "the Monroe dynamic program is exact only for --agg max; use --oracle".into(),
                ));
            }
            let (election, order) = ordered(original.clone(), args.auto_order)?;
            let result = fpr::solve_monroe_egalitarian_sc_narcissistic(&election, k, &alpha)?;
            emit(&original, &election, order.as_deref(), &result, &alpha)
        }
        Command::CheckDomain(args) => {
            let e = read_input(&args)?;
            let yes = |b: bool| if b { "yes" } else { "no" };
            let mut out = io::stdout().lock();
            writeln!(out, "candidates: {}", e.m())?;
            writeln!(out, "voters: {}", e.n())?;
            writeln!(out, "single-crossing: {}", yes(check_single_crossing(&e)))?;
            match find_single_crossing_order(&e) {
                Some(order) => {
                    let shown: Vec<String> = order.iter().map(|v| (v + 1).to_string()).collect();
                    writeln!(out, "single-crossing voter order: {}", shown.join(","))?;
                }
                None => writeln!(out, "single-crossing voter order: none")?,
            }
            writeln!(out, "narcissistic: {}", yes(check_narcissistic(&e)))?;
            match find_single_peaked_axis_bruteforce(&e, DEFAULT_AXIS_MAX_M) {
                Ok(Some(axis)) => {
                    let names: Vec<&str> = axis.order().iter().map(|&c| e.name(c)).collect();
                    writeln!(out, "single-peaked: yes (axis {})", names.join(" < "))?;
                }
                Ok(None) => writeln!(out, "single-peaked: no")?,
                Err(Error::SizeLimit { limit, .. }) => writeln!(
                    out,
                    "single-peaked: not checked (more than {limit} candidates)"
                )?,
                Err(e) => return Err(e),
            }
            Ok(0)
        }
        Command::Oracle(args) => {
            let e = read_input(&args.input)?;
            let alpha = parse_alpha(&args.objective.alpha, e.m())?;
            let (k, agg) = (args.objective.k, args.objective.agg);
            let oracle = Oracle::from_env()?;
            let result = match (args.contiguous, args.rule.into()) {
                (true, rule) => oracle.best_contiguous(&e, k, &alpha, agg, rule)?,
                (false, Rule::ChamberlinCourant) => oracle.solve_cc(&e, k, &alpha, agg)?,
                (false, Rule::Monroe) => oracle.solve_monroe(&e, k, &alpha, agg)?,
            };
            emit(&e, &e, None, &result, &alpha)
        }
        Command::Reduce(args) => {
            let e = read_input(&args.input)?;
            let output = build_monroe_reduction(&e, args.k)?;
            let profile = profile_to_string(&output.sc_election);
            let groups = serde_json::to_string_pretty(&serde_json::json!({
                "k_sc": output.k_sc,
                "k": output.k,
                "index": output.group_index.to_json(&output.sc_election),
            }))
            .map_err(|e| Error::Internal(e.to_string()))?;
            match &args.out {
                Some(path) => fs::write(path, profile)?,
                None => io::stdout().lock().write_all(profile.as_bytes())?,
            }
            let sidecar = args.groups.clone().or_else(|| {
                args.out.as_ref().map(|p| {
                    let mut name = p.as_os_str().to_owned();
                    name.push(".groups.json");
                    PathBuf::from(name)
                })
            });
            if let Some(path) = sidecar {
                fs::write(path, groups)?;
            }
            eprintln!(
                "constructed {} candidates, {} voters, committee size {}",
                output.sc_election.m(),
                output.sc_election.n(),
                output.k_sc
            );
            Ok(0)
        }
        Command::Gen(args) => {
            let election = match args.kind {
                GenKind::Example1 => instances::gen_example_sc_gap(args.m, args.n)?,
                GenKind::Example2 => instances::gen_example_narcissistic_util(),
                GenKind::Example3 => instances::gen_example_sp(args.m)?,
                GenKind::RandomSc => {
                    instances::gen_random_single_crossing(args.m, args.n, args.seed)?
                }
                GenKind::RandomScNarcissistic => {
                    instances::gen_random_sc_narcissistic(args.m, args.n, args.seed)?
                }
                GenKind::ClonedPairs => {
                    let (e, partition) = instances::gen_cloned_pairs(args.m, args.n, args.seed)?;
                    if let Some(path) = &args.partition_out {
                        let lines: Vec<String> = partition
                            .sets()
                            .iter()
                            .map(|s| {
                                s.iter()
                                    .map(|c| (c.0 + 1).to_string())
                                    .collect::<Vec<_>>()
                                    .join(",")
                            })
                            .collect();
                        fs::write(path, lines.join("\n") + "\n")?;
                    }
                    e
                }
            };
            io::stdout()
                .lock()
                .write_all(profile_to_string(&election).as_bytes())?;
            Ok(0)
        }
        Command::VerifyPaper(args) => {
            let ids: Vec<u8> = if args.only.is_empty() {
                acceptance::CRITERIA.iter().map(|(id, _)| *id).collect()
            } else {
                args.only
            };
            let mut all = true;
            let mut out = io::stdout().lock();
            for id in ids {
                let report = acceptance::run_criterion(id);
                all &= report.passed;
                writeln!(out, "{report}")?;
                out.flush()?;
            }
            Ok(if all { 0 } else { EXIT_FAILURE })
        }
    }
}
