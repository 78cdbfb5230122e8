//! One binary over the whole laboratory: machine searches, the code-indexed
//! maxima, description complexity, the notation order, progression trees,
//! and bounded verification, with every output reproducible from the flags
//! alone. Human summaries go to standard output; line-delimited records go
//! to files, where diff is the test harness.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use beaverlab::kdesc::{self, KResult, SemiDecision};
use beaverlab::ordinals::{
    omega_sequence, ordinal_value, pathological_limit, precedes, well_founded_probe,
    Answer, CnfOrdinal, Notation, Registry, OMEGA_PROBE_BOUND,
};
use beaverlab::progressions::{
    branch_check, expand_progression, verify_with_report, BranchCheck, Pi1Statement,
};
use beaverlab::search::{
    busy_beaver, classify, relate_sigmas, sigma_steps_table, sigma_value_table, Classification,
    ClassifyPolicy, DeciderSet, InputRange, SearchPolicy, SigmaPolicy,
};
use beaverlab::tm::Machine;

mod search_cmd;

#[derive(Parser)]
#[command(
    name = "beaverlab",
    version,
    about = "Busy beaver searches, program numberings, and ordinal notations on one desk"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exhaustively search one machine class for its champions.
    Search(search_cmd::SearchArgs),
    /// Classify one machine: halts, certified non-halting, or holdout.
    Classify(ClassifyArgs),
    /// Greatest halting time over machine codes up to a prefix.
    SigmaSteps(SigmaArgs),
    /// Greatest output over machine codes and inputs up to a prefix.
    SigmaValue(SigmaArgs),
    /// How the two maxima relate at one prefix.
    RelateSigmas(RelateArgs),
    /// Least program index computing x (from y).
    Kphi(KphiArgs),
    /// Numbers up to a bound with no index smaller than themselves.
    Incompressibles(IncompressiblesArgs),
    /// Semi-decide membership of n in the diagonal halting set.
    Halting(HaltingArgs),
    /// The ordinal notation system.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Progression trees over notations.
    #[command(subcommand)]
    Prog(ProgCmd),
    /// Bounded verification of universal machine statements.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Machine text, e.g. 1RB1LB_1LA1RZ.
    machine: String,
    #[arg(long, default_value_t = 1_000)]
    fuel: u64,
    #[arg(long = "fuel-stage2", default_value_t = 100_000)]
    fuel_stage2: u64,
    /// Decider battery: all, none, or recurrence.
    #[arg(long, default_value = "all")]
    deciders: String,
}

#[derive(Args)]
struct SigmaArgs {
    /// Largest machine code in the prefix.
    #[arg(long = "code-max")]
    code_max: u64,
    #[arg(long, default_value_t = 1_000)]
    fuel: u64,
    /// Restrict the output maximum to blank-tape runs.
    #[arg(long = "blank-only")]
    blank_only: bool,
    /// Also write the table as tab-separated records.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RelateArgs {
    #[arg(long = "code-max")]
    code_max: u64,
    #[arg(long, default_value_t = 1_000)]
    fuel: u64,
}

#[derive(Args)]
struct KphiArgs {
    /// The number to describe.
    x: String,
    /// The input the description must work from.
    #[arg(long, default_value = "0")]
    y: String,
    #[arg(long = "index-budget", default_value_t = 1_000)]
    index_budget: u64,
    #[arg(long, default_value_t = 10_000)]
    fuel: u64,
}

#[derive(Args)]
struct IncompressiblesArgs {
    /// Check every x up to and including this bound.
    #[arg(long)]
    bound: u64,
    #[arg(long = "index-budget", default_value_t = 1_000)]
    index_budget: u64,
    #[arg(long, default_value_t = 10_000)]
    fuel: u64,
    /// Also write the full K table as tab-separated records.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HaltingArgs {
    /// Program index to run on itself.
    n: String,
    #[arg(long, default_value_t = 10_000)]
    fuel: u64,
}

#[derive(Subcommand)]
enum OrdCmd {
    /// Does the first notation precede the second?
    Cmp {
        a: String,
        b: String,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
    },
    /// Ordinal value of a notation under a registry of certified limits.
    Value {
        a: String,
        /// Registry file; entries are re-certified on load.
        #[arg(long)]
        registry: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
    },
    /// Search a notation's descents for cycles.
    Probe {
        a: String,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
    },
    /// Build the self-referential limit and show it misbehaving.
    Pathological {
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
    },
    /// Certify the canonical omega sequence into a registry.
    Omega {
        /// Registry file to create or extend.
        #[arg(long)]
        registry: Option<PathBuf>,
        #[arg(long = "probe-bound", default_value_t = OMEGA_PROBE_BOUND)]
        probe_bound: u64,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
    },
}

#[derive(Subcommand)]
enum ProgCmd {
    /// Expand the progression tree under a notation.
    Expand {
        a: String,
        #[arg(long, default_value = "PA")]
        base: String,
        /// How many stages of each limit sequence to show.
        #[arg(long = "limit-prefix", default_value_t = 3)]
        limit_prefix: u64,
        /// How many edges deep to expand.
        #[arg(long, default_value_t = 4)]
        depth: u64,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
        /// Also write the tree as tab-separated records.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a notation set for linear orderedness.
    Branch {
        notations: Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Statement file: one `machine<TAB>description` per line.
    statements: PathBuf,
    /// Halting-time bound to run each searcher for.
    #[arg(long)]
    bound: Option<u64>,
    /// Derive the bound from an exhaustive class search, e.g. 2,2; implies
    /// trust, since the exact S dominates every halter in the class.
    #[arg(long = "bound-from-class")]
    bound_from_class: Option<String>,
    /// Vouch that the bound dominates the searchers' halting times, making
    /// a silent run Verified instead of BoundInsufficient.
    #[arg(long = "trusted-bound")]
    trusted_bound: bool,
    /// Also write the reports as tab-separated records.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run() -> Result<u8> {
    let cli = Cli::parse_from(spliced_argv()?);
    match cli.command {
        Cmd::Search(args) => search_cmd::run(&args),
        Cmd::Classify(args) => cmd_classify(&args),
        Cmd::SigmaSteps(args) => cmd_sigma(&args, SigmaKind::Steps),
        Cmd::SigmaValue(args) => cmd_sigma(&args, SigmaKind::Value),
        Cmd::RelateSigmas(args) => cmd_relate(&args),
        Cmd::Kphi(args) => cmd_kphi(&args),
        Cmd::Incompressibles(args) => cmd_incompressibles(&args),
        Cmd::Halting(args) => cmd_halting(&args),
        Cmd::Ord(cmd) => cmd_ord(cmd),
        Cmd::Prog(cmd) => cmd_prog(cmd),
        Cmd::Verify(args) => cmd_verify(&args),
    }
}

/// Splices `--config FILE` into synthesized flags right after the leaf
/// subcommand, skipping any key the command line already sets, so explicit
/// flags override the file. Unknown keys synthesize unknown flags, which
/// the parser then rejects.
fn spliced_argv() -> Result<Vec<String>> {
    let mut argv: Vec<String> = std::env::args().collect();
    let Some(pos) = argv.iter().position(|a| a == "--config") else {
        return Ok(argv);
    };
    if pos + 1 >= argv.len() {
        bail!("--config takes a file path");
    }
    let path = argv[pos + 1].clone();
    argv.drain(pos..=pos + 1);

    let mut leaf = None;
    for (i, arg) in argv.iter().enumerate().skip(1) {
        if !arg.starts_with('-') {
            leaf = Some(if arg == "ord" || arg == "prog" { i + 1 } else { i });
            break;
        }
    }
    let Some(leaf) = leaf else {
        bail!("--config needs a subcommand to configure");
    };
    if leaf >= argv.len() {
        bail!("--config needs the nested subcommand spelled out");
    }

    let text =
        fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    let mut synthesized = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: want key=value, got {line:?}", i + 1);
        };
        let (key, value) = (key.trim(), value.trim());
        let flag = format!("--{key}");
        let given = format!("{flag}=");
        if argv[leaf + 1..].iter().any(|a| a == &flag || a.starts_with(&given)) {
            continue;
        }
        match value {
            "true" => synthesized.push(flag),
            "false" => {}
            _ => {
                synthesized.push(flag);
                synthesized.push(value.to_string());
            }
        }
    }
    argv.splice(leaf + 1..leaf + 1, synthesized);
    Ok(argv)
}

pub fn parse_deciders(name: &str) -> Result<DeciderSet> {
    match name {
        "all" => Ok(DeciderSet::all()),
        "none" => Ok(DeciderSet::none()),
        "recurrence" => Ok(DeciderSet::recurrence_only()),
        other => bail!("unknown decider battery {other:?}, want all, none, or recurrence"),
    }
}

fn parse_machine(text: &str) -> Result<Machine> {
    text.parse::<Machine>().with_context(|| format!("machine text {text:?}"))
}

fn parse_natural(text: &str) -> Result<BigUint> {
    text.parse::<BigUint>().with_context(|| format!("natural number {text:?}"))
}

fn parse_notation(text: &str) -> Result<Notation> {
    Ok(Notation::from_code(parse_natural(text)?))
}

fn cmd_classify(args: &ClassifyArgs) -> Result<u8> {
    let policy = ClassifyPolicy {
        fuel: args.fuel,
        stage2_fuel: if args.fuel_stage2 == 0 { None } else { Some(args.fuel_stage2) },
        deciders: parse_deciders(&args.deciders)?,
    };
    let machine = parse_machine(&args.machine)?;
    match classify(&machine, &policy) {
        Classification::Halts { steps, score } => {
            println!("halts: steps={steps} score={score}");
            Ok(0)
        }
        Classification::NeverHalts { certificate } => {
            println!("never-halts: {certificate}");
            Ok(0)
        }
        Classification::Holdout { fuel_used } => {
            println!("holdout: fuel-used={fuel_used}");
            Ok(2)
        }
    }
}

enum SigmaKind {
    Steps,
    Value,
}

fn cmd_sigma(args: &SigmaArgs, kind: SigmaKind) -> Result<u8> {
    let policy = SigmaPolicy {
        fuel: args.fuel,
        deciders: DeciderSet::all(),
        inputs: if args.blank_only { InputRange::BlankOnly } else { InputRange::UpToCode },
    };
    let (name, table) = match kind {
        SigmaKind::Steps => ("sigma-steps", sigma_steps_table(args.code_max, &policy)),
        SigmaKind::Value => ("sigma-value", sigma_value_table(args.code_max, &policy)),
    };
    println!("{:>8} {:>12} status", "i", name);
    let mut records = String::new();
    for (i, point) in table.iter().enumerate() {
        let status = if point.exact { "exact" } else { "lower-bound" };
        println!("{:>8} {:>12} {status}", i, point.value);
        records.push_str(&format!("{i}\t{}\t{status}\n", point.value));
    }
    if let Some(path) = &args.out {
        fs::write(path, records).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(0)
}

fn cmd_relate(args: &RelateArgs) -> Result<u8> {
    let policy = SigmaPolicy {
        fuel: args.fuel,
        deciders: DeciderSet::all(),
        inputs: InputRange::UpToCode,
    };
    print!("{}", relate_sigmas(args.code_max, &policy));
    Ok(0)
}

fn cmd_kphi(args: &KphiArgs) -> Result<u8> {
    let x = parse_natural(&args.x)?;
    let y = parse_natural(&args.y)?;
    match kdesc::k_phi(&x, &y, args.index_budget, args.fuel) {
        KResult::Found { index, fuel_used } => {
            println!("K({x}|{y}) = {index} (fuel used {fuel_used})");
            Ok(0)
        }
        KResult::NotFoundWithin { index_budget, fuel } => {
            println!("no index up to {index_budget} computes {x} from {y} within fuel {fuel}");
            Ok(2)
        }
    }
}

fn cmd_incompressibles(args: &IncompressiblesArgs) -> Result<u8> {
    let table = kdesc::k_table(args.bound, 0, args.index_budget, args.fuel);
    let set = kdesc::incompressibles(args.bound, args.index_budget, args.fuel);
    let listed: Vec<String> = set.iter().map(u64::to_string).collect();
    println!("incompressible up to {}: {}", args.bound, listed.join(" "));
    if let Some(path) = &args.out {
        let mut records = String::new();
        for row in &table {
            records.push_str(&format!("{row}\n"));
        }
        fs::write(path, records).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(0)
}

fn cmd_halting(args: &HaltingArgs) -> Result<u8> {
    let n = parse_natural(&args.n)?;
    match kdesc::in_diagonal_halting(&n, args.fuel) {
        SemiDecision::Yes => {
            println!("yes: {n} is in the diagonal halting set");
            Ok(0)
        }
        SemiDecision::Unknown => {
            println!("unknown within fuel {}", args.fuel);
            Ok(2)
        }
    }
}

fn answer_word(answer: Answer) -> &'static str {
    match answer {
        Answer::True => "True",
        Answer::False => "False",
        Answer::Unknown => "Unknown",
    }
}

fn load_registry(path: &Option<PathBuf>, fuel: u64) -> Result<Registry> {
    match path {
        Some(path) if path.exists() => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok(Registry::from_lines(&text, fuel)?)
        }
        _ => Ok(Registry::new()),
    }
}

fn cmd_ord(cmd: OrdCmd) -> Result<u8> {
    match cmd {
        OrdCmd::Cmp { a, b, fuel } => {
            let a = parse_notation(&a)?;
            let b = parse_notation(&b)?;
            println!("{}", answer_word(precedes(&a, &b, fuel)));
            Ok(0)
        }
        OrdCmd::Value { a, registry, fuel } => {
            let a = parse_notation(&a)?;
            let registry = load_registry(&registry, fuel)?;
            println!("{}", ordinal_value(&a, &registry)?);
            Ok(0)
        }
        OrdCmd::Probe { a, fuel } => {
            let a = parse_notation(&a)?;
            println!("{}", well_founded_probe(&a, fuel));
            Ok(0)
        }
        OrdCmd::Pathological { fuel } => {
            let pathology = pathological_limit(fuel)?;
            println!("{pathology}");
            Ok(0)
        }
        OrdCmd::Omega { registry, probe_bound, fuel } => {
            let mut reg = load_registry(&registry, fuel)?;
            let omega: CnfOrdinal = "ω".parse().expect("omega is normal");
            let entry = reg.register(omega_sequence(), omega, probe_bound, fuel)?.clone();
            println!("{entry}");
            if let Some(path) = &registry {
                fs::write(path, reg.to_lines())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
    }
}

fn cmd_prog(cmd: ProgCmd) -> Result<u8> {
    match cmd {
        ProgCmd::Expand { a, base, limit_prefix, depth, fuel, out } => {
            let a = parse_notation(&a)?;
            let tree = expand_progression(&base, &a, limit_prefix, depth, fuel)?;
            print!("{tree}");
            if let Some(path) = &out {
                fs::write(path, tree.to_records())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
        ProgCmd::Branch { notations, fuel } => {
            if notations.is_empty() {
                bail!("give at least one notation code");
            }
            let parsed: Vec<Notation> =
                notations.iter().map(|s| parse_notation(s)).collect::<Result<_>>()?;
            match branch_check(&parsed, fuel) {
                BranchCheck::LinearlyOrdered => {
                    println!("LinearlyOrdered");
                    Ok(0)
                }
                BranchCheck::Incomparable { pair } => {
                    println!("Incomparable: {} {}", pair.0, pair.1);
                    Ok(0)
                }
                BranchCheck::Unknown => {
                    println!("Unknown");
                    Ok(2)
                }
            }
        }
    }
}

fn parse_class(text: &str) -> Result<(u8, u8)> {
    let (s, k) = text
        .split_once(',')
        .or_else(|| text.split_once('x'))
        .with_context(|| format!("class {text:?}, want states,symbols like 2,2"))?;
    Ok((s.trim().parse()?, k.trim().parse()?))
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let (bound, trusted) = match (&args.bound, &args.bound_from_class) {
        (Some(_), Some(_)) => bail!("give either --bound or --bound-from-class, not both"),
        (None, None) => bail!("a bound is required: --bound N or --bound-from-class S,K"),
        (Some(bound), None) => (*bound, args.trusted_bound),
        (None, Some(class)) => {
            let (states, symbols) = parse_class(class)?;
            let report = busy_beaver(states, symbols, &SearchPolicy::desk())?;
            if !report.exact() {
                bail!(
                    "class {states},{symbols} still has {} holdouts; its S is only a lower bound",
                    report.holdouts.len()
                );
            }
            (report.s(), true)
        }
    };

    let text = fs::read_to_string(&args.statements)
        .with_context(|| format!("reading {}", args.statements.display()))?;
    let mut records = String::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((machine, description)) = line.split_once('\t') else {
            bail!("statement line {}: want machine<TAB>description", i + 1);
        };
        let stmt = Pi1Statement {
            searcher: parse_machine(machine)?,
            description: description.to_string(),
        };
        let report = verify_with_report(&stmt, bound, trusted);
        println!("{report}");
        records.push_str(&format!("{report}\n"));
    }
    if let Some(path) = &args.out {
        fs::write(path, records).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(0)
}
