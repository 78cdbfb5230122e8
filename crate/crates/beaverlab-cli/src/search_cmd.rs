//! The resumable class search. Records stream to disk in enumeration order
//! as they are classified and a cursor file marks how far the stream got,
//! so an interrupted run picks up where it stopped and the final report,
//! being a pure fold of the records file, comes out byte-identical to an
//! uninterrupted run's.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::Args;
use rayon::prelude::*;

use beaverlab::search::{
    classify_emission, enumerate_class, ChampionReport, ClassifyPolicy, MachineRecord,
};
use beaverlab::tm::Machine;

/// Classified machines per cursor update; also the parallel batch size.
const CHUNK: u64 = 1024;

#[derive(Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub states: u8,
    #[arg(long, default_value_t = 2)]
    pub symbols: u8,
    /// First-stage simulation fuel.
    #[arg(long, default_value_t = 1_000)]
    pub fuel: u64,
    /// Bigger second budget for machines the first stage left unresolved;
    /// 0 disables the second stage.
    #[arg(long = "fuel-stage2", default_value_t = 100_000)]
    pub fuel_stage2: u64,
    /// Decider battery: all, none, or recurrence.
    #[arg(long, default_value = "all")]
    pub deciders: String,
    /// Base path for the report, records, and cursor files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Continue from the cursor file instead of starting over.
    #[arg(long)]
    pub resume: bool,
    /// Stop with exit code 3 after classifying this many machines in this
    /// run; the cursor keeps the work.
    #[arg(long = "stop-after")]
    pub stop_after: Option<u64>,
    /// Classify sequentially instead of in parallel batches.
    #[arg(long)]
    pub serial: bool,
    /// Leave the wall-clock line out of the report, for diffable output.
    #[arg(long = "no-timestamps")]
    pub no_timestamps: bool,
}

impl SearchArgs {
    fn policy(&self) -> Result<ClassifyPolicy> {
        Ok(ClassifyPolicy {
            fuel: self.fuel,
            stage2_fuel: if self.fuel_stage2 == 0 { None } else { Some(self.fuel_stage2) },
            deciders: crate::parse_deciders(&self.deciders)?,
        })
    }

    fn base(&self) -> PathBuf {
        self.out
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("search-{}x{}", self.states, self.symbols)))
    }

    fn policy_line(&self) -> String {
        format!(
            "policy: fuel={} stage2={} deciders={}",
            self.fuel, self.fuel_stage2, self.deciders
        )
    }
}

fn path_with(base: &PathBuf, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{}.{suffix}", base.display()))
}

struct Cursor {
    class: String,
    policy: String,
    next: u64,
    total: u64,
}

fn cursor_text(c: &Cursor) -> String {
    format!("class: {}\n{}\nnext: {}\ntotal: {}\n", c.class, c.policy, c.next, c.total)
}

fn parse_cursor(text: &str) -> Result<Cursor> {
    let mut class = None;
    let mut policy = None;
    let mut next = None;
    let mut total = None;
    for line in text.lines() {
        if let Some(v) = line.strip_prefix("class: ") {
            class = Some(v.to_string());
        } else if line.starts_with("policy: ") {
            policy = Some(line.to_string());
        } else if let Some(v) = line.strip_prefix("next: ") {
            next = Some(v.parse().context("cursor next field")?);
        } else if let Some(v) = line.strip_prefix("total: ") {
            total = Some(v.parse().context("cursor total field")?);
        } else {
            bail!("unrecognized cursor line {line:?}");
        }
    }
    match (class, policy, next, total) {
        (Some(class), Some(policy), Some(next), Some(total)) => {
            Ok(Cursor { class, policy, next, total })
        }
        _ => bail!("cursor file is missing fields"),
    }
}

pub fn run(args: &SearchArgs) -> Result<u8> {
    let policy = args.policy()?;
    let base = args.base();
    let report_path = path_with(&base, "report.txt");
    let records_path = path_with(&base, "records.txt");
    let cursor_path = path_with(&base, "cursor.txt");

    let machines: Vec<Machine> = enumerate_class(args.states, args.symbols).collect();
    let total = machines.len() as u64;
    let class = format!("{}x{}", args.states, args.symbols);

    let mut report = ChampionReport::empty(args.states, args.symbols);
    let mut next: u64 = 0;
    if args.resume {
        let text = fs::read_to_string(&cursor_path)
            .with_context(|| format!("no cursor to resume at {}", cursor_path.display()))?;
        let cursor = parse_cursor(&text)?;
        if cursor.class != class {
            bail!("cursor is for class {}, not {class}", cursor.class);
        }
        if cursor.policy != args.policy_line() {
            bail!("cursor was written under a different policy: {}", cursor.policy);
        }
        if cursor.total != total {
            bail!("cursor expects {} machines, the enumerator emits {total}", cursor.total);
        }
        let recorded = fs::read_to_string(&records_path)
            .with_context(|| format!("reading {}", records_path.display()))?;
        for (i, line) in recorded.lines().enumerate() {
            let record: MachineRecord = line
                .parse()
                .with_context(|| format!("records line {}", i + 1))?;
            report.absorb(&record);
        }
        if report.machines != cursor.next {
            bail!(
                "records file holds {} machines but the cursor says {}",
                report.machines,
                cursor.next
            );
        }
        next = cursor.next;
    } else {
        fs::write(&records_path, "")
            .with_context(|| format!("creating {}", records_path.display()))?;
    }

    let mut records_file = OpenOptions::new()
        .append(true)
        .open(&records_path)
        .with_context(|| format!("opening {}", records_path.display()))?;

    let mut fresh: u64 = 0;
    while next < total {
        if let Some(cap) = args.stop_after {
            if fresh >= cap {
                let cursor =
                    Cursor { class: class.clone(), policy: args.policy_line(), next, total };
                fs::write(&cursor_path, cursor_text(&cursor))?;
                eprintln!("stopped after {fresh} machines at cursor {next}; rerun with --resume");
                return Ok(3);
            }
        }
        let mut end = (next + CHUNK).min(total);
        if let Some(cap) = args.stop_after {
            end = end.min(next + (cap - fresh));
        }
        let batch: Vec<(u64, Machine)> =
            (next..end).map(|i| (i, machines[i as usize].clone())).collect();
        let classified: Vec<MachineRecord> = if args.serial {
            batch.into_iter().map(|(i, m)| classify_emission(i, m, &policy)).collect()
        } else {
            batch.into_par_iter().map(|(i, m)| classify_emission(i, m, &policy)).collect()
        };
        for record in &classified {
            report.absorb(record);
            writeln!(records_file, "{record}")?;
        }
        records_file.flush()?;
        fresh += end - next;
        next = end;
        let cursor =
            Cursor { class: class.clone(), policy: args.policy_line(), next, total };
        fs::write(&cursor_path, cursor_text(&cursor))?;
    }

    let mut text = String::new();
    if !args.no_timestamps {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).unwrap_or_default();
        text.push_str(&format!("generated-unix: {}\n", now.as_secs()));
    }
    text.push_str(&args.policy_line());
    text.push('\n');
    text.push_str(&report.to_string());
    fs::write(&report_path, &text)
        .with_context(|| format!("writing {}", report_path.display()))?;
    print!("{text}");

    Ok(if report.holdouts.is_empty() { 0 } else { 2 })
}
