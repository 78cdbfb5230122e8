//! Exhaustive busy-beaver search over machine classes.
//!
//! The pipeline is: enumerate tree-normal-form representatives, classify
//! each (halts / certified non-halting / holdout), fold the classifications
//! into a [`ChampionReport`]. Classification of distinct machines never
//! shares state, so any partition of the stream can run in parallel and the
//! fold is an associative, commutative merge; the report comes out identical
//! to the sequential run.

mod certificate;
mod closure;
mod deciders;
mod enumerate;
mod records;
mod sigma;
mod unreachable;

pub use certificate::{check_certificate, Certificate, ParseCertificateError};
pub use closure::{decide_closure, Dfa, ParseDfaError};
pub use deciders::{decide_cycler, decide_translated_cycler};
pub use unreachable::decide_halt_unreachable;
pub use enumerate::{enumerate_class, TnfEnumerator, BUILD_FUEL};
pub use records::{MachineRecord, ParseRecordError};
pub use sigma::{
    relate_sigmas, sigma_steps, sigma_steps_table, sigma_value, sigma_value_table, InputRange,
    RelateReport, SigmaPoint, SigmaPolicy,
};

use std::fmt;

use rayon::prelude::*;

use crate::tm::{class_block, decode_machine, run, Machine, SimOutcome};

/// Which non-halting deciders a classification run may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeciderSet {
    pub cycler: bool,
    pub translated_cycler: bool,
    pub halt_unreachable: bool,
    pub tape_closure: bool,
}

impl DeciderSet {
    pub fn all() -> DeciderSet {
        DeciderSet {
            cycler: true,
            translated_cycler: true,
            halt_unreachable: true,
            tape_closure: true,
        }
    }

    pub fn none() -> DeciderSet {
        DeciderSet {
            cycler: false,
            translated_cycler: false,
            halt_unreachable: false,
            tape_closure: false,
        }
    }

    /// Only the recurrence detectors; what a search looks like without the
    /// structural deciders.
    pub fn recurrence_only() -> DeciderSet {
        DeciderSet { translated_cycler: true, cycler: true, ..DeciderSet::none() }
    }
}

/// Fuel schedule and decider choice for [`classify`]. Most machines die in a
/// handful of steps, so a small first stage plus a large second stage for
/// survivors beats one flat budget by a wide margin.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyPolicy {
    pub fuel: u64,
    pub stage2_fuel: Option<u64>,
    pub deciders: DeciderSet,
}

impl ClassifyPolicy {
    /// Defaults that finish every class up to (4,2) on a desk machine.
    pub fn desk() -> ClassifyPolicy {
        ClassifyPolicy { fuel: 1_000, stage2_fuel: Some(100_000), deciders: DeciderSet::all() }
    }

    fn stages(&self) -> Vec<u64> {
        let mut stages = vec![self.fuel.max(1)];
        if let Some(f2) = self.stage2_fuel {
            if f2 > self.fuel {
                stages.push(f2);
            }
        }
        stages
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Halts { steps: u64, score: u64 },
    NeverHalts { certificate: Certificate },
    Holdout { fuel_used: u64 },
}

impl Classification {
    pub fn is_holdout(&self) -> bool {
        matches!(self, Classification::Holdout { .. })
    }
}

/// Halts if the blank-tape run halts within fuel; else the first decider
/// certificate found; else a holdout carrying the largest fuel tried. The
/// variants are mutually exclusive by construction, so no machine can end up
/// both halting and certified.
///
/// Decider order is cheapest-first: recurrence detection at each fuel stage,
/// and the structural deciders once, after the first stage has weeded out
/// short halters. Those two see only the svelte residue that outgrows every
/// recurrence, so their cost never shows up in class totals.
pub fn classify(m: &Machine, policy: &ClassifyPolicy) -> Classification {
    let stages = policy.stages();
    for (stage, &fuel) in stages.iter().enumerate() {
        if let SimOutcome::Halted { steps, score, .. } = run(m, 0, fuel) {
            return Classification::Halts { steps, score };
        }
        if policy.deciders.cycler {
            if let Some(certificate) = decide_cycler(m, fuel) {
                return Classification::NeverHalts { certificate };
            }
        }
        if policy.deciders.translated_cycler {
            if let Some(certificate) = decide_translated_cycler(m, fuel) {
                return Classification::NeverHalts { certificate };
            }
        }
        if stage == 0 {
            if policy.deciders.halt_unreachable {
                if let Some(certificate) = decide_halt_unreachable(m) {
                    return Classification::NeverHalts { certificate };
                }
            }
            if policy.deciders.tape_closure {
                if let Some(certificate) = decide_closure(m) {
                    return Classification::NeverHalts { certificate };
                }
            }
        }
    }
    Classification::Holdout { fuel_used: *stages.last().unwrap() }
}

/// A halting machine that attained a report's maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Champion {
    /// Position in the enumeration stream; ties on the measured quantity go
    /// to the earlier machine so parallel merges stay deterministic.
    pub index: u64,
    pub code: u64,
    pub machine: Machine,
    pub steps: u64,
    pub score: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Holdout {
    pub index: u64,
    pub code: u64,
    pub machine: Machine,
    pub fuel_used: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChampionReport {
    pub states: u8,
    pub symbols: u8,
    pub machines: u64,
    pub halting: u64,
    pub non_halting: u64,
    pub steps_champion: Option<Champion>,
    pub score_champion: Option<Champion>,
    pub holdouts: Vec<Holdout>,
}

impl ChampionReport {
    pub fn empty(states: u8, symbols: u8) -> ChampionReport {
        ChampionReport {
            states,
            symbols,
            machines: 0,
            halting: 0,
            non_halting: 0,
            steps_champion: None,
            score_champion: None,
            holdouts: Vec::new(),
        }
    }

    /// Maximum halting steps seen; 0 for a report with no halting machine.
    pub fn s(&self) -> u64 {
        self.steps_champion.as_ref().map_or(0, |c| c.steps)
    }

    /// Maximum score seen; 0 for a report with no halting machine.
    pub fn sigma(&self) -> u64 {
        self.score_champion.as_ref().map_or(0, |c| c.score)
    }

    /// True when every machine was resolved, making S and Sigma exact values
    /// rather than lower bounds.
    pub fn exact(&self) -> bool {
        self.holdouts.is_empty()
    }

    pub fn absorb(&mut self, record: &MachineRecord) {
        self.machines += 1;
        match &record.classification {
            Classification::Halts { steps, score } => {
                self.halting += 1;
                let champ = Champion {
                    index: record.index,
                    code: record.code,
                    machine: record.machine.clone(),
                    steps: *steps,
                    score: *score,
                };
                if better(&self.steps_champion, &champ, |c| c.steps) {
                    self.steps_champion = Some(champ.clone());
                }
                if better(&self.score_champion, &champ, |c| c.score) {
                    self.score_champion = Some(champ);
                }
            }
            Classification::NeverHalts { .. } => self.non_halting += 1,
            Classification::Holdout { fuel_used } => self.holdouts.push(Holdout {
                index: record.index,
                code: record.code,
                machine: record.machine.clone(),
                fuel_used: *fuel_used,
            }),
        }
    }

    /// Associative, commutative combination of partial reports.
    pub fn merge(mut a: ChampionReport, b: ChampionReport) -> ChampionReport {
        assert_eq!((a.states, a.symbols), (b.states, b.symbols), "mixing classes");
        a.machines += b.machines;
        a.halting += b.halting;
        a.non_halting += b.non_halting;
        if let Some(bc) = b.steps_champion {
            if better(&a.steps_champion, &bc, |c| c.steps) {
                a.steps_champion = Some(bc);
            }
        }
        if let Some(bc) = b.score_champion {
            if better(&a.score_champion, &bc, |c| c.score) {
                a.score_champion = Some(bc);
            }
        }
        a.holdouts.extend(b.holdouts);
        a.holdouts.sort_by_key(|h| h.index);
        a
    }
}

fn better(cur: &Option<Champion>, cand: &Champion, key: impl Fn(&Champion) -> u64) -> bool {
    match cur {
        None => true,
        Some(cur) => {
            key(cand) > key(cur) || (key(cand) == key(cur) && cand.index < cur.index)
        }
    }
}

impl fmt::Display for ChampionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class: {} states, {} symbols", self.states, self.symbols)?;
        writeln!(f, "machines: {}", self.machines)?;
        writeln!(f, "halting: {}", self.halting)?;
        writeln!(f, "non-halting: {}", self.non_halting)?;
        writeln!(f, "holdouts: {}", self.holdouts.len())?;
        let tag = if self.exact() { "exact" } else { "lower bound" };
        writeln!(f, "S: {} ({})", self.s(), tag)?;
        writeln!(f, "Sigma: {} ({})", self.sigma(), tag)?;
        for (label, champ) in [
            ("steps champion", &self.steps_champion),
            ("score champion", &self.score_champion),
        ] {
            match champ {
                Some(c) => writeln!(
                    f,
                    "{label}: code={} machine={} steps={} score={}",
                    c.code, c.machine, c.steps, c.score
                )?,
                None => writeln!(f, "{label}: none")?,
            }
        }
        for h in &self.holdouts {
            writeln!(
                f,
                "holdout: index={} code={} machine={} fuel={}",
                h.index, h.code, h.machine, h.fuel_used
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("machine budget {budget} exhausted inside class ({states},{symbols})")]
    ResourceBudgetExceeded { states: u8, symbols: u8, budget: u64 },
}

/// Resource limits and parallelism for a full class search.
#[derive(Debug, Clone, Copy)]
pub struct SearchPolicy {
    pub classify: ClassifyPolicy,
    /// Abort if the stream emits more machines than this.
    pub machine_budget: Option<u64>,
    pub parallel: bool,
}

impl SearchPolicy {
    pub fn desk() -> SearchPolicy {
        SearchPolicy { classify: ClassifyPolicy::desk(), machine_budget: None, parallel: false }
    }
}

/// Classifies one emission. Pure: safe to run on any thread.
pub fn classify_emission(index: u64, machine: Machine, policy: &ClassifyPolicy) -> MachineRecord {
    let classification = classify(&machine, policy);
    MachineRecord { index, code: machine.code(), machine, classification }
}

/// Full class search: exact S and Sigma when no holdouts remain, lower
/// bounds plus an explicit holdout list otherwise.
pub fn busy_beaver(
    states: u8,
    symbols: u8,
    policy: &SearchPolicy,
) -> Result<ChampionReport, SearchError> {
    let mut machines = Vec::new();
    for machine in enumerate_class(states, symbols) {
        if let Some(budget) = policy.machine_budget {
            if machines.len() as u64 >= budget {
                return Err(SearchError::ResourceBudgetExceeded { states, symbols, budget });
            }
        }
        machines.push(machine);
    }
    let records: Vec<MachineRecord> = if policy.parallel {
        machines
            .into_par_iter()
            .enumerate()
            .map(|(i, m)| classify_emission(i as u64, m, &policy.classify))
            .collect()
    } else {
        machines
            .into_iter()
            .enumerate()
            .map(|(i, m)| classify_emission(i as u64, m, &policy.classify))
            .collect()
    };
    let mut report = ChampionReport::empty(states, symbols);
    for record in &records {
        report.absorb(record);
    }
    // A steps value at or beyond the build fuel would mean the enumerator
    // stopped growing some branch too early; everything below it is safe.
    assert!(
        report.s() < BUILD_FUEL,
        "class maximum {} reached the enumerator's build fuel",
        report.s()
    );
    Ok(report)
}

/// Independent cross-check: walk the raw code block of a class, simulate
/// every single machine with flat fuel, no normal form and no deciders, and
/// report (max steps, max score) over the halters.
pub fn exhaustive_class_maxima(states: u8, symbols: u8, fuel: u64) -> (u64, u64) {
    let block = class_block(states, symbols);
    let mut max_steps = 0;
    let mut max_score = 0;
    for code in block.start as u64..block.end() as u64 {
        let m = decode_machine(code);
        if let SimOutcome::Halted { steps, score, .. } = run(&m, 0, fuel) {
            max_steps = max_steps.max(steps);
            max_score = max_score.max(score);
        }
    }
    (max_steps, max_score)
}
