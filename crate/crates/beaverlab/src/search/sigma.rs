//! The code-indexed maxima: greatest halting time and greatest output over
//! every machine whose code is at most `i`. These quantify over raw codes,
//! not normal-form representatives, so each code is decoded and run
//! directly. Both are running maxima and therefore monotone in `i` by
//! construction; the `exact` flag goes false the moment any probed run can
//! neither be finished nor certified non-halting within the policy's fuel.

use std::fmt;

use crate::tm::{decode_machine, run, Machine, SimOutcome};

use super::deciders::{cycler_from_input, translated_from_input};
use super::DeciderSet;

/// Which inputs feed the output maximum: the full triangle `x <= i`, or the
/// blank tape only (documented restriction for block-wide scans).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputRange {
    BlankOnly,
    UpToCode,
}

#[derive(Debug, Clone, Copy)]
pub struct SigmaPolicy {
    pub fuel: u64,
    pub deciders: DeciderSet,
    pub inputs: InputRange,
}

impl SigmaPolicy {
    pub fn desk() -> SigmaPolicy {
        SigmaPolicy { fuel: 1_000, deciders: DeciderSet::all(), inputs: InputRange::UpToCode }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaPoint {
    pub value: u64,
    pub exact: bool,
}

enum Probe {
    Halted { steps: u64, output: u64 },
    CertifiedNonHalting,
    Unresolved,
}

fn probe(m: &Machine, input: u64, policy: &SigmaPolicy) -> Probe {
    if let SimOutcome::Halted { steps, output, .. } = run(m, input, policy.fuel) {
        return Probe::Halted { steps, output };
    }
    if policy.deciders.cycler && cycler_from_input(m, input, policy.fuel).is_some() {
        return Probe::CertifiedNonHalting;
    }
    if policy.deciders.translated_cycler
        && translated_from_input(m, input, policy.fuel).is_some()
    {
        return Probe::CertifiedNonHalting;
    }
    Probe::Unresolved
}

/// Greatest blank-tape halting time over codes `0..=i`, one point per prefix.
pub fn sigma_steps_table(max_i: u64, policy: &SigmaPolicy) -> Vec<SigmaPoint> {
    let mut out = Vec::with_capacity(max_i as usize + 1);
    let mut best = 0u64;
    let mut exact = true;
    for code in 0..=max_i {
        match probe(&decode_machine(code), 0, policy) {
            Probe::Halted { steps, .. } => best = best.max(steps),
            Probe::CertifiedNonHalting => {}
            Probe::Unresolved => exact = false,
        }
        out.push(SigmaPoint { value: best, exact });
    }
    out
}

pub fn sigma_steps(i: u64, policy: &SigmaPolicy) -> SigmaPoint {
    *sigma_steps_table(i, policy).last().unwrap()
}

/// Greatest halting output over codes `j <= i` and inputs `x <= i` (or blank
/// only, per policy). Grown incrementally: prefix `i` adds the run row of
/// code `i` and the input column `x = i`.
pub fn sigma_value_table(max_i: u64, policy: &SigmaPolicy) -> Vec<SigmaPoint> {
    let mut out = Vec::with_capacity(max_i as usize + 1);
    let mut best = 0u64;
    let mut exact = true;
    let mut machines: Vec<Machine> = Vec::with_capacity(max_i as usize + 1);
    for i in 0..=max_i {
        machines.push(decode_machine(i));
        let mut take = |m: &Machine, x: u64| match probe(m, x, policy) {
            Probe::Halted { output, .. } => best = best.max(output),
            Probe::CertifiedNonHalting => {}
            Probe::Unresolved => exact = false,
        };
        match policy.inputs {
            InputRange::BlankOnly => take(&machines[i as usize], 0),
            InputRange::UpToCode => {
                for x in 0..=i {
                    take(&machines[i as usize], x);
                }
                for j in 0..i {
                    take(&machines[j as usize], i);
                }
            }
        }
        out.push(SigmaPoint { value: best, exact });
    }
    out
}

pub fn sigma_value(i: u64, policy: &SigmaPolicy) -> SigmaPoint {
    *sigma_value_table(i, policy).last().unwrap()
}

/// Empirical relation between the two maxima at prefix `i`: every resolved
/// run is checked against the per-run bound `output <= steps + input`, and
/// the headline inequality `sigma_value(i) <= sigma_steps(i) + i` is
/// evaluated on the computed points. The report states what was observed
/// under this numbering and these conventions, nothing stronger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelateReport {
    pub i: u64,
    pub sigma_steps: SigmaPoint,
    pub sigma_value: SigmaPoint,
    pub per_run_bound_holds: bool,
    pub dominance_holds: bool,
    pub runs_checked: u64,
}

impl fmt::Display for RelateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: bool| if b { "holds" } else { "violated" };
        let exact = |e: bool| if e { "exact" } else { "lower bound" };
        writeln!(f, "i: {}", self.i)?;
        writeln!(
            f,
            "sigma-steps: {} ({})",
            self.sigma_steps.value,
            exact(self.sigma_steps.exact)
        )?;
        writeln!(
            f,
            "sigma-value: {} ({})",
            self.sigma_value.value,
            exact(self.sigma_value.exact)
        )?;
        writeln!(f, "runs checked: {}", self.runs_checked)?;
        writeln!(f, "per-run bound output <= steps + input: {}", flag(self.per_run_bound_holds))?;
        writeln!(
            f,
            "dominance sigma-value(i) <= sigma-steps(i) + i: {}",
            flag(self.dominance_holds)
        )
    }
}

pub fn relate_sigmas(i: u64, policy: &SigmaPolicy) -> RelateReport {
    let mut steps_point = SigmaPoint { value: 0, exact: true };
    let mut value_point = SigmaPoint { value: 0, exact: true };
    let mut per_run_bound_holds = true;
    let mut runs_checked = 0u64;
    for code in 0..=i {
        let m = decode_machine(code);
        let max_x = match policy.inputs {
            InputRange::BlankOnly => 0,
            InputRange::UpToCode => i,
        };
        for x in 0..=max_x {
            match probe(&m, x, policy) {
                Probe::Halted { steps, output } => {
                    runs_checked += 1;
                    if output > steps + x {
                        per_run_bound_holds = false;
                    }
                    if x == 0 {
                        steps_point.value = steps_point.value.max(steps);
                    }
                    value_point.value = value_point.value.max(output);
                }
                Probe::CertifiedNonHalting => {}
                Probe::Unresolved => {
                    if x == 0 {
                        steps_point.exact = false;
                    }
                    value_point.exact = false;
                }
            }
        }
    }
    RelateReport {
        i,
        sigma_steps: steps_point,
        sigma_value: value_point,
        per_run_bound_holds,
        dominance_holds: value_point.value <= steps_point.value + i,
        runs_checked,
    }
}
