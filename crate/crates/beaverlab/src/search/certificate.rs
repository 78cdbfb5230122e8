//! Non-halting certificates and their independent checker.
//!
//! A certificate never encodes why a decider believed the claim, only the
//! data needed to recheck it from scratch: a recurrence to replay, a window
//! width whose backward closure the checker re-runs, or an automaton whose
//! three closure facts the checker re-establishes. `check_certificate`
//! therefore accepts no certificate a buggy decider could fabricate.

use std::fmt;
use std::str::FromStr;

use crate::tm::{Machine, Simulator, StepResult};

use super::closure::{verify_closure, Dfa};
use super::unreachable::check_unreachable;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// The exact configuration (state, head position, tape) at `start_step`
    /// recurs `period` steps later. Determinism then forces an eternal loop.
    Cycler { start_step: u64, period: u64 },
    /// The configuration at `start_step` recurs at `start_step + period`
    /// translated by `shift` cells, with the head on a fresh-record cell both
    /// times. The run then reproduces itself shifted, forever.
    TranslatedCycler { start_step: u64, period: u64, shift: i64 },
    /// Backward search over a pinned window of `width` cells refutes every
    /// halt entry of the table; see [`crate::search::unreachable`].
    HaltUnreachable { width: u8 },
    /// The automaton accepts the start configuration's word, is closed under
    /// every step rewrite, and accepts no halting word; see
    /// [`crate::search::closure`].
    Closure { dfa: Dfa },
}

impl Certificate {
    /// Recurrence period, for the certificate families that assert one.
    pub fn period(&self) -> Option<u64> {
        match *self {
            Certificate::Cycler { period, .. }
            | Certificate::TranslatedCycler { period, .. } => Some(period),
            Certificate::HaltUnreachable { .. } | Certificate::Closure { .. } => None,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Cycler { start_step, period } => {
                write!(f, "cycler:{start_step}:{period}")
            }
            Certificate::TranslatedCycler { start_step, period, shift } => {
                write!(f, "tc:{start_step}:{period}:{shift}")
            }
            Certificate::HaltUnreachable { width } => write!(f, "unreachable:{width}"),
            Certificate::Closure { dfa } => write!(f, "closure:{dfa}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad certificate text {0:?}")]
pub struct ParseCertificateError(pub String);

impl FromStr for Certificate {
    type Err = ParseCertificateError;

    fn from_str(s: &str) -> Result<Certificate, ParseCertificateError> {
        let bad = || ParseCertificateError(s.to_string());
        if let Some(dfa) = s.strip_prefix("closure:") {
            return Ok(Certificate::Closure { dfa: dfa.parse().map_err(|_| bad())? });
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["cycler", start, period] => Ok(Certificate::Cycler {
                start_step: start.parse().map_err(|_| bad())?,
                period: period.parse().map_err(|_| bad())?,
            }),
            ["tc", start, period, shift] => Ok(Certificate::TranslatedCycler {
                start_step: start.parse().map_err(|_| bad())?,
                period: period.parse().map_err(|_| bad())?,
                shift: shift.parse().map_err(|_| bad())?,
            }),
            ["unreachable", width] => Ok(Certificate::HaltUnreachable {
                width: width.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

/// Replays `m` from the blank tape and accepts iff the recurrence claimed by
/// `c` actually occurs. Rejection never panics: a bad certificate is a
/// decider bug to report, not a crash.
pub fn check_certificate(m: &Machine, c: &Certificate) -> bool {
    check_from_input(m, 0, c)
}

/// Same check from an arbitrary input block. The public certificate store
/// only ever holds blank-tape certificates; the sigma tables reuse the
/// recurrence argument on nonzero inputs without persisting anything. The
/// window and automaton families argue from the blank start configuration
/// and say nothing about other inputs, so they only check at input zero.
pub(crate) fn check_from_input(m: &Machine, input: u64, c: &Certificate) -> bool {
    match c {
        Certificate::Cycler { start_step, period } => {
            check_cycler(m, input, *start_step, *period)
        }
        Certificate::TranslatedCycler { start_step, period, shift } => {
            check_translated(m, input, *start_step, *period, *shift)
        }
        Certificate::HaltUnreachable { width } => input == 0 && check_unreachable(m, *width),
        Certificate::Closure { dfa } => input == 0 && verify_closure(m, dfa),
    }
}

/// Advances `steps` transitions; false means the machine halted first.
fn advance(sim: &mut Simulator<'_>, steps: u64) -> bool {
    for _ in 0..steps {
        if sim.step() == StepResult::Halted {
            return false;
        }
    }
    true
}

fn check_cycler(m: &Machine, input: u64, start: u64, period: u64) -> bool {
    if period == 0 {
        return false;
    }
    let mut sim = Simulator::with_input(m, input);
    if !advance(&mut sim, start) {
        return false;
    }
    let snap = (sim.state(), sim.head(), sim.trimmed_tape());
    if !advance(&mut sim, period) {
        return false;
    }
    snap == (sim.state(), sim.head(), sim.trimmed_tape())
}

/// Record-edge recurrence up to translation.
///
/// Both snapshot points must have the head at the visited extreme in the
/// travel direction, so everything beyond the head is untouched blank. The
/// tape behind the head is compared down to the deepest excursion the run
/// made between the two points; beyond that depth the interval never looked,
/// so equality of the compared window makes the second point a shifted copy
/// of the first on the whole relevant half-tape, and the run repeats shifted
/// forever.
fn check_translated(m: &Machine, input: u64, start: u64, period: u64, shift: i64) -> bool {
    if period == 0 || shift == 0 {
        return false;
    }
    let right = shift > 0;
    let mut sim = Simulator::with_input(m, input);
    if !advance(&mut sim, start) {
        return false;
    }
    let p1 = sim.head();
    let at_edge =
        |sim: &Simulator<'_>| if right { sim.head() == sim.max_visited() } else { sim.head() == sim.min_visited() };
    if !at_edge(&sim) {
        return false;
    }
    let state1 = sim.state();
    let (tape1_start, tape1) = sim.trimmed_tape();
    let read1 = |pos: i64| -> u8 {
        if pos < tape1_start {
            return 0;
        }
        usize::try_from(pos - tape1_start).ok().and_then(|i| tape1.get(i)).copied().unwrap_or(0)
    };
    // Deepest backward excursion over the interval, head at p1 included.
    let mut far = p1;
    for _ in 0..period {
        if sim.step() == StepResult::Halted {
            return false;
        }
        far = if right { far.min(sim.head()) } else { far.max(sim.head()) };
    }
    let p2 = sim.head();
    if sim.state() != state1 || p2 - p1 != shift || !at_edge(&sim) {
        return false;
    }
    let depth = if right { p1 - far } else { far - p1 };
    for o in 0..=depth {
        let (then, now) = if right { (p1 - o, p2 - o) } else { (p1 + o, p2 + o) };
        if read1(then) != sim.read_cell(now) {
            return false;
        }
    }
    true
}
