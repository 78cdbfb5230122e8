//! Non-halting deciders. Each returns `Some(certificate)` only after the
//! independent checker has accepted the claim, so a `Some` from here is
//! already audited; `None` is always sound and means nothing.

use crate::tm::{Machine, Simulator, StepResult};

use super::certificate::{check_from_input, Certificate};

/// Stored record events per (state, direction) before the oldest is dropped.
const RECORD_CAP: usize = 12;
/// Cells of tape remembered behind a record position. Excursions deeper than
/// this make the event unverifiable by the fast matcher, never unsound.
const WINDOW_CAP: usize = 8192;

/// Looks for an exact configuration recurrence from the blank tape using
/// doubling checkpoints: the comparison point is frozen at steps 1, 2, 4, 8,
/// ... so any cycle entered within the fuel budget is eventually caught.
pub fn decide_cycler(m: &Machine, fuel: u64) -> Option<Certificate> {
    cycler_from_input(m, 0, fuel)
}

/// Looks for a recurrence up to tape translation between two record-breaking
/// events (head on a never-visited cell) in the same state and direction.
pub fn decide_translated_cycler(m: &Machine, fuel: u64) -> Option<Certificate> {
    translated_from_input(m, 0, fuel)
}

pub(crate) fn cycler_from_input(m: &Machine, input: u64, fuel: u64) -> Option<Certificate> {
    let mut sim = Simulator::with_input(m, input);
    let mut mark_step = 0u64;
    let mut mark = (sim.state(), sim.head(), sim.trimmed_tape());
    let mut next_mark = 1u64;
    for _ in 0..fuel {
        if sim.step() == StepResult::Halted {
            return None;
        }
        if sim.state() == mark.0 && sim.head() == mark.1 && sim.trimmed_tape() == mark.2 {
            let cert = Certificate::Cycler {
                start_step: mark_step,
                period: sim.steps() - mark_step,
            };
            if check_from_input(m, input, &cert) {
                return Some(cert);
            }
            return None;
        }
        if sim.steps() == next_mark {
            mark_step = sim.steps();
            mark = (sim.state(), sim.head(), sim.trimmed_tape());
            next_mark *= 2;
        }
    }
    None
}

/// One record-breaking event: the head reached a fresh extreme cell.
struct RecordEvent {
    state: u8,
    step: u64,
    pos: i64,
    /// Tape behind the record cell at event time: for rightward records
    /// cells `pos - window.len() + 1 ..= pos`, mirrored for leftward.
    window: Vec<u8>,
    /// True when the window reaches the opposite visited extreme, so cells
    /// past it were still untouched blanks at event time.
    complete: bool,
    /// Deepest backward head excursion observed since the event.
    excursion: i64,
}

impl RecordEvent {
    /// Tape symbol `o` cells behind the record position at event time, or
    /// None when the capped window cannot answer.
    fn behind(&self, o: i64) -> Option<u8> {
        debug_assert!(o >= 0);
        match usize::try_from(o) {
            Ok(o) if o < self.window.len() => {
                Some(self.window[self.window.len() - 1 - o])
            }
            _ if self.complete => Some(0),
            _ => None,
        }
    }
}

fn capture(sim: &Simulator<'_>, rightward: bool, step: u64) -> RecordEvent {
    let pos = sim.head();
    let span = if rightward { pos - sim.min_visited() } else { sim.max_visited() - pos };
    let span = span as usize + 1;
    let keep = span.min(WINDOW_CAP);
    let window = if rightward {
        sim.window(pos - keep as i64 + 1, pos)
    } else {
        let mut w = sim.window(pos, pos + keep as i64 - 1);
        w.reverse();
        w
    };
    RecordEvent { state: sim.state(), step, pos, window, complete: keep == span, excursion: pos }
}

pub(crate) fn translated_from_input(m: &Machine, input: u64, fuel: u64) -> Option<Certificate> {
    let mut sim = Simulator::with_input(m, input);
    let mut right: Vec<RecordEvent> = vec![capture(&sim, true, 0)];
    let mut left: Vec<RecordEvent> = vec![capture(&sim, false, 0)];
    for _ in 0..fuel {
        let (prev_max, prev_min) = (sim.max_visited(), sim.min_visited());
        if sim.step() == StepResult::Halted {
            return None;
        }
        let head = sim.head();
        for ev in &mut right {
            ev.excursion = ev.excursion.min(head);
        }
        for ev in &mut left {
            ev.excursion = ev.excursion.max(head);
        }
        let (events, rightward) = if head > prev_max {
            (&mut right, true)
        } else if head < prev_min {
            (&mut left, false)
        } else {
            continue;
        };
        if let Some(cert) = match_event(m, input, &sim, events, rightward) {
            return Some(cert);
        }
        let fresh = capture(&sim, rightward, sim.steps());
        let same_state = events.iter().filter(|e| e.state == fresh.state).count();
        if same_state >= RECORD_CAP {
            let oldest =
                events.iter().position(|e| e.state == fresh.state).expect("counted above");
            events.remove(oldest);
        }
        events.push(fresh);
    }
    None
}

fn match_event(
    m: &Machine,
    input: u64,
    sim: &Simulator<'_>,
    events: &[RecordEvent],
    rightward: bool,
) -> Option<Certificate> {
    let pos = sim.head();
    'candidates: for ev in events {
        if ev.state != sim.state() {
            continue;
        }
        let depth = if rightward { ev.pos - ev.excursion } else { ev.excursion - ev.pos };
        for o in 0..=depth {
            let now = if rightward { sim.read_cell(pos - o) } else { sim.read_cell(pos + o) };
            match ev.behind(o) {
                Some(then) if then == now => {}
                _ => continue 'candidates,
            }
        }
        let cert = Certificate::TranslatedCycler {
            start_step: ev.step,
            period: sim.steps() - ev.step,
            shift: pos - ev.pos,
        };
        if check_from_input(m, input, &cert) {
            return Some(cert);
        }
    }
    None
}
