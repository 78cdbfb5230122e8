//! Dense-tape simulator. Semantically identical to stepping a
//! [`Configuration`](super::Configuration), but keeps the tape in a flat
//! buffer and tracks visited extent and score incrementally, which is what
//! the deciders and the enumerator need to stay fast at desk scale.

use super::{Entry, Machine, SimOutcome, StepResult};

#[derive(Debug, Clone)]
pub struct Simulator<'a> {
    machine: &'a Machine,
    tape: Vec<u8>,
    /// Absolute position of `tape[0]`.
    origin: i64,
    head: i64,
    state: u8,
    steps: u64,
    score: u64,
    min_visited: i64,
    max_visited: i64,
    halted: bool,
}

impl<'a> Simulator<'a> {
    pub fn with_input(machine: &'a Machine, input: u64) -> Simulator<'a> {
        let input = usize::try_from(input).expect("input block too large for memory");
        let mut tape = vec![1u8; input.max(1)];
        if input == 0 {
            tape[0] = 0;
        }
        Simulator {
            machine,
            tape,
            origin: 0,
            head: 0,
            state: 0,
            steps: 0,
            score: input as u64,
            min_visited: 0,
            max_visited: 0,
            halted: false,
        }
    }

    pub fn machine(&self) -> &'a Machine {
        self.machine
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn state(&self) -> u8 {
        self.state
    }

    pub fn head(&self) -> i64 {
        self.head
    }

    pub fn score(&self) -> u64 {
        self.score
    }

    pub fn halted(&self) -> bool {
        self.halted
    }

    pub fn min_visited(&self) -> i64 {
        self.min_visited
    }

    pub fn max_visited(&self) -> i64 {
        self.max_visited
    }

    pub fn read_cell(&self, pos: i64) -> u8 {
        if pos < self.origin {
            return 0;
        }
        let idx = (pos - self.origin) as usize;
        self.tape.get(idx).copied().unwrap_or(0)
    }

    /// Cells `lo..=hi` by absolute position, blanks included.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<u8> {
        (lo..=hi).map(|p| self.read_cell(p)).collect()
    }

    /// Non-blank span as (start position, cells); trimmed on both ends.
    pub fn trimmed_tape(&self) -> (i64, Vec<u8>) {
        let first = self.tape.iter().position(|&c| c != 0);
        let Some(first) = first else { return (0, Vec::new()) };
        let last = self.tape.iter().rposition(|&c| c != 0).unwrap();
        (self.origin + first as i64, self.tape[first..=last].to_vec())
    }

    fn slot(&mut self, pos: i64) -> &mut u8 {
        if pos < self.origin {
            let grow = ((self.origin - pos) as usize).max(self.tape.len().max(64));
            let mut fresh = vec![0u8; grow + self.tape.len()];
            fresh[grow..].copy_from_slice(&self.tape);
            self.tape = fresh;
            self.origin -= grow as i64;
        }
        let idx = (pos - self.origin) as usize;
        if idx >= self.tape.len() {
            let target = (idx + 1).max(self.tape.len() * 2).max(64);
            self.tape.resize(target, 0);
        }
        &mut self.tape[idx]
    }

    /// One transition; the halting entry writes and moves like any other.
    pub fn step(&mut self) -> StepResult {
        debug_assert!(!self.halted, "stepping a halted machine");
        let symbol = self.read_cell(self.head);
        let entry = self.machine.entry(self.state, symbol);
        let (write, mv, next) = match entry {
            Entry::Step { write, mv, next } => (write, mv, Some(next)),
            Entry::Halt { write, mv } => (write, mv, None),
        };
        if write != symbol {
            if symbol == 0 {
                self.score += 1;
            } else if write == 0 {
                self.score -= 1;
            }
            *self.slot(self.head) = write;
        }
        self.head += mv.delta();
        self.min_visited = self.min_visited.min(self.head);
        self.max_visited = self.max_visited.max(self.head);
        self.steps += 1;
        match next {
            Some(next) => {
                self.state = next;
                StepResult::Continued
            }
            None => {
                self.halted = true;
                StepResult::Halted
            }
        }
    }

    /// Runs at most `fuel` further steps. Step counts in the outcome are
    /// totals since the start configuration, so resumed runs report the same
    /// numbers as single runs.
    pub fn run_for(&mut self, fuel: u64) -> SimOutcome {
        for _ in 0..fuel {
            if self.step() == StepResult::Halted {
                return SimOutcome::Halted {
                    steps: self.steps,
                    score: self.score,
                    output: self.score,
                };
            }
        }
        SimOutcome::FuelExhausted { steps: self.steps }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{decode_machine, Configuration, Machine};
    use super::*;

    #[test]
    fn dense_and_sparse_semantics_agree_stepwise() {
        for code in (0..60_000u64).step_by(101) {
            let m = decode_machine(code);
            let mut sim = Simulator::with_input(&m, 2);
            let mut cfg = Configuration::with_input(2);
            for _ in 0..150 {
                let a = sim.step();
                let b = super::super::step(&m, &mut cfg);
                assert_eq!(a, b, "code {code}");
                assert_eq!(sim.state(), cfg.state, "code {code}");
                assert_eq!(sim.head(), cfg.head, "code {code}");
                assert_eq!(sim.score(), cfg.score(), "code {code}");
                if a == StepResult::Halted {
                    break;
                }
            }
        }
    }

    #[test]
    fn visited_extent_brackets_the_head_path() {
        let m: Machine = "1RB1LB_1LA1RZ".parse().unwrap();
        let mut sim = Simulator::with_input(&m, 0);
        sim.run_for(100);
        assert!(sim.min_visited() <= 0 && sim.max_visited() >= 0);
        assert!(sim.min_visited() <= sim.head() && sim.head() <= sim.max_visited());
    }

    #[test]
    fn trimmed_tape_matches_window_reads() {
        let m: Machine = "1RB1LB_1LA1RZ".parse().unwrap();
        let mut sim = Simulator::with_input(&m, 0);
        sim.run_for(100);
        let (start, cells) = sim.trimmed_tape();
        assert_eq!(cells.len() as u64, 4);
        for (i, &c) in cells.iter().enumerate() {
            assert_eq!(sim.read_cell(start + i as i64), c);
        }
        assert_ne!(cells[0], 0);
        assert_ne!(*cells.last().unwrap(), 0);
    }

    #[test]
    fn leftward_growth_keeps_absolute_positions_stable() {
        // Runs left forever; origin must shift without corrupting reads.
        let m: Machine = "1LA0LA".parse().unwrap();
        let mut sim = Simulator::with_input(&m, 0);
        for expect in 1..=500i64 {
            sim.step();
            assert_eq!(sim.head(), -expect);
            assert_eq!(sim.read_cell(-expect + 1), 1);
        }
        assert_eq!(sim.score(), 500);
    }
}
