//! Turing machines over a finite symbol alphabet on a two-way infinite tape.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * The blank symbol is `0`. States are numbered from `0` (printed `A`).
//! * Every table entry is total. A halt entry still writes a symbol and moves
//!   the head, and executing it counts as one step.
//! * Input `n` is a block of `n` ones with the head on the leftmost one
//!   (so input `0` is the blank tape).
//! * The output of a halting run is its score: the number of non-blank
//!   cells left on the tape.

mod format;
mod numbering;
mod sim;

pub use format::ParseMachineError;
pub use numbering::{class_block, class_size, ClassBlock};
pub use sim::Simulator;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Head movement. Every transition moves; there is no stay option.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    L,
    R,
}

impl Move {
    pub fn delta(self) -> i64 {
        match self {
            Move::L => -1,
            Move::R => 1,
        }
    }
}

/// One table entry: either a regular transition or a halting one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    Step { write: u8, mv: Move, next: u8 },
    Halt { write: u8, mv: Move },
}

/// A machine table. `table[state * symbols + symbol]` gives the entry
/// executed when `state` reads `symbol`. All entries are present; partially
/// built machines live only inside the enumerator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Machine {
    states: u8,
    symbols: u8,
    table: Vec<Entry>,
}

impl Machine {
    /// Builds a machine from a full table in (state, symbol) row-major order.
    ///
    /// Panics if the table has the wrong length or references a state out of
    /// range; machines from `decode_machine` and the parser are always valid.
    pub fn new(states: u8, symbols: u8, table: Vec<Entry>) -> Machine {
        assert!(states >= 1 && states <= 25, "states out of range");
        assert!((2..=10).contains(&symbols), "symbols out of range");
        assert_eq!(table.len(), states as usize * symbols as usize);
        for entry in &table {
            let (write, next) = match *entry {
                Entry::Step { write, next, .. } => (write, Some(next)),
                Entry::Halt { write, .. } => (write, None),
            };
            assert!(write < symbols, "write symbol out of range");
            if let Some(next) = next {
                assert!(next < states, "next state out of range");
            }
        }
        Machine { states, symbols, table }
    }

    pub fn states(&self) -> u8 {
        self.states
    }

    pub fn symbols(&self) -> u8 {
        self.symbols
    }

    pub fn entry(&self, state: u8, symbol: u8) -> Entry {
        self.table[state as usize * self.symbols as usize + symbol as usize]
    }

    pub fn table(&self) -> &[Entry] {
        &self.table
    }

    /// Total, injective numbering of machine tables. Codes are blocked by
    /// class: all `(n, m)` machines with smaller `n + m` come first, ties
    /// ordered by `n`, and within a class tables are ordered lexicographically
    /// by entry text. See [`decode_machine`] for the inverse.
    pub fn code(&self) -> u64 {
        numbering::encode(self)
    }
}

/// Inverse of [`Machine::code`]; total on all of `u64`.
pub fn decode_machine(code: u64) -> Machine {
    numbering::decode(code)
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::print(self))
    }
}

impl FromStr for Machine {
    type Err = ParseMachineError;

    fn from_str(s: &str) -> Result<Machine, ParseMachineError> {
        format::parse(s)
    }
}

/// A fully explicit configuration with a sparse tape. This is the reference
/// semantics; [`run`] uses a dense tape internally but agrees step for step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    /// Non-blank cells only. Writing a blank removes the key, so equal
    /// configurations compare equal structurally.
    pub tape: BTreeMap<i64, u8>,
    pub head: i64,
    pub state: u8,
    pub steps_taken: u64,
}

impl Configuration {
    /// Blank-tape start configuration.
    pub fn blank() -> Configuration {
        Configuration::with_input(0)
    }

    /// `input` ones to the right of (and including) the head cell.
    pub fn with_input(input: u64) -> Configuration {
        let mut tape = BTreeMap::new();
        for i in 0..input as i64 {
            tape.insert(i, 1);
        }
        Configuration { tape, head: 0, state: 0, steps_taken: 0 }
    }

    pub fn read(&self) -> u8 {
        self.tape.get(&self.head).copied().unwrap_or(0)
    }

    fn write(&mut self, symbol: u8) {
        if symbol == 0 {
            self.tape.remove(&self.head);
        } else {
            self.tape.insert(self.head, symbol);
        }
    }

    pub fn score(&self) -> u64 {
        self.tape.len() as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepResult {
    Continued,
    Halted,
}

/// Executes one transition in place. A halt entry writes, moves, and counts
/// as a step before reporting `Halted`.
pub fn step(m: &Machine, c: &mut Configuration) -> StepResult {
    let symbol = c.read();
    let entry = m.entry(c.state, symbol);
    c.steps_taken += 1;
    match entry {
        Entry::Step { write, mv, next } => {
            c.write(write);
            c.head += mv.delta();
            c.state = next;
            StepResult::Continued
        }
        Entry::Halt { write, mv } => {
            c.write(write);
            c.head += mv.delta();
            StepResult::Halted
        }
    }
}

/// Outcome of a fueled run. `run` itself only produces the first two
/// variants; `NonHalting` is how classified runs carry their certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimOutcome {
    Halted { steps: u64, score: u64, output: u64 },
    FuelExhausted { steps: u64 },
    NonHalting { certificate: crate::search::Certificate },
}

/// Runs `m` on `input` for at most `fuel` steps. Deterministic; more fuel
/// never changes a halting result, it can only turn `FuelExhausted` into
/// `Halted`.
pub fn run(m: &Machine, input: u64, fuel: u64) -> SimOutcome {
    let mut sim = Simulator::with_input(m, input);
    sim.run_for(fuel)
}
