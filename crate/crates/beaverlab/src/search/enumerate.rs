//! Tree-normal-form enumeration.
//!
//! Machines are grown by simulation from the blank tape: a transition is
//! instantiated only at the step that first needs it. Hitting an undefined
//! cell branches the tree; one child halts right there (canonically writing
//! 1 and moving right), the others try every write, both directions, and
//! every state used so far plus one fresh state. The first transition is
//! pinned to write 1 / move right / go to the second state where one exists,
//! and the all-but-trivial machine that halts on its very first step is
//! emitted once at the root.
//!
//! Two prunings keep the trees small without losing any halting behavior or
//! any reachable non-halting behavior: fresh states are taken in order (state
//! relabelings collapse), and the last undefined cell only gets its halting
//! child (defining it as a step would leave a machine with no reachable halt
//! at all, which scores nothing).

use crate::tm::{Entry, Machine, Move};

/// Steps a partial machine may run before the enumerator gives up waiting
/// for it to reach an undefined cell and emits it for later classification.
/// Sound as long as every branch event in the class happens earlier, which
/// holds whenever the class's true maximum halting time is below this; the
/// search driver asserts that on its final report.
pub const BUILD_FUEL: u64 = 4096;

/// One representative per tree-normal-form class, in a fixed deterministic
/// order, restartable at any emission count via [`TnfEnumerator::skip_to`].
pub fn enumerate_class(states: u8, symbols: u8) -> TnfEnumerator {
    TnfEnumerator::new(states, symbols)
}

#[derive(Clone)]
struct Node {
    table: Vec<Option<Entry>>,
    undefined: u8,
    /// Highest state index mentioned anywhere in the table so far.
    maxused: u8,
}

#[derive(Clone)]
enum Work {
    Emit(Machine),
    Explore(Node),
}

pub struct TnfEnumerator {
    states: u8,
    symbols: u8,
    stack: Vec<Work>,
    emitted: u64,
}

impl TnfEnumerator {
    pub fn new(states: u8, symbols: u8) -> TnfEnumerator {
        assert!(states >= 1, "need at least one state");
        assert!(symbols >= 2, "need at least two symbols");
        let cells = states as usize * symbols as usize;
        let mut blank = Node { table: vec![None; cells], undefined: cells as u8, maxused: 0 };
        let trivial = fill(&blank, states, symbols);
        let first_next = if states >= 2 { 1 } else { 0 };
        blank.table[0] = Some(Entry::Step { write: 1, mv: Move::R, next: first_next });
        blank.undefined -= 1;
        blank.maxused = first_next;
        TnfEnumerator {
            states,
            symbols,
            stack: vec![Work::Explore(blank), Work::Emit(trivial)],
            emitted: 0,
        }
    }

    /// Machines emitted so far; doubles as the resume cursor.
    pub fn cursor(&self) -> u64 {
        self.emitted
    }

    /// Fast-forwards a fresh enumerator to a saved cursor by replaying and
    /// discarding. The walk is deterministic, so what follows is exactly the
    /// continuation of the interrupted stream.
    pub fn skip_to(&mut self, cursor: u64) {
        while self.emitted < cursor {
            if self.next().is_none() {
                panic!("cursor {cursor} lies beyond the end of the stream");
            }
        }
    }

    /// Runs the partial table from blank until it needs an undefined cell.
    fn first_undefined_hit(&self, node: &Node) -> Option<(u8, u8)> {
        let m = self.symbols as usize;
        let mut tape = vec![0u8; 64];
        let mut head = 32i64;
        let mut state = 0u8;
        for _ in 0..BUILD_FUEL {
            if head < 0 || head as usize >= tape.len() {
                let grown = tape.len();
                let mut fresh = vec![0u8; 3 * grown];
                fresh[grown..2 * grown].copy_from_slice(&tape);
                tape = fresh;
                head += grown as i64;
            }
            let symbol = tape[head as usize];
            match node.table[state as usize * m + symbol as usize] {
                None => return Some((state, symbol)),
                Some(Entry::Step { write, mv, next }) => {
                    tape[head as usize] = write;
                    head += mv.delta();
                    state = next;
                }
                Some(Entry::Halt { .. }) => {
                    unreachable!("explored nodes never contain halt entries")
                }
            }
        }
        None
    }
}

/// Completes a partial table: cells the blank-tape run never reached get the
/// canonical halting entry.
fn fill(node: &Node, states: u8, symbols: u8) -> Machine {
    let table = node
        .table
        .iter()
        .map(|cell| cell.unwrap_or(Entry::Halt { write: 1, mv: Move::R }))
        .collect();
    Machine::new(states, symbols, table)
}

impl Iterator for TnfEnumerator {
    type Item = Machine;

    fn next(&mut self) -> Option<Machine> {
        loop {
            match self.stack.pop()? {
                Work::Emit(machine) => {
                    self.emitted += 1;
                    return Some(machine);
                }
                Work::Explore(node) => match self.first_undefined_hit(&node) {
                    None => {
                        self.emitted += 1;
                        return Some(fill(&node, self.states, self.symbols));
                    }
                    Some((state, symbol)) => {
                        let cell = state as usize * self.symbols as usize + symbol as usize;
                        let mut children = Vec::new();
                        let mut halted = node.clone();
                        halted.table[cell] = Some(Entry::Halt { write: 1, mv: Move::R });
                        halted.undefined -= 1;
                        children.push(Work::Emit(fill(&halted, self.states, self.symbols)));
                        if node.undefined >= 2 {
                            let max_next = (node.maxused + 1).min(self.states - 1);
                            for write in 0..self.symbols {
                                for mv in [Move::L, Move::R] {
                                    for next in 0..=max_next {
                                        let mut child = node.clone();
                                        child.table[cell] =
                                            Some(Entry::Step { write, mv, next });
                                        child.undefined -= 1;
                                        child.maxused = child.maxused.max(next);
                                        children.push(Work::Explore(child));
                                    }
                                }
                            }
                        }
                        while let Some(child) = children.pop() {
                            self.stack.push(child);
                        }
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::{run, SimOutcome};

    #[test]
    fn one_state_class_has_two_representatives() {
        let machines: Vec<Machine> = enumerate_class(1, 2).collect();
        assert_eq!(machines.len(), 2);
        assert_eq!(machines[0].to_string(), "1RZ1RZ");
        assert_eq!(machines[1].to_string(), "1RA1RZ");
    }

    #[test]
    fn stream_is_deterministic_and_duplicate_free() {
        let a: Vec<String> = enumerate_class(2, 2).map(|m| m.to_string()).collect();
        let b: Vec<String> = enumerate_class(2, 2).map(|m| m.to_string()).collect();
        assert_eq!(a, b);
        let unique: std::collections::HashSet<&String> = a.iter().collect();
        assert_eq!(unique.len(), a.len(), "duplicate emission");
    }

    #[test]
    fn cursor_restart_continues_the_exact_stream() {
        let full: Vec<String> = enumerate_class(2, 2).map(|m| m.to_string()).collect();
        for cut in [0usize, 1, 7, full.len() / 2, full.len() - 1] {
            let mut resumed = enumerate_class(2, 2);
            resumed.skip_to(cut as u64);
            let rest: Vec<String> = resumed.map(|m| m.to_string()).collect();
            assert_eq!(rest, full[cut..], "cut at {cut}");
        }
    }

    #[test]
    fn first_transition_is_pinned_except_for_the_trivial_root() {
        for m in enumerate_class(2, 2).skip(1) {
            assert_eq!(
                m.entry(0, 0),
                Entry::Step { write: 1, mv: Move::R, next: 1 },
                "machine {m}"
            );
        }
    }

    #[test]
    fn the_two_symbol_champions_appear_in_the_streams() {
        let hit = enumerate_class(2, 2).any(|m| {
            matches!(run(&m, 0, 100), SimOutcome::Halted { steps: 6, score: 4, .. })
        });
        assert!(hit, "no (2,2) machine with steps 6 and score 4 emitted");
    }

    #[test]
    fn every_emission_is_within_its_declared_class() {
        for m in enumerate_class(3, 2) {
            assert_eq!((m.states(), m.symbols()), (3, 2));
        }
    }
}
