//! Refuting every halt cell by backward search over a bounded tape window.
//!
//! Fix one halt cell (a state/symbol pair whose entry halts) and pin a
//! window of `width` cells so that the halting head sits at its center.
//! Abstract configurations keep only the control state, the head position
//! relative to the window (inside, or parked beyond either edge), and the
//! window contents, where a cell may be "unconstrained". Walking the step
//! relation backward from the halting configuration explores everything
//! that could possibly lead to it: predecessors inside the window must
//! write what the window shows, while the tape outside is unknown, so a
//! head beyond the edge may have done anything and re-enters carrying no
//! information.
//!
//! Every concrete configuration of a run that ends in this halt cell is
//! covered by some backward-reachable abstract configuration. The run
//! starts in state A on an all-blank tape, so if no backward-reachable
//! abstract configuration is compatible with that start, the halt cell is
//! never executed. One refutation per halt cell proves the machine never
//! halts, and the whole search is cheap enough that the checker simply
//! replays it.

use std::collections::{HashSet, VecDeque};

use crate::tm::{Entry, Machine, Move};

use super::Certificate;

const WIDTHS: [u8; 7] = [2, 3, 4, 5, 6, 7, 8];
/// Abstract-state budget per halt cell; genuine refutations close with a
/// few hundred states, so hitting this means the window is too narrow.
const NODE_BUDGET: usize = 200_000;

const UNKNOWN: u8 = 0xff;

/// Head position `-1` means "somewhere left of the window", `width` means
/// "somewhere right of it".
#[derive(Clone, PartialEq, Eq, Hash)]
struct Node {
    state: u8,
    pos: i8,
    window: Vec<u8>,
}

impl Node {
    fn compatible_with_start(&self) -> bool {
        self.state == 0 && self.window.iter().all(|&c| c == 0 || c == UNKNOWN)
    }
}

/// All abstract predecessors of `node` under one machine step.
fn predecessors(m: &Machine, node: &Node, out: &mut Vec<Node>) {
    let width = node.window.len() as i8;
    for q in 0..m.states() {
        for s in 0..m.symbols() {
            let Entry::Step { write, mv, next } = m.entry(q, s) else { continue };
            if next != node.state {
                continue;
            }
            // the head was at `prev`, wrote `write` there, then moved to
            // node.pos
            let prev = node.pos - mv.delta() as i8;
            if (0..width).contains(&prev) {
                let cell = node.window[prev as usize];
                if cell != UNKNOWN && cell != write {
                    continue;
                }
                let mut w = node.window.clone();
                w[prev as usize] = s;
                out.push(Node { state: q, pos: prev, window: w });
            } else if prev < 0 || prev >= width {
                // the write landed outside the window, where anything goes;
                // collapse all outside positions to the parked one
                let parked = if prev < 0 { -1 } else { width };
                // only steps that could place the head at node.pos matter:
                // from parked left the head can re-enter at cell 0 moving
                // right, from parked right at the last cell moving left, or
                // stay parked
                let enters = (parked == -1 && node.pos == 0 && mv == Move::R)
                    || (parked == width && node.pos == width - 1 && mv == Move::L)
                    || node.pos == parked;
                if enters {
                    out.push(Node { state: q, pos: parked, window: node.window.clone() });
                }
            }
        }
    }
}

/// True when no run from blank tape can ever execute the halt entry at
/// `(halt_state, halt_symbol)`, demonstrated inside a width-`width` window.
fn refutes(m: &Machine, halt_state: u8, halt_symbol: u8, width: u8) -> bool {
    let width = width as usize;
    let anchor = width / 2;
    let mut seed = vec![UNKNOWN; width];
    seed[anchor] = halt_symbol;
    let root = Node { state: halt_state, pos: anchor as i8, window: seed };
    let mut seen: HashSet<Node> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(root.clone());
    queue.push_back(root);
    let mut scratch = Vec::new();
    while let Some(node) = queue.pop_front() {
        if node.compatible_with_start() {
            return false;
        }
        scratch.clear();
        predecessors(m, &node, &mut scratch);
        for p in scratch.drain(..) {
            if seen.len() >= NODE_BUDGET {
                return false;
            }
            if seen.insert(p.clone()) {
                queue.push_back(p);
            }
        }
    }
    true
}

/// Re-runs the backward search the certificate promises will close.
pub(crate) fn check_unreachable(m: &Machine, width: u8) -> bool {
    if !(2..=16).contains(&width) {
        return false;
    }
    for q in 0..m.states() {
        for s in 0..m.symbols() {
            if let Entry::Halt { .. } = m.entry(q, s) {
                if !refutes(m, q, s, width) {
                    return false;
                }
            }
        }
    }
    true
}

/// Smallest window that refutes every halt cell, if any does.
pub fn decide_halt_unreachable(m: &Machine) -> Option<Certificate> {
    WIDTHS
        .into_iter()
        .find(|&w| check_unreachable(m, w))
        .map(|width| Certificate::HaltUnreachable { width })
}
