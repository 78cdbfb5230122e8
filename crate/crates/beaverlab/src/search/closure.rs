//! Regular tape-language certificates for machines whose non-halting no
//! recurrence can witness.
//!
//! A configuration is spelled as a word: one letter per cell of the visited
//! span, with the head's cell replaced by a letter that also carries the
//! control state. One machine step rewrites that word locally: a two-letter
//! factor changes when the head moves inside the span, and a one-letter
//! factor at a word boundary grows the word when the head pushes into fresh
//! blank. A finite automaton over these letters is a non-halting proof when
//! three facts hold:
//!
//! 1. it accepts the one-letter word of the initial configuration,
//! 2. its language is closed under every step rewrite, and
//! 3. it accepts no word containing a halt-executing head letter.
//!
//! By induction the word of every reachable configuration stays in the
//! language, while a halting run would have to pass through a word that
//! fact 3 rejects. Nothing about how the automaton was found enters this
//! argument, so [`verify_closure`] is the entire trusted base and the
//! learner is free to guess.
//!
//! The learner simulates a prefix of the run, stores each configuration
//! word in a prefix tree, merges tree states whose onward behavior agrees
//! to a fixed depth, and determinizes. Growing sweeps and counters collapse
//! into loops under that merge; any overgeneralization that breaks closure
//! dies in the checker.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::tm::{Entry, Machine, Move, Simulator, StepResult};

use super::Certificate;

const LEARN_HORIZONS: [u64; 2] = [500, 1_000];
const TAIL_DEPTHS: [usize; 3] = [2, 3, 4];
const PTA_NODE_CAP: usize = 2_000_000;
/// Certificates bigger than this are rejected unchecked; everything the
/// learner emits is two orders of magnitude smaller.
const DFA_STATE_CAP: usize = 4_096;

/// Letters: `0..symbols` are tape symbols, then state-carrying head letters
/// in (state, symbol) order.
fn head_letter(m: &Machine, state: u8, symbol: u8) -> u16 {
    m.symbols() as u16 + state as u16 * m.symbols() as u16 + symbol as u16
}

fn alphabet_size(m: &Machine) -> u16 {
    m.symbols() as u16 * (1 + m.states() as u16)
}

fn config_word(m: &Machine, sim: &Simulator<'_>) -> Vec<u16> {
    let (lo, hi) = (sim.min_visited(), sim.max_visited());
    let mut word = Vec::with_capacity((hi - lo + 1) as usize);
    for pos in lo..=hi {
        let s = sim.read_cell(pos);
        word.push(if pos == sim.head() { head_letter(m, sim.state(), s) } else { s as u16 });
    }
    word
}

/// Complete deterministic automaton over configuration letters; state 0 is
/// the start state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    letters: u16,
    accept: Vec<bool>,
    /// Row-major: `next[state * letters + letter]`.
    next: Vec<u32>,
}

impl Dfa {
    pub fn states(&self) -> usize {
        self.accept.len()
    }

    fn step(&self, state: usize, letter: u16) -> usize {
        self.next[state * self.letters as usize + letter as usize] as usize
    }

    fn accepts(&self, word: &[u16]) -> bool {
        let mut s = 0;
        for &a in word {
            s = self.step(s, a);
        }
        self.accept[s]
    }

    /// All transition targets in range, shape consistent.
    fn well_formed(&self) -> bool {
        let n = self.states();
        n >= 1
            && n <= DFA_STATE_CAP
            && self.letters >= 1
            && self.next.len() == n * self.letters as usize
            && self.next.iter().all(|&t| (t as usize) < n)
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", self.letters, self.states())?;
        for &a in &self.accept {
            write!(f, "{}", if a { '1' } else { '0' })?;
        }
        write!(f, ":")?;
        for (i, &t) in self.next.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad automaton text")]
pub struct ParseDfaError;

impl FromStr for Dfa {
    type Err = ParseDfaError;

    fn from_str(s: &str) -> Result<Dfa, ParseDfaError> {
        let mut parts = s.split(':');
        let letters: u16 = parts.next().ok_or(ParseDfaError)?.parse().map_err(|_| ParseDfaError)?;
        let states: usize = parts.next().ok_or(ParseDfaError)?.parse().map_err(|_| ParseDfaError)?;
        let bits = parts.next().ok_or(ParseDfaError)?;
        let table = parts.next().ok_or(ParseDfaError)?;
        if parts.next().is_some() || bits.len() != states {
            return Err(ParseDfaError);
        }
        let accept: Vec<bool> = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ParseDfaError),
            })
            .collect::<Result<_, _>>()?;
        let next: Vec<u32> = table
            .split(',')
            .map(|t| t.parse().map_err(|_| ParseDfaError))
            .collect::<Result<_, _>>()?;
        let dfa = Dfa { letters, accept, next };
        if dfa.well_formed() {
            Ok(dfa)
        } else {
            Err(ParseDfaError)
        }
    }
}

// ---------------------------------------------------------------- checker

/// One step of the machine as a local word rewrite. `from` at a position
/// becomes `to`; boundary rules anchor to a word end, where the word grows
/// by the blank cell the head just claimed.
struct Rule {
    from: Vec<u16>,
    to: Vec<u16>,
    at_start: bool,
    at_end: bool,
}

fn step_rules(m: &Machine) -> Vec<Rule> {
    let mut rules = Vec::new();
    for q in 0..m.states() {
        for s in 0..m.symbols() {
            let Entry::Step { write, mv, next } = m.entry(q, s) else { continue };
            let h = head_letter(m, q, s);
            match mv {
                Move::R => {
                    for t in 0..m.symbols() {
                        rules.push(Rule {
                            from: vec![h, t as u16],
                            to: vec![write as u16, head_letter(m, next, t)],
                            at_start: false,
                            at_end: false,
                        });
                    }
                    rules.push(Rule {
                        from: vec![h],
                        to: vec![write as u16, head_letter(m, next, 0)],
                        at_start: false,
                        at_end: true,
                    });
                }
                Move::L => {
                    for t in 0..m.symbols() {
                        rules.push(Rule {
                            from: vec![t as u16, h],
                            to: vec![head_letter(m, next, t), write as u16],
                            at_start: false,
                            at_end: false,
                        });
                    }
                    rules.push(Rule {
                        from: vec![h],
                        to: vec![head_letter(m, next, 0), write as u16],
                        at_start: true,
                        at_end: false,
                    });
                }
            }
        }
    }
    rules
}

/// Does every accepted word that contains the rule's factor rewrite into
/// another accepted word? Checked on the product of the automaton with
/// itself: one side reads the original word, the other the rewritten one,
/// with a flag for "factor already consumed".
fn rule_closed(dfa: &Dfa, rule: &Rule) -> bool {
    let n = dfa.states();
    let idx = |o: usize, r: usize, past: bool| (o * n + r) * 2 + past as usize;
    let mut seen = vec![false; n * n * 2];
    let mut queue = VecDeque::new();
    seen[idx(0, 0, false)] = true;
    queue.push_back((0usize, 0usize, false));
    while let Some((os, rs, past)) = queue.pop_front() {
        if past {
            if dfa.accept[os] && !dfa.accept[rs] {
                return false;
            }
            if !rule.at_end {
                for a in 0..dfa.letters {
                    let node = (dfa.step(os, a), dfa.step(rs, a), true);
                    if !seen[idx(node.0, node.1, true)] {
                        seen[idx(node.0, node.1, true)] = true;
                        queue.push_back(node);
                    }
                }
            }
            continue;
        }
        // consume the factor here
        let mut o = os;
        for &a in &rule.from {
            o = dfa.step(o, a);
        }
        let mut r = rs;
        for &a in &rule.to {
            r = dfa.step(r, a);
        }
        if rule.at_end {
            if dfa.accept[o] && !dfa.accept[r] {
                return false;
            }
        } else if !seen[idx(o, r, true)] {
            seen[idx(o, r, true)] = true;
            queue.push_back((o, r, true));
        }
        // or push the factor further right
        if !rule.at_start {
            for a in 0..dfa.letters {
                let node = (dfa.step(os, a), dfa.step(rs, a), false);
                if !seen[idx(node.0, node.1, false)] {
                    seen[idx(node.0, node.1, false)] = true;
                    queue.push_back(node);
                }
            }
        }
    }
    true
}

/// No accepted word may contain any of the given letters.
fn excludes_letters(dfa: &Dfa, banned: &[u16]) -> bool {
    let n = dfa.states();
    // reach[s] bit 0: reachable cleanly; bit 1: reachable through a banned
    // letter
    let mut reach = vec![0u8; n];
    let mut queue = VecDeque::new();
    reach[0] = 1;
    queue.push_back((0usize, false));
    while let Some((s, tainted)) = queue.pop_front() {
        for a in 0..dfa.letters {
            let t = dfa.step(s, a);
            let taint = tainted || banned.contains(&a);
            let bit = if taint { 2 } else { 1 };
            if reach[t] & bit == 0 {
                reach[t] |= bit;
                queue.push_back((t, taint));
            }
        }
    }
    !(0..n).any(|s| reach[s] & 2 != 0 && dfa.accept[s])
}

/// The complete certificate check; see the module docs for why these three
/// facts force non-halting. Rejects malformed or oversized automata instead
/// of panicking.
pub(crate) fn verify_closure(m: &Machine, dfa: &Dfa) -> bool {
    if !dfa.well_formed() || dfa.letters != alphabet_size(m) {
        return false;
    }
    if !dfa.accepts(&[head_letter(m, 0, 0)]) {
        return false;
    }
    let mut banned = Vec::new();
    for q in 0..m.states() {
        for s in 0..m.symbols() {
            if let Entry::Halt { .. } = m.entry(q, s) {
                banned.push(head_letter(m, q, s));
            }
        }
    }
    if !excludes_letters(dfa, &banned) {
        return false;
    }
    step_rules(m).iter().all(|rule| rule_closed(dfa, rule))
}

// ---------------------------------------------------------------- learner

const NO_CHILD: u32 = u32::MAX;

struct PrefixTree {
    letters: usize,
    /// Row-major child table, `NO_CHILD` for absent edges.
    child: Vec<u32>,
    accept: Vec<bool>,
}

impl PrefixTree {
    fn new(letters: usize) -> PrefixTree {
        PrefixTree { letters, child: vec![NO_CHILD; letters], accept: vec![false] }
    }

    fn nodes(&self) -> usize {
        self.accept.len()
    }

    /// False when the node cap would be crossed.
    fn insert(&mut self, word: &[u16]) -> bool {
        let mut s = 0usize;
        for &a in word {
            let slot = s * self.letters + a as usize;
            s = if self.child[slot] == NO_CHILD {
                if self.nodes() >= PTA_NODE_CAP {
                    return false;
                }
                let c = self.nodes() as u32;
                self.child[slot] = c;
                self.child.extend(std::iter::repeat(NO_CHILD).take(self.letters));
                self.accept.push(false);
                c as usize
            } else {
                self.child[slot] as usize
            };
        }
        self.accept[s] = true;
        true
    }
}

/// Merge tree states whose acceptance behavior agrees on all suffixes up to
/// `depth` letters, then determinize the quotient. The result is complete:
/// missing transitions land in a dead state created by the construction.
fn merge_and_determinize(tree: &PrefixTree, depth: usize) -> Dfa {
    let n = tree.nodes();
    let letters = tree.letters;
    let mut sig: Vec<u64> = tree.accept.iter().map(|&a| a as u64).collect();
    for _ in 0..depth {
        let mut interner: HashMap<(bool, Vec<(usize, u64)>), u64> = HashMap::new();
        let mut fresh = Vec::with_capacity(n);
        for s in 0..n {
            let mut key = Vec::new();
            for a in 0..letters {
                let c = tree.child[s * letters + a];
                if c != NO_CHILD {
                    key.push((a, sig[c as usize]));
                }
            }
            let id = interner.len() as u64;
            fresh.push(*interner.entry((tree.accept[s], key)).or_insert(id));
        }
        sig = fresh;
    }
    let mut class_of: HashMap<u64, u32> = HashMap::new();
    let mut class = vec![0u32; n];
    for s in 0..n {
        let next_id = class_of.len() as u32;
        class[s] = *class_of.entry(sig[s]).or_insert(next_id);
    }
    let nc = class_of.len();
    let mut nfa_next: Vec<Vec<u32>> = vec![Vec::new(); nc * letters];
    let mut nfa_accept = vec![false; nc];
    for s in 0..n {
        let c = class[s] as usize;
        if tree.accept[s] {
            nfa_accept[c] = true;
        }
        for a in 0..letters {
            let t = tree.child[s * letters + a];
            if t != NO_CHILD {
                let row = &mut nfa_next[c * letters + a];
                let target = class[t as usize];
                if !row.contains(&target) {
                    row.push(target);
                }
            }
        }
    }
    for row in &mut nfa_next {
        row.sort_unstable();
    }
    // subset construction; the empty subset is the dead state
    let mut states: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut order: Vec<Vec<u32>> = vec![vec![class[0]]];
    states.insert(order[0].clone(), 0);
    let mut next: Vec<u32> = Vec::new();
    let mut accept: Vec<bool> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let cur = order[i].clone();
        accept.push(cur.iter().any(|&c| nfa_accept[c as usize]));
        for a in 0..letters {
            let mut t: Vec<u32> = Vec::new();
            for &c in &cur {
                for &x in &nfa_next[c as usize * letters + a] {
                    if !t.contains(&x) {
                        t.push(x);
                    }
                }
            }
            t.sort_unstable();
            let id = states.len() as u32;
            let id = *states.entry(t.clone()).or_insert_with(|| {
                order.push(t);
                id
            });
            next.push(id);
        }
        i += 1;
    }
    Dfa { letters: letters as u16, accept, next }
}

/// Learn-and-verify. Any returned certificate has already passed
/// [`verify_closure`], so a `Some` is a proof, not a guess.
pub fn decide_closure(m: &Machine) -> Option<Certificate> {
    if alphabet_size(m) as usize > 512 {
        return None;
    }
    let letters = alphabet_size(m) as usize;
    for horizon in LEARN_HORIZONS {
        let mut sim = Simulator::with_input(m, 0);
        let mut tree = PrefixTree::new(letters);
        if !tree.insert(&config_word(m, &sim)) {
            return None;
        }
        let mut complete = true;
        for _ in 0..horizon {
            if sim.step() == StepResult::Halted {
                return None;
            }
            if !tree.insert(&config_word(m, &sim)) {
                complete = false;
                break;
            }
        }
        if !complete {
            continue;
        }
        for depth in TAIL_DEPTHS {
            let dfa = merge_and_determinize(&tree, depth);
            if verify_closure(m, &dfa) {
                return Some(Certificate::Closure { dfa });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::check_certificate;
    use crate::tm::{decode_machine, run, SimOutcome};

    #[test]
    fn dfa_text_round_trips() {
        let m: Machine = "1RB1LA_0LA1RB_1RZ1RZ".parse().unwrap();
        let Some(Certificate::Closure { dfa }) = decide_closure(&m) else {
            panic!("expected a closure certificate");
        };
        let back: Dfa = dfa.to_string().parse().unwrap();
        assert_eq!(back, dfa);
        assert!("3:2:10:0,1,2".parse::<Dfa>().is_err(), "short table");
        assert!("3:2:10:0,1,2,9,0,0".parse::<Dfa>().is_err(), "target out of range");
    }

    #[test]
    fn growing_sweep_earns_a_verified_certificate() {
        // Writes an ever-longer block of ones, sweeping back and forth; no
        // configuration ever recurs, translated or not.
        let m: Machine = "1RB1LA_0LA1RB_1RZ1RZ".parse().unwrap();
        let cert = decide_closure(&m).expect("sweep should be certified");
        assert!(check_certificate(&m, &cert));
    }

    #[test]
    fn doubling_counter_earns_a_verified_certificate() {
        // Binary counter: record gaps double, so no additive recurrence
        // exists either.
        let m: Machine = "1RB1RZ_1LC1RA_0RA0LC".parse().unwrap();
        let cert = decide_closure(&m).expect("counter should be certified");
        assert!(check_certificate(&m, &cert));
    }

    #[test]
    fn halting_machines_never_verify() {
        // decide_closure notices the halt while simulating and gives up.
        let m: Machine = "1RB1RZ_1LB0RC_1LC1LA".parse().unwrap();
        assert!(decide_closure(&m).is_none());
        // The sharper question is whether the checker itself can be fooled.
        // For every halting machine of a small class, learn from the orbit
        // truncated just before the halting step: the most plausible wrong
        // certificate there is. Accepting it would be unsound, so every
        // learned automaton must fail one of the three checks.
        let block = crate::tm::class_block(2, 2);
        for code in block.start as u64..block.end() as u64 {
            let m = decode_machine(code);
            let SimOutcome::Halted { steps, .. } = run(&m, 0, 10) else { continue };
            let mut sim = Simulator::with_input(&m, 0);
            let mut tree = PrefixTree::new(alphabet_size(&m) as usize);
            for _ in 0..steps.saturating_sub(1) {
                assert!(tree.insert(&config_word(&m, &sim)));
                sim.step();
            }
            for depth in 1..=4 {
                let dfa = merge_and_determinize(&tree, depth);
                assert!(!verify_closure(&m, &dfa), "unsound certificate for {m}");
            }
        }
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let m: Machine = "1RB1LA_0LA1RB_1RZ1RZ".parse().unwrap();
        let Some(Certificate::Closure { dfa }) = decide_closure(&m) else {
            panic!("expected a closure certificate");
        };
        // Flip each acceptance bit in turn; closure or the start word must
        // break every time, because the automaton is reachable-minimal
        // enough that every state matters.
        let mut broken_somewhere = false;
        for i in 0..dfa.states() {
            let mut t = dfa.clone();
            t.accept[i] = !t.accept[i];
            if !verify_closure(&m, &t) {
                broken_somewhere = true;
            }
        }
        assert!(broken_somewhere);
        // A certificate for one machine must not transfer to another with
        // different halt cells.
        let other: Machine = "1RZ1RZ_1RZ1RZ_1RZ1RZ".parse().unwrap();
        assert!(!verify_closure(&other, &dfa));
    }
}
