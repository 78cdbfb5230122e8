//! Class-blocked machine numbering.
//!
//! Classes (n states, m symbols) are laid out in blocks ordered by `n + m`
//! ascending, ties broken by `n` ascending, starting at (1, 2). Inside a
//! block, tables with all `n * m` entries are mixed-radix numerals:
//! each entry is a digit with `2 * m * (n + 1)` options ordered by the
//! entry's printed text (halt letter `Z` sorts after every real state), and
//! the first table cell is the most significant digit. So "all codes < i"
//! always covers whole classes before touching the next one, and within a
//! class runs in printed lexicographic order.
//!
//! Codes are `u64`. Every `u64` decodes; encoding a machine from a class
//! whose block ends beyond `u64::MAX` panics, which desk-scale classes
//! never do.

use super::{Entry, Machine, Move};

/// Number of option values a single table entry has in class (n, m).
fn entry_options(states: u8, symbols: u8) -> u128 {
    2 * symbols as u128 * (states as u128 + 1)
}

/// Number of machines in class (n, m): options ^ (n * m). Saturates at
/// `u128::MAX` for classes that could never fit in a `u64` anyway.
pub fn class_size(states: u8, symbols: u8) -> u128 {
    let t = entry_options(states, symbols);
    let mut size: u128 = 1;
    for _ in 0..states as u32 * symbols as u32 {
        size = size.saturating_mul(t);
    }
    size
}

/// Half-open code interval occupied by one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassBlock {
    pub states: u8,
    pub symbols: u8,
    pub start: u128,
    pub size: u128,
}

impl ClassBlock {
    pub fn end(&self) -> u128 {
        self.start.saturating_add(self.size)
    }

    pub fn contains(&self, code: u64) -> bool {
        self.start <= code as u128 && (code as u128) < self.end()
    }
}

/// Walks class blocks in numbering order: (1,2), (1,3), (2,2), (1,4), ...
fn blocks() -> impl Iterator<Item = ClassBlock> {
    let mut start: u128 = 0;
    (3u16..).flat_map(|total| (1..total).map(move |n| (n, total - n))).filter_map(
        move |(n, m)| {
            if n > 25 || !(2..=10).contains(&m) {
                return None;
            }
            let (states, symbols) = (n as u8, m as u8);
            let size = class_size(states, symbols);
            let block = ClassBlock { states, symbols, start, size };
            start = start.saturating_add(size);
            Some(block)
        },
    )
}

/// Block of the given class. Panics on shapes outside the supported range.
pub fn class_block(states: u8, symbols: u8) -> ClassBlock {
    blocks()
        .find(|b| b.states == states && b.symbols == symbols)
        .expect("class shape out of supported range")
}

fn entry_digit(states: u8, entry: Entry) -> u128 {
    let n1 = states as u128 + 1;
    let (write, mv, k) = match entry {
        Entry::Step { write, mv, next } => (write, mv, next as u128),
        Entry::Halt { write, mv } => (write, mv, states as u128),
    };
    let dir = match mv {
        Move::L => 0,
        Move::R => 1,
    };
    write as u128 * 2 * n1 + dir * n1 + k
}

fn digit_entry(states: u8, digit: u128) -> Entry {
    let n1 = states as u128 + 1;
    let write = (digit / (2 * n1)) as u8;
    let rem = digit % (2 * n1);
    let mv = if rem / n1 == 0 { Move::L } else { Move::R };
    let k = rem % n1;
    if k == states as u128 {
        Entry::Halt { write, mv }
    } else {
        Entry::Step { write, mv, next: k as u8 }
    }
}

pub fn encode(m: &Machine) -> u64 {
    let block = class_block(m.states(), m.symbols());
    let t = entry_options(m.states(), m.symbols());
    let mut offset: u128 = 0;
    for &entry in m.table() {
        offset = offset * t + entry_digit(m.states(), entry);
    }
    let code = block.start.checked_add(offset).expect("machine code overflows u128");
    u64::try_from(code).expect("machine code exceeds u64 range")
}

pub fn decode(code: u64) -> Machine {
    let block = blocks().find(|b| b.contains(code)).expect("u64 codes always land in a block");
    let t = entry_options(block.states, block.symbols);
    let cells = block.states as usize * block.symbols as usize;
    let mut offset = code as u128 - block.start;
    let mut digits = vec![0u128; cells];
    for slot in digits.iter_mut().rev() {
        *slot = offset % t;
        offset /= t;
    }
    let table = digits.into_iter().map(|d| digit_entry(block.states, d)).collect();
    Machine::new(block.states, block.symbols, table)
}
