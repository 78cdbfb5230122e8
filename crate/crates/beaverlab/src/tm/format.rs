//! Machine text format: one row per state, rows joined by `_`, each row a
//! sequence of three-character cells `<write><L|R><next>`. The next-state
//! letter `Z` marks a halting entry, so the two-state champion prints as
//! `1RB1LB_1LA1RZ`. Parsing and printing are exact inverses on the printed
//! image of every machine.

use super::{Entry, Machine, Move};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseMachineError {
    #[error("empty machine text")]
    Empty,
    #[error("state row {row} has length {len}, want a multiple of 3")]
    RowLength { row: usize, len: usize },
    #[error("state rows disagree on symbol count")]
    RaggedRows,
    #[error("unsupported shape: {states} states x {symbols} symbols")]
    Shape { states: usize, symbols: usize },
    #[error("bad symbol {found:?} in row {row}")]
    BadSymbol { row: usize, found: char },
    #[error("bad direction {found:?} in row {row}, want L or R")]
    BadDirection { row: usize, found: char },
    #[error("bad state letter {found:?} in row {row}")]
    BadState { row: usize, found: char },
}

pub fn parse(s: &str) -> Result<Machine, ParseMachineError> {
    if s.is_empty() {
        return Err(ParseMachineError::Empty);
    }
    let rows: Vec<&str> = s.split('_').collect();
    let states = rows.len();
    let mut symbols = None;
    let mut table = Vec::new();
    for (row, text) in rows.iter().enumerate() {
        let cells: Vec<char> = text.chars().collect();
        if cells.is_empty() || cells.len() % 3 != 0 {
            return Err(ParseMachineError::RowLength { row, len: cells.len() });
        }
        let m = cells.len() / 3;
        if *symbols.get_or_insert(m) != m {
            return Err(ParseMachineError::RaggedRows);
        }
        for cell in cells.chunks(3) {
            let write = match cell[0] {
                c @ '0'..='9' => c as u8 - b'0',
                c => return Err(ParseMachineError::BadSymbol { row, found: c }),
            };
            let mv = match cell[1] {
                'L' => Move::L,
                'R' => Move::R,
                c => return Err(ParseMachineError::BadDirection { row, found: c }),
            };
            match cell[2] {
                'Z' => table.push(Entry::Halt { write, mv }),
                c @ 'A'..='Y' => {
                    let next = c as u8 - b'A';
                    if next as usize >= states {
                        return Err(ParseMachineError::BadState { row, found: c });
                    }
                    table.push(Entry::Step { write, mv, next });
                }
                c => return Err(ParseMachineError::BadState { row, found: c }),
            }
        }
    }
    let symbols = symbols.unwrap();
    if !(1..=25).contains(&states) || !(2..=10).contains(&symbols) {
        return Err(ParseMachineError::Shape { states, symbols });
    }
    for entry in &table {
        let write = match *entry {
            Entry::Step { write, .. } | Entry::Halt { write, .. } => write,
        };
        if write as usize >= symbols {
            return Err(ParseMachineError::BadSymbol {
                row: 0,
                found: (b'0' + write) as char,
            });
        }
    }
    Ok(Machine::new(states as u8, symbols as u8, table))
}

pub fn print(m: &Machine) -> String {
    let mut out = String::new();
    for state in 0..m.states() {
        if state > 0 {
            out.push('_');
        }
        for symbol in 0..m.symbols() {
            print_entry(&mut out, m.entry(state, symbol));
        }
    }
    out
}

fn print_entry(out: &mut String, entry: Entry) {
    let (write, mv, next) = match entry {
        Entry::Step { write, mv, next } => (write, mv, (b'A' + next) as char),
        Entry::Halt { write, mv } => (write, mv, 'Z'),
    };
    out.push((b'0' + write) as char);
    out.push(match mv {
        Move::L => 'L',
        Move::R => 'R',
    });
    out.push(next);
}
