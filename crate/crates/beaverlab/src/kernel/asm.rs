//! A tiny assembler: labeled jumps and the handful of macros (move, copy,
//! numerals, pairing, unpairing) that make register programs writable by
//! hand. Macros expand to plain instructions at build time, so their cost
//! is exactly their expansion length.

use num_bigint::BigUint;

use super::numbering::encode_prog;
use super::prog::{Instr, Prog};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Label(usize);

#[derive(Debug, Default)]
pub struct Asm {
    instrs: Vec<Instr>,
    /// Placeholder slots awaiting a bound label.
    fixups: Vec<(usize, Label)>,
    labels: Vec<Option<u32>>,
}

impl Asm {
    pub fn new() -> Asm {
        Asm::default()
    }

    /// Declares a label to be bound later; lets forward jumps read naturally.
    pub fn label(&mut self) -> Label {
        self.labels.push(None);
        Label(self.labels.len() - 1)
    }

    /// Binds `l` to the next emitted position.
    pub fn bind(&mut self, l: Label) {
        assert!(self.labels[l.0].is_none(), "label bound twice");
        self.labels[l.0] = Some(self.instrs.len() as u32);
    }

    /// Declare-and-bind in one step.
    pub fn here(&mut self) -> Label {
        let l = self.label();
        self.bind(l);
        l
    }

    pub fn inc(&mut self, r: u32) {
        self.instrs.push(Instr::Inc(r));
    }

    pub fn dec(&mut self, r: u32) {
        self.instrs.push(Instr::Dec(r));
    }

    pub fn jz(&mut self, r: u32, l: Label) {
        self.fixups.push((self.instrs.len(), l));
        self.instrs.push(Instr::Jz(r, u32::MAX));
    }

    pub fn jmp(&mut self, l: Label) {
        self.fixups.push((self.instrs.len(), l));
        self.instrs.push(Instr::Jmp(u32::MAX));
    }

    pub fn halt(&mut self) {
        self.instrs.push(Instr::Halt);
    }

    /// Panics on unbound labels: that is a bug in the caller, not input.
    pub fn assemble(mut self) -> Prog {
        for (at, l) in self.fixups {
            let target = self.labels[l.0].expect("unbound label");
            self.instrs[at] = match self.instrs[at] {
                Instr::Jz(r, _) => Instr::Jz(r, target),
                Instr::Jmp(_) => Instr::Jmp(target),
                other => other,
            };
        }
        let p = Prog::Code(self.instrs);
        debug_assert!(p.well_formed());
        p
    }

    // ------------------------------------------------------------- macros

    /// r := 0.
    pub fn clear(&mut self, r: u32) {
        let top = self.here();
        let done = self.label();
        self.jz(r, done);
        self.dec(r);
        self.jmp(top);
        self.bind(done);
    }

    /// dst += src; src := 0.
    pub fn drain(&mut self, src: u32, dst: u32) {
        let top = self.here();
        let done = self.label();
        self.jz(src, done);
        self.dec(src);
        self.inc(dst);
        self.jmp(top);
        self.bind(done);
    }

    /// dst += src, preserving src; tmp must be zero and ends zero.
    pub fn copy(&mut self, src: u32, dst: u32, tmp: u32) {
        let top = self.here();
        let done = self.label();
        self.jz(src, done);
        self.dec(src);
        self.inc(dst);
        self.inc(tmp);
        self.jmp(top);
        self.bind(done);
        self.drain(tmp, src);
    }

    /// r += k as k inc instructions; the numeral macro.
    pub fn add_const(&mut self, r: u32, k: u32) {
        for _ in 0..k {
            self.inc(r);
        }
    }

    /// out += pair(a, b), consuming a and b; scratch registers must be zero
    /// and end zero. Computes the triangular number of a+b by summing a
    /// shrinking copy, then adds b back.
    pub fn pair_into(&mut self, a: u32, b: u32, out: u32, s1: u32, s2: u32) {
        // preserve b for the final +b, then s1 := a + b
        self.copy(b, s1, s2);
        self.drain(a, s1);
        // out += s1 + (s1 - 1) + ... + 1
        let top = self.here();
        let done = self.label();
        self.jz(s1, done);
        self.copy(s1, out, s2);
        self.dec(s1);
        self.jmp(top);
        self.bind(done);
        self.drain(b, out);
    }

    /// (a, b) := unpair(n), consuming n; all three plus scratch must be
    /// distinct, outputs and scratch zero on entry. Walks anti-diagonals:
    /// for w = 0, 1, ...: when n <= w the answer is (w - n, n).
    pub fn unpair_into(&mut self, n: u32, a: u32, b: u32, s1: u32, s2: u32) {
        let round = self.here();
        let le = self.label();
        let gt = self.label();
        let after = self.label();
        // s1 := n copy, s2 := w copy (w lives in register a until the end)
        self.copy(n, s1, b);
        self.copy(a, s2, b);
        let cmp = self.here();
        self.jz(s1, le);
        self.jz(s2, gt);
        self.dec(s1);
        self.dec(s2);
        self.jmp(cmp);
        self.bind(gt);
        // n > w: n -= w + 1, w += 1, clean the leftover n copy
        self.dec(n);
        self.copy(a, s2, b);
        let sub = self.here();
        self.jz(s2, after);
        self.dec(s2);
        self.dec(n);
        self.jmp(sub);
        self.bind(after);
        self.inc(a);
        self.clear(s1);
        self.jmp(round);
        self.bind(le);
        // n <= w: s2 holds w - n, which is the first component; the second
        // is what is left of n
        self.drain(n, b);
        self.clear(a);
        self.drain(s2, a);
    }
}

// ------------------------------------------------------------ sample programs

/// r0 := 2 * r0.
pub fn doubling() -> Prog {
    let mut asm = Asm::new();
    asm.drain(0, 1);
    let top = asm.here();
    let done = asm.label();
    asm.jz(1, done);
    asm.dec(1);
    asm.inc(0);
    asm.inc(0);
    asm.jmp(top);
    asm.bind(done);
    asm.halt();
    asm.assemble()
}

/// Treats the input as pair(a, b) and returns a.
pub fn projection_first() -> Prog {
    let mut asm = Asm::new();
    asm.unpair_into(0, 1, 2, 3, 4);
    asm.clear(0);
    asm.drain(1, 0);
    asm.halt();
    asm.assemble()
}

/// Treats the input as pair(a, b) and returns b.
pub fn projection_second() -> Prog {
    let mut asm = Asm::new();
    asm.unpair_into(0, 1, 2, 3, 4);
    asm.clear(0);
    asm.drain(2, 0);
    asm.halt();
    asm.assemble()
}

/// Treats the input as pair(a, b) and returns a + b.
pub fn addition() -> Prog {
    let mut asm = Asm::new();
    asm.unpair_into(0, 1, 2, 3, 4);
    asm.clear(0);
    asm.drain(1, 0);
    asm.drain(2, 0);
    asm.halt();
    asm.assemble()
}

/// Unpairs and re-pairs its input: extensionally the identity, and the
/// sharpest exercise both pairing macros get.
pub fn repair() -> Prog {
    let mut asm = Asm::new();
    asm.unpair_into(0, 1, 2, 3, 4);
    asm.clear(0);
    asm.pair_into(1, 2, 0, 3, 4);
    asm.halt();
    asm.assemble()
}

/// r0 := 12 * r0 + 1: maps a small index t to the index of `const t`, in
/// raw unary code. Agrees with the built-in `mkconst` form wherever it can
/// afford to run; only the built-in scales to index-sized inputs.
pub fn const_transformer() -> Prog {
    let mut asm = Asm::new();
    asm.drain(0, 1);
    let top = asm.here();
    let done = asm.label();
    asm.jz(1, done);
    asm.dec(1);
    asm.add_const(0, 12);
    asm.jmp(top);
    asm.bind(done);
    asm.inc(0);
    asm.halt();
    asm.assemble()
}

/// 1 if the input is 0 or 1, else 0; a genuinely computed guard for the
/// pointwise constructions.
pub fn below_two() -> Prog {
    let mut asm = Asm::new();
    let yes = asm.label();
    asm.jz(0, yes);
    asm.dec(0);
    asm.jz(0, yes);
    asm.clear(0);
    asm.halt();
    asm.bind(yes);
    asm.clear(0);
    asm.inc(0);
    asm.halt();
    asm.assemble()
}

/// Index shorthand for a built program.
pub fn index_of(p: &Prog) -> BigUint {
    encode_prog(p)
}
