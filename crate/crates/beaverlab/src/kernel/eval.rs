//! Fueled universal evaluation over the program numbering.
//!
//! One executed instruction costs one fuel unit; every combinator dispatch
//! costs one as well, and the guarded-sequence forms pay per guard probe
//! and per constructed pairing layer, so no program does unbounded work on
//! bounded fuel. Evaluation is deterministic and a converged answer never
//! changes when fuel grows; extra fuel can only turn `OutOfFuel` into
//! `Converged`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::numbering::{decode_prog, encode_prog};
use super::pairing::pair;
use super::prog::{code_well_formed, Instr, Prog};

/// Transformer recursion deeper than this exhausts fuel by fiat; each level
/// costs a stack frame, and no sane construction nests fixed points a
/// thousand deep.
const MAX_FIX_DEPTH: u32 = 1_024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalOutcome {
    Converged { value: BigUint, fuel_used: u64 },
    OutOfFuel,
}

impl EvalOutcome {
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            EvalOutcome::Converged { value, .. } => Some(value),
            EvalOutcome::OutOfFuel => None,
        }
    }

    pub fn converged_to(&self, expected: &BigUint) -> bool {
        self.value() == Some(expected)
    }
}

/// Notation code of the successor of `a`: shifted pairing, tag 0.
pub(crate) fn succ_code(a: &BigUint) -> BigUint {
    pair(a, &BigUint::zero()) + 1u32
}

/// Notation code of the limit of the sequence indexed by `e`: shifted
/// pairing, tag 1.
pub(crate) fn lim_code(e: &BigUint) -> BigUint {
    pair(e, &BigUint::one()) + 1u32
}

/// Runs program `index` on `input` within `fuel`. Total: ill-formed raw
/// code returns its input unchanged, so every natural indexes some total-
/// or-partial function and the numbering has no holes.
pub fn eval(index: &BigUint, input: &BigUint, fuel: u64) -> EvalOutcome {
    match go(index.clone(), input.clone(), fuel, 0) {
        Some((value, left)) => EvalOutcome::Converged { value, fuel_used: fuel - left },
        None => EvalOutcome::OutOfFuel,
    }
}

/// Returns (value, fuel left); `None` is fuel exhaustion. Tail positions
/// loop instead of recursing, so only nested transformers consume stack.
fn go(mut index: BigUint, mut input: BigUint, mut fuel: u64, depth: u32) -> Option<(BigUint, u64)> {
    if depth > MAX_FIX_DEPTH {
        return None;
    }
    loop {
        match decode_prog(&index) {
            Prog::Code(instrs) => return run_code(&instrs, input, fuel),
            Prog::Const(c) => {
                fuel = fuel.checked_sub(1)?;
                return Some((c, fuel));
            }
            Prog::Smn { e, a } => {
                fuel = fuel.checked_sub(1)?;
                input = pair(&a, &input);
                index = e;
            }
            Prog::Fix { transformer } => {
                fuel = fuel.checked_sub(1)?;
                let own = index.clone();
                let (target, left) = go(transformer, own, fuel, depth + 1)?;
                fuel = left;
                index = target;
            }
            Prog::Pointwise { start, check } => {
                fuel = fuel.checked_sub(1)?;
                let body = Prog::PointwiseAt { start, check, anchor: input };
                return Some((encode_prog(&body), fuel));
            }
            Prog::MkConst => {
                fuel = fuel.checked_sub(1)?;
                return Some((encode_prog(&Prog::Const(input)), fuel));
            }
            Prog::PointwiseAt { start, check, anchor } => {
                return run_pointwise(&start, &check, &anchor, &input, fuel, depth);
            }
        }
    }
}

fn run_code(instrs: &[Instr], input: BigUint, fuel: u64) -> Option<(BigUint, u64)> {
    if !code_well_formed(instrs) {
        // ill-formed decodes run as no-ops: input passes through
        return Some((input, fuel));
    }
    run_well_formed(instrs, input, fuel)
}

fn run_well_formed(instrs: &[Instr], input: BigUint, mut fuel: u64) -> Option<(BigUint, u64)> {
    let top = instrs
        .iter()
        .map(|i| match *i {
            Instr::Inc(r) | Instr::Dec(r) | Instr::Jz(r, _) => r as usize + 1,
            _ => 0,
        })
        .max()
        .unwrap_or(0)
        .max(1);
    let mut regs = vec![BigUint::zero(); top];
    regs[0] = input;
    let mut pc = 0usize;
    while pc < instrs.len() {
        fuel = fuel.checked_sub(1)?;
        match instrs[pc] {
            Instr::Inc(r) => {
                regs[r as usize] += 1u32;
                pc += 1;
            }
            Instr::Dec(r) => {
                let reg = &mut regs[r as usize];
                if !reg.is_zero() {
                    *reg -= 1u32;
                }
                pc += 1;
            }
            Instr::Jz(r, t) => {
                pc = if regs[r as usize].is_zero() { t as usize } else { pc + 1 };
            }
            Instr::Jmp(t) => pc = t as usize,
            Instr::Halt => break,
        }
    }
    Some((std::mem::take(&mut regs[0]), fuel))
}

/// The guarded tower: probes `check` on 0..=n, building `succ^n(start)` if
/// every probe answers 1 and bailing to `succ(lim(anchor))` on the first
/// other answer.
fn run_pointwise(
    start: &BigUint,
    check: &BigUint,
    anchor: &BigUint,
    n: &BigUint,
    mut fuel: u64,
    depth: u32,
) -> Option<(BigUint, u64)> {
    fuel = fuel.checked_sub(1)?;
    let one = BigUint::one();
    let mut i = BigUint::zero();
    loop {
        fuel = fuel.checked_sub(1)?;
        let (verdict, left) = go(check.clone(), i.clone(), fuel, depth + 1)?;
        fuel = left;
        if verdict != one {
            return Some((succ_code(&lim_code(anchor)), fuel));
        }
        if &i == n {
            break;
        }
        i += 1u32;
    }
    let mut tower = start.clone();
    let mut level = BigUint::zero();
    while &level < n {
        // Each layer squares the code, so a flat charge would let a modest
        // budget demand astronomically wide numbers. Charging by width keeps
        // memory linear in fuel; values under 64 bits still cost exactly 1.
        fuel = fuel.checked_sub(1 + (tower.bits() >> 6))?;
        tower = succ_code(&tower);
        level += 1u32;
    }
    Some((tower, fuel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::pairing::big;

    fn ev(index: u64, input: u64, fuel: u64) -> EvalOutcome {
        eval(&big(index), &big(input), fuel)
    }

    #[test]
    fn index_zero_is_the_identity() {
        for x in [0u64, 1, 7, 500] {
            assert!(ev(0, x, 10).converged_to(&big(x)));
        }
    }

    #[test]
    fn constants_ignore_input() {
        let c = encode_prog(&Prog::Const(big(99)));
        for x in [0u64, 3, 1000] {
            assert!(eval(&c, &big(x), 5).converged_to(&big(99)));
        }
    }

    #[test]
    fn evaluation_is_total_over_an_initial_segment_of_indices() {
        for e in 0..3_000u64 {
            // must terminate with some outcome, never panic
            let _ = ev(e, 5, 200);
        }
    }

    #[test]
    fn converged_answers_are_stable_under_more_fuel() {
        for e in 0..800u64 {
            if let EvalOutcome::Converged { value, fuel_used } = ev(e, 9, 100) {
                let again = ev(e, 9, 10_000);
                assert_eq!(again, EvalOutcome::Converged { value, fuel_used }, "index {e}");
            }
        }
    }

    #[test]
    fn out_of_fuel_is_graceful_at_zero_fuel() {
        assert_eq!(ev(0, 3, 0), EvalOutcome::Converged { value: big(3), fuel_used: 0 });
        let c = encode_prog(&Prog::Const(big(1)));
        assert_eq!(eval(&c, &big(0), 0), EvalOutcome::OutOfFuel);
    }

    #[test]
    fn deep_transformer_nesting_exhausts_instead_of_overflowing() {
        let mut f = big(0);
        for _ in 0..3_000 {
            f = encode_prog(&Prog::Fix { transformer: f });
        }
        assert_eq!(eval(&f, &big(0), u64::MAX), EvalOutcome::OutOfFuel);
    }

    #[test]
    fn smn_form_prepends_the_parameter() {
        // identity under smn: output is pair(a, y)
        let s = encode_prog(&Prog::Smn { e: big(0), a: big(4) });
        let out = eval(&s, &big(9), 100);
        assert!(out.converged_to(&pair(&big(4), &big(9))));
    }
}
