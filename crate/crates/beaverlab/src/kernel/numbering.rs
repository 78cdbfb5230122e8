//! Godel numbering of programs: total decoding, canonical encoding.
//!
//! Every natural is a program. Even numbers carry raw code: halving gives a
//! bijective-base-3 numeral whose digit 3 separates instruction fields,
//! each field a bijective-base-2 numeral naming one instruction. Odd
//! numbers carry the five combinator forms, tagged modulo five. Decoding is
//! total because unparseable instruction fields collapse to `halt`;
//! encoding never produces such fields, so `decode(encode(p)) = p` holds on
//! the nose while distinct codes may decode to the same program.
//!
//! Index 0 is the empty program, which returns its input unchanged: the
//! identity sits at the very bottom of the numbering.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::pairing::{big, pair, pair3, unpair, unpair3};
use super::prog::{Instr, Prog};

/// Instruction <-> natural, with out-of-range payloads collapsing to halt
/// on the way back.
fn instr_code(i: &Instr) -> BigUint {
    match *i {
        Instr::Halt => big(0),
        Instr::Inc(r) => big(4 * r as u64 + 1),
        Instr::Dec(r) => big(4 * r as u64 + 2),
        Instr::Jmp(t) => big(4 * t as u64 + 3),
        Instr::Jz(r, t) => pair(&big(r as u64), &big(t as u64)) * 4u32 + 4u32,
    }
}

fn instr_decode(n: &BigUint) -> Instr {
    if n.is_zero() {
        return Instr::Halt;
    }
    let m = n - 1u32;
    let tag = (&m % 4u32).to_u32().unwrap();
    let q = &m / 4u32;
    let small = |v: &BigUint| v.to_u32();
    match tag {
        0 => small(&q).map_or(Instr::Halt, Instr::Inc),
        1 => small(&q).map_or(Instr::Halt, Instr::Dec),
        2 => small(&q).map_or(Instr::Halt, Instr::Jmp),
        _ => {
            let (r, t) = unpair(&q);
            match (small(&r), small(&t)) {
                (Some(r), Some(t)) => Instr::Jz(r, t),
                _ => Instr::Halt,
            }
        }
    }
}

/// Naturals <-> sequences of naturals. A positive number is a string of
/// bijective-base-3 digits; the 3s split it into bijective-base-2 numerals,
/// one per element, each shifted up by one so that even the zero element
/// leaves a mark. Zero is the empty sequence.
fn encode_seq(elems: &[BigUint]) -> BigUint {
    // digits most significant first
    let mut digits: Vec<u8> = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        if i > 0 {
            digits.push(3);
        }
        let mut local = Vec::new();
        let mut k = e + 1u32;
        while !k.is_zero() {
            // bijective base 2: digit in {1, 2}
            let r = (&k % 2u32).to_u8().unwrap();
            let d = if r == 0 { 2 } else { 1 };
            local.push(d);
            k = (k - d) / 2u32;
        }
        local.reverse();
        digits.extend(local);
    }
    let mut n = BigUint::zero();
    for &d in &digits {
        n = n * 3u32 + d;
    }
    n
}

fn decode_seq(n: &BigUint) -> Vec<BigUint> {
    // peel bijective-base-3 digits, least significant first
    let mut digits: Vec<u8> = Vec::new();
    let mut k = n.clone();
    while !k.is_zero() {
        let r = (&k % 3u32).to_u8().unwrap();
        let d = if r == 0 { 3 } else { r };
        digits.push(d);
        k = (k - d) / 3u32;
    }
    digits.reverse();
    if digits.is_empty() {
        return Vec::new();
    }
    let mut elems = Vec::new();
    let mut cur = BigUint::zero();
    for &d in &digits {
        if d == 3 {
            let v = std::mem::take(&mut cur);
            elems.push(unshift(v));
        } else {
            cur = cur * 2u32 + d;
        }
    }
    elems.push(unshift(cur));
    elems
}

/// Undo the element shift; an empty numeral between separators is junk and
/// collapses to element zero.
fn unshift(v: BigUint) -> BigUint {
    if v.is_zero() {
        v
    } else {
        v - 1u32
    }
}

pub fn encode_prog(p: &Prog) -> BigUint {
    match p {
        Prog::Code(instrs) => {
            let elems: Vec<BigUint> = instrs.iter().map(instr_code).collect();
            encode_seq(&elems) * 2u32
        }
        Prog::Const(c) => tagged(0, c),
        Prog::Smn { e, a } => tagged(1, &pair(e, a)),
        Prog::Fix { transformer } => tagged(2, transformer),
        Prog::Pointwise { start, check } => tagged(3, &pair(start, check)),
        Prog::PointwiseAt { start, check, anchor } => tagged(4, &pair3(start, check, anchor)),
        Prog::MkConst => tagged(5, &BigUint::zero()),
    }
}

fn tagged(tag: u32, payload: &BigUint) -> BigUint {
    (payload * 6u32 + tag) * 2u32 + 1u32
}

pub fn decode_prog(index: &BigUint) -> Prog {
    if index % 2u32 == BigUint::zero() {
        let instrs = decode_seq(&(index / 2u32)).iter().map(instr_decode).collect();
        return Prog::Code(instrs);
    }
    let k = (index - 1u32) / 2u32;
    let tag = (&k % 6u32).to_u32().unwrap();
    let payload = &k / 6u32;
    match tag {
        0 => Prog::Const(payload),
        1 => {
            let (e, a) = unpair(&payload);
            Prog::Smn { e, a }
        }
        2 => Prog::Fix { transformer: payload },
        3 => {
            let (start, check) = unpair(&payload);
            Prog::Pointwise { start, check }
        }
        4 => {
            let (start, check, anchor) = unpair3(&payload);
            Prog::PointwiseAt { start, check, anchor }
        }
        // the payload is junk here: every odd number must mean something,
        // and all of them mean the one index builder
        _ => Prog::MkConst,
    }
}

/// Index of the program that ignores its input and returns `c`; the
/// cheapest upper bound on descriptional complexity.
pub fn constant_index(c: &BigUint) -> BigUint {
    encode_prog(&Prog::Const(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_zero_is_the_empty_program() {
        assert_eq!(decode_prog(&big(0)), Prog::Code(vec![]));
        assert_eq!(encode_prog(&Prog::Code(vec![])), big(0));
    }

    #[test]
    fn decoding_is_total_and_encode_inverts_it_on_canonical_codes() {
        for n in 0..20_000u64 {
            let p = decode_prog(&big(n));
            // re-encoding the decoded program and decoding again must be a
            // fixed point: the canonical code of the same program
            let canon = encode_prog(&p);
            assert_eq!(decode_prog(&canon), p, "index {n}");
        }
    }

    #[test]
    fn encode_then_decode_is_identity_on_programs() {
        let progs = [
            Prog::Code(vec![Instr::Halt]),
            Prog::Code(vec![Instr::Inc(0), Instr::Inc(0), Instr::Halt]),
            Prog::Code(vec![Instr::Jz(2, 7), Instr::Dec(1), Instr::Jmp(0)]),
            Prog::Const(big(1_000_000)),
            Prog::Smn { e: big(123), a: big(456) },
            Prog::Fix { transformer: big(0) },
            Prog::Pointwise { start: big(9), check: big(11) },
            Prog::PointwiseAt { start: big(9), check: big(11), anchor: big(77) },
            Prog::MkConst,
        ];
        for p in progs {
            assert_eq!(decode_prog(&encode_prog(&p)), p);
        }
    }

    #[test]
    fn long_programs_keep_compact_codes() {
        // codes grow geometrically with length, not tower-exponentially
        let p = Prog::Code(vec![Instr::Inc(3); 40]);
        let code = encode_prog(&p);
        assert!(code.bits() < 400, "code unexpectedly wide: {} bits", code.bits());
        assert_eq!(decode_prog(&code), p);
    }

    #[test]
    fn combinator_tags_partition_the_odd_numbers() {
        for n in (1..2_000u64).step_by(2) {
            match decode_prog(&big(n)) {
                Prog::Code(_) => panic!("odd index {n} decoded to raw code"),
                _ => {}
            }
        }
        for n in (0..2_000u64).step_by(2) {
            match decode_prog(&big(n)) {
                Prog::Code(_) => {}
                other => panic!("even index {n} decoded to {other:?}"),
            }
        }
    }
}
