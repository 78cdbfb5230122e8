//! Program syntax for the register language behind the numbering.
//!
//! A raw program is a finite instruction list over registers r0, r1, ...;
//! input arrives in r0 and the value of r0 at halt is the output. Falling
//! off the end halts, `dec` of zero stays zero, and `jz`/`jmp` may target
//! any position up to and including one past the last instruction.
//!
//! Besides raw code the syntax has five combinator forms whose meaning the
//! evaluator supplies directly: constants, the s-m-n parametrizer, the
//! recursion-theorem fixed point, and the two halves of the guarded
//! sequence transformer the ordinal notations lean on. Giving these their
//! own syntax keeps their indices small enough to print and their
//! evaluation costs proportional to the work they describe, where routing
//! them through an interpreter written in raw code would bury every test
//! under numerals with thousands of digits.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

/// One register instruction. Register and target fields are plain numbers;
/// whether they make sense for a given program is [`Prog::well_formed`]'s
/// business.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instr {
    Inc(u32),
    Dec(u32),
    /// Jump to the target when the register is zero.
    Jz(u32, u32),
    Jmp(u32),
    Halt,
}

/// Registers above this make a program ill-formed; it keeps the register
/// file a dense vector.
pub const MAX_REGISTER: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Prog {
    Code(Vec<Instr>),
    /// Ignores its input and returns the constant.
    Const(BigUint),
    /// On input y, behaves as program `e` on `pair(a, y)`.
    Smn { e: BigUint, a: BigUint },
    /// Runs `transformer` on this program's own index, then behaves as the
    /// index the transformer returned. This is the recursion theorem as a
    /// syntax form.
    Fix { transformer: BigUint },
    /// A total transformer: maps an index t to the index of
    /// `PointwiseAt { start, check, anchor: t }`. Taking its fixed point
    /// hands the body its own index as the anchor.
    Pointwise { start: BigUint, check: BigUint },
    /// On input n: if `check` answers 1 on every i <= n, return the code
    /// `succ^n(start)` in the shifted notation coding; on the first failure
    /// return `succ(lim(anchor))`.
    PointwiseAt { start: BigUint, check: BigUint, anchor: BigUint },
    /// Maps t to the index of `const t`. Raw code cannot do arithmetic on
    /// index-sized numbers in unary, so the numbering carries its own
    /// constant-program builder; its fixed point is the quine.
    MkConst,
}

impl Prog {
    /// Jump targets may point at most one past the end; registers stay
    /// below [`MAX_REGISTER`]. Ill-formed programs evaluate as no-ops, so
    /// this is a semantic gate, not a constructor restriction.
    pub fn well_formed(&self) -> bool {
        let Prog::Code(instrs) = self else { return true };
        code_well_formed(instrs)
    }
}

pub(crate) fn code_well_formed(instrs: &[Instr]) -> bool {
    let len = instrs.len() as u64;
    instrs.iter().all(|i| match *i {
        Instr::Inc(r) | Instr::Dec(r) => r < MAX_REGISTER,
        Instr::Jz(r, t) => r < MAX_REGISTER && t as u64 <= len,
        Instr::Jmp(t) => t as u64 <= len,
        Instr::Halt => true,
    })
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instr::Inc(r) => write!(f, "inc {r}"),
            Instr::Dec(r) => write!(f, "dec {r}"),
            Instr::Jz(r, t) => write!(f, "jz {r} {t}"),
            Instr::Jmp(t) => write!(f, "jmp {t}"),
            Instr::Halt => write!(f, "halt"),
        }
    }
}

impl fmt::Display for Prog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prog::Code(instrs) => {
                for (i, instr) in instrs.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "{instr}")?;
                }
                Ok(())
            }
            Prog::Const(c) => write!(f, "const {c}"),
            Prog::Smn { e, a } => write!(f, "smn {e} {a}"),
            Prog::Fix { transformer } => write!(f, "fix {transformer}"),
            Prog::Pointwise { start, check } => write!(f, "pointwise {start} {check}"),
            Prog::PointwiseAt { start, check, anchor } => {
                write!(f, "pointwise-at {start} {check} {anchor}")
            }
            Prog::MkConst => write!(f, "mkconst"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad program text at line {line}: {text:?}")]
pub struct ParseProgError {
    pub line: usize,
    pub text: String,
}

impl FromStr for Prog {
    type Err = ParseProgError;

    /// One instruction per line; blank lines and `#` comments are skipped.
    /// The combinator forms are single-line programs and cannot be mixed
    /// with instructions.
    fn from_str(s: &str) -> Result<Prog, ParseProgError> {
        let mut instrs = Vec::new();
        let mut combinator: Option<Prog> = None;
        let mut meaningful = 0usize;
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            meaningful += 1;
            let bad = || ParseProgError { line: lineno + 1, text: raw.to_string() };
            let mut words = line.split_whitespace();
            let op = words.next().ok_or_else(bad)?;
            let arg = |words: &mut std::str::SplitWhitespace<'_>| -> Result<u32, ParseProgError> {
                words.next().ok_or_else(bad)?.parse().map_err(|_| bad())
            };
            let big = |words: &mut std::str::SplitWhitespace<'_>| -> Result<BigUint, ParseProgError> {
                words.next().ok_or_else(bad)?.parse().map_err(|_| bad())
            };
            match op {
                "inc" => instrs.push(Instr::Inc(arg(&mut words)?)),
                "dec" => instrs.push(Instr::Dec(arg(&mut words)?)),
                "jz" => instrs.push(Instr::Jz(arg(&mut words)?, arg(&mut words)?)),
                "jmp" => instrs.push(Instr::Jmp(arg(&mut words)?)),
                "halt" => instrs.push(Instr::Halt),
                "const" => combinator = Some(Prog::Const(big(&mut words)?)),
                "smn" => combinator = Some(Prog::Smn { e: big(&mut words)?, a: big(&mut words)? }),
                "fix" => combinator = Some(Prog::Fix { transformer: big(&mut words)? }),
                "pointwise" => {
                    combinator = Some(Prog::Pointwise { start: big(&mut words)?, check: big(&mut words)? })
                }
                "pointwise-at" => {
                    combinator = Some(Prog::PointwiseAt {
                        start: big(&mut words)?,
                        check: big(&mut words)?,
                        anchor: big(&mut words)?,
                    })
                }
                "mkconst" => combinator = Some(Prog::MkConst),
                _ => return Err(bad()),
            }
            if words.next().is_some() {
                return Err(bad());
            }
        }
        match combinator {
            Some(p) if meaningful == 1 => Ok(p),
            Some(_) => Err(ParseProgError { line: 0, text: "combinator mixed with code".into() }),
            None => Ok(Prog::Code(instrs)),
        }
    }
}
