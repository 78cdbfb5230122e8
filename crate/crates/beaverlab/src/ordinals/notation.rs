//! Ordinal notations as natural-number codes.
//!
//! The code space is a shifted pairing: 0 is the notation for zero, and a
//! nonzero code n decodes by unpairing n-1 into (payload, tag). Tag 0 is
//! the successor of the payload, tag 1 is the limit of the sequence
//! computed by kernel program `payload`, and any higher tag collapses to
//! zero so that decoding stays total. The shift is what keeps the zero
//! code out of the successor family: without it the code of succ(zero)
//! would itself be 0.
//!
//! Nothing at this level checks that a limit's program deserves the name;
//! that is the registry's job. A notation is just a code, and junk codes
//! are first-class citizens, which is exactly what makes the
//! non-well-founded examples expressible.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::kernel::unpair;

/// A notation code. Wraps the raw natural so the type system keeps
/// notation codes and kernel program indices from mixing; the limit
/// constructor is the one deliberate bridge between the two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Notation(BigUint);

/// One decoding step. Views are produced on demand rather than stored:
/// codes are the canonical representation and can be arbitrarily deep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotationView {
    Zero,
    Succ(Notation),
    Lim(BigUint),
}

impl Notation {
    pub fn from_code(code: BigUint) -> Notation {
        Notation(code)
    }

    pub fn code(&self) -> &BigUint {
        &self.0
    }

    pub fn view(&self) -> NotationView {
        if self.0.is_zero() {
            return NotationView::Zero;
        }
        let (payload, tag) = unpair(&(&self.0 - 1u32));
        if tag.is_zero() {
            NotationView::Succ(Notation(payload))
        } else if tag.is_one() {
            NotationView::Lim(payload)
        } else {
            NotationView::Zero
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

pub fn zero() -> Notation {
    Notation(BigUint::zero())
}

pub fn succ(a: &Notation) -> Notation {
    Notation(crate::kernel::succ_code(&a.0))
}

/// The limit notation for the sequence phi_e. No certification happens
/// here; e may index anything at all.
pub fn lim(e: &BigUint) -> Notation {
    Notation(crate::kernel::lim_code(e))
}

/// succ^k(a) without building intermediate Notation wrappers. Code sizes
/// square at every level, so k beyond a few dozen is not a thing.
pub fn succ_tower(a: &Notation, k: u64) -> Notation {
    let mut code = a.0.clone();
    for _ in 0..k {
        code = crate::kernel::succ_code(&code);
    }
    Notation(code)
}

impl fmt::Display for Notation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("notation codes are decimal naturals, got {0:?}")]
pub struct ParseNotationError(String);

impl FromStr for Notation {
    type Err = ParseNotationError;

    fn from_str(text: &str) -> Result<Notation, ParseNotationError> {
        text.parse::<BigUint>()
            .map(Notation)
            .map_err(|_| ParseNotationError(text.to_string()))
    }
}
