//! Ordinals below epsilon_0 in Cantor normal form: a finite sum of
//! omega^alpha * k with the exponents strictly decreasing and every
//! coefficient at least 1. The empty sum is zero. Normal form is unique,
//! so structural equality is ordinal equality and comparison is total.
//!
//! The textual grammar is what the registry files store:
//!
//! ```text
//! 0        ω        ω*2        ω^3*2+ω+5        ω^(ω+1)*2+ω^2
//! ```
//!
//! A bare number is the omega^0 term, `ω` alone means coefficient 1, a
//! compound exponent sits in parentheses. An ASCII `w` is accepted
//! everywhere `ω` is, since claims get typed on command lines.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfOrdinal {
    /// (exponent, coefficient), exponents strictly decreasing, coefficients
    /// nonzero. Private: every constructor maintains normal form.
    terms: Vec<(CnfOrdinal, u64)>,
}

impl CnfOrdinal {
    pub fn zero() -> CnfOrdinal {
        CnfOrdinal { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> CnfOrdinal {
        if n == 0 {
            CnfOrdinal::zero()
        } else {
            CnfOrdinal { terms: vec![(CnfOrdinal::zero(), n)] }
        }
    }

    pub fn omega() -> CnfOrdinal {
        CnfOrdinal::omega_power(CnfOrdinal::finite(1), 1)
    }

    /// omega^exp * k; k = 0 gives zero.
    pub fn omega_power(exp: CnfOrdinal, k: u64) -> CnfOrdinal {
        if k == 0 {
            CnfOrdinal::zero()
        } else {
            CnfOrdinal { terms: vec![(exp, k)] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(n) exactly when the ordinal is the natural number n.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(exp, k)] if exp.is_zero() => Some(*k),
            _ => None,
        }
    }

    /// Nonzero with no trailing finite part: the limit ordinals.
    pub fn is_limit(&self) -> bool {
        match self.terms.last() {
            None => false,
            Some((exp, _)) => !exp.is_zero(),
        }
    }

    pub fn succ(&self) -> CnfOrdinal {
        self.add(&CnfOrdinal::finite(1))
    }

    /// Ordinal addition. Left absorption is the whole point: the left
    /// summand keeps only the terms at least as big as the right's leading
    /// exponent, so 1 + ω = ω while ω + 1 keeps both terms.
    pub fn add(&self, rhs: &CnfOrdinal) -> CnfOrdinal {
        let Some((lead, k)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(CnfOrdinal, u64)> =
            self.terms.iter().filter(|(exp, _)| exp > lead).cloned().collect();
        let mut rest = rhs.terms.iter();
        if let Some((exp, j)) = self.terms.iter().find(|(exp, _)| exp == lead) {
            debug_assert!(exp == lead);
            terms.push((lead.clone(), j + k));
            rest.next();
        }
        terms.extend(rest.cloned());
        CnfOrdinal { terms }
    }
}

impl Ord for CnfOrdinal {
    fn cmp(&self, other: &CnfOrdinal) -> Ordering {
        // lexicographic on the term list; a missing term loses, a bigger
        // exponent or (at equal exponents) a bigger coefficient wins no
        // matter what trails it, because every tail is below the next
        // omega power
        for i in 0..self.terms.len().max(other.terms.len()) {
            match (self.terms.get(i), other.terms.get(i)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((xe, xk)), Some((ye, yk))) => match xe.cmp(ye).then(xk.cmp(yk)) {
                    Ordering::Equal => continue,
                    decided => return decided,
                },
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for CnfOrdinal {
    fn partial_cmp(&self, other: &CnfOrdinal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CnfOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exp, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match exp.as_finite() {
                Some(0) => write!(f, "{k}")?,
                Some(1) => match k {
                    1 => write!(f, "ω")?,
                    _ => write!(f, "ω*{k}")?,
                },
                Some(m) => match k {
                    1 => write!(f, "ω^{m}")?,
                    _ => write!(f, "ω^{m}*{k}")?,
                },
                None if *exp == CnfOrdinal::omega() => match k {
                    1 => write!(f, "ω^ω")?,
                    _ => write!(f, "ω^ω*{k}")?,
                },
                None => match k {
                    1 => write!(f, "ω^({exp})")?,
                    _ => write!(f, "ω^({exp})*{k}")?,
                },
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseCnfError {
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("empty term")]
    EmptyTerm,
    #[error("coefficient out of range")]
    Coefficient,
    #[error("terms are not in strictly decreasing exponent order")]
    NotNormal,
}

struct Parser<'a> {
    rest: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.rest = &self.rest[c.len_utf8()..];
        Some(c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, ParseCnfError> {
        let digits: String = self.rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(ParseCnfError::EmptyTerm);
        }
        self.rest = &self.rest[digits.len()..];
        digits.parse().map_err(|_| ParseCnfError::Coefficient)
    }

    fn sum(&mut self) -> Result<CnfOrdinal, ParseCnfError> {
        let mut terms = Vec::new();
        loop {
            terms.push(self.term()?);
            if !self.eat('+') {
                break;
            }
        }
        // "0" stands alone; as a term in a longer sum it would be a zero
        // coefficient and normality rejects it below
        if terms.len() == 1 && terms[0].1 == 0 && terms[0].0.is_zero() {
            return Ok(CnfOrdinal::zero());
        }
        for pair in terms.windows(2) {
            if pair[0].0 <= pair[1].0 {
                return Err(ParseCnfError::NotNormal);
            }
        }
        if terms.iter().any(|(_, k)| *k == 0) {
            return Err(ParseCnfError::NotNormal);
        }
        Ok(CnfOrdinal { terms })
    }

    fn term(&mut self) -> Result<(CnfOrdinal, u64), ParseCnfError> {
        match self.peek() {
            Some('ω') | Some('w') => {
                self.bump();
                let exp = if self.eat('^') {
                    if self.eat('(') {
                        let inner = self.sum()?;
                        if !self.eat(')') {
                            return Err(ParseCnfError::Unbalanced);
                        }
                        inner
                    } else if self.eat('ω') || self.eat('w') {
                        // a lone omega exponent may skip the parentheses;
                        // anything deeper needs them
                        CnfOrdinal::omega()
                    } else {
                        CnfOrdinal::finite(self.number()?)
                    }
                } else {
                    CnfOrdinal::finite(1)
                };
                let k = if self.eat('*') { self.number()? } else { 1 };
                Ok((exp, k))
            }
            Some(c) if c.is_ascii_digit() => Ok((CnfOrdinal::zero(), self.number()?)),
            Some(c) => Err(ParseCnfError::Unexpected(c)),
            None => Err(ParseCnfError::EmptyTerm),
        }
    }
}

impl FromStr for CnfOrdinal {
    type Err = ParseCnfError;

    fn from_str(text: &str) -> Result<CnfOrdinal, ParseCnfError> {
        let mut p = Parser { rest: text.trim() };
        let value = p.sum()?;
        match p.peek() {
            None => Ok(value),
            Some(c) => Err(ParseCnfError::Unexpected(c)),
        }
    }
}
