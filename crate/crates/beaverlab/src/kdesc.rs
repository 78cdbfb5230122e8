//! Descriptional complexity over the kernel numbering, approximated by
//! explicit budgets, and the diagonal halting set semi-decider.
//!
//! K(x | y) is the least program index e with phi_e(y) = x; K(x) is the
//! y = 0 case. True K is uncomputable, so every operation here takes an
//! index budget and a fuel budget and reports them back in its result:
//! a [`KResult::Found`] is exact and final (more budget never changes it),
//! a [`KResult::NotFoundWithin`] says only that no witness lives below the
//! budgets. The induced approximation of K never undershoots, it can only
//! sit above the true value until the budgets grow past the witness.
//!
//! The complexity here is index-based, not size-based: the measure of a
//! program is its position in the numbering, not its instruction count.
//! Both are classical; only the index variant is implemented.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::kernel::{big, eval, to_u64, EvalOutcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KResult {
    /// `index` is the least program index mapping the probe input to the
    /// target within fuel, and `fuel_used` is what that witness actually
    /// consumed. Verified and minimal by the scan that produced it.
    Found { index: u64, fuel_used: u64 },
    /// No index up to the budget converged to the target within fuel. The
    /// budgets are echoed back so the caller knows what was ruled out.
    NotFoundWithin { index_budget: u64, fuel: u64 },
}

impl KResult {
    pub fn index(&self) -> Option<u64> {
        match self {
            KResult::Found { index, .. } => Some(*index),
            KResult::NotFoundWithin { .. } => None,
        }
    }
}

/// Least e <= index_budget with phi_e(y) = x within fuel. The exhaustive
/// ascending scan is the definition; there is no cleverer algorithm to
/// disagree with. Budget 0 still probes the empty program at index 0.
pub fn k_phi(x: &BigUint, y: &BigUint, index_budget: u64, fuel: u64) -> KResult {
    for e in 0..=index_budget {
        if let EvalOutcome::Converged { value, fuel_used } = eval(&big(e), y, fuel) {
            if &value == x {
                return KResult::Found { index: e, fuel_used };
            }
        }
    }
    KResult::NotFoundWithin { index_budget, fuel }
}

/// One K-table row: the least-index result for a single target value, in
/// the line format `x<TAB>y<TAB>index<TAB>fuel_used` with `-` for the two
/// result fields when nothing was found within budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRow {
    pub x: u64,
    pub y: u64,
    pub index: Option<u64>,
    pub fuel_used: Option<u64>,
}

impl fmt::Display for KRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        write!(f, "{}\t{}\t{}\t{}", self.x, self.y, opt(self.index), opt(self.fuel_used))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseKRowError {
    #[error("row has {0} fields, want 4")]
    FieldCount(usize),
    #[error("bad {field} field {text:?}")]
    Field { field: &'static str, text: String },
    #[error("index and fuel_used must be both present or both absent")]
    HalfResult,
}

impl FromStr for KRow {
    type Err = ParseKRowError;

    fn from_str(line: &str) -> Result<KRow, ParseKRowError> {
        fn field(name: &'static str, text: &str) -> Result<Option<u64>, ParseKRowError> {
            if text == "-" {
                return Ok(None);
            }
            text.parse()
                .map(Some)
                .map_err(|_| ParseKRowError::Field { field: name, text: text.to_string() })
        }
        let parts: Vec<&str> = line.split('\t').collect();
        let [x, y, index, fuel_used] = parts.as_slice() else {
            return Err(ParseKRowError::FieldCount(parts.len()));
        };
        let x = field("x", x)?.ok_or(ParseKRowError::Field { field: "x", text: "-".into() })?;
        let y = field("y", y)?.ok_or(ParseKRowError::Field { field: "y", text: "-".into() })?;
        let index = field("index", index)?;
        let fuel_used = field("fuel_used", fuel_used)?;
        if index.is_some() != fuel_used.is_some() {
            return Err(ParseKRowError::HalfResult);
        }
        Ok(KRow { x, y, index, fuel_used })
    }
}

/// K-table for all targets x <= bound against one probe input, sharing a
/// single scan: each index is evaluated once and credited to every target
/// it is the first to hit. Row r agrees with `k_phi(r.x, y, ...)` exactly;
/// the scan order makes the least-index property hold per row.
pub fn k_table(bound: u64, y: u64, index_budget: u64, fuel: u64) -> Vec<KRow> {
    let mut rows: Vec<KRow> =
        (0..=bound).map(|x| KRow { x, y, index: None, fuel_used: None }).collect();
    let mut missing = bound + 1;
    let y = big(y);
    for e in 0..=index_budget {
        if missing == 0 {
            break;
        }
        if let EvalOutcome::Converged { value, fuel_used } = eval(&big(e), &y, fuel) {
            if let Some(v) = to_u64(&value) {
                if v <= bound && rows[v as usize].index.is_none() {
                    rows[v as usize].index = Some(e);
                    rows[v as usize].fuel_used = Some(fuel_used);
                    missing -= 1;
                }
            }
        }
    }
    rows
}

/// The budget-approximated incompressible numbers up to `bound`: every
/// x whose approximated K(x) is at least x. Because the approximation
/// only ever sits above true K, this is a superset of the genuinely
/// incompressible x <= bound, and raising either budget can only shrink
/// it. 0 is always a member.
pub fn incompressibles(bound: u64, index_budget: u64, fuel: u64) -> BTreeSet<u64> {
    k_table(bound, 0, index_budget, fuel)
        .into_iter()
        .filter(|row| row.index.is_none_or(|e| e >= row.x))
        .map(|row| row.x)
        .collect()
}

/// Answer of a semi-decision procedure: a positive answer is definitive,
/// everything else is silence within the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiDecision {
    Yes,
    Unknown,
}

/// Membership probe for the diagonal halting set: does phi_n(n) converge?
/// Yes answers are stable under fuel increase; Unknown only reports that
/// this much fuel did not settle it.
pub fn in_diagonal_halting(n: &BigUint, fuel: u64) -> SemiDecision {
    match eval(n, n, fuel) {
        EvalOutcome::Converged { .. } => SemiDecision::Yes,
        EvalOutcome::OutOfFuel => SemiDecision::Unknown,
    }
}
