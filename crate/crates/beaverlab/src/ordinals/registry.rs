//! The registry of certified fundamental sequences.
//!
//! Whether a program is total and strictly increasing in the notation
//! order is undecidable, so limits never certify themselves. What the
//! registry offers instead is a bounded, checkable claim: registration
//! re-evaluates the sequence on every n up to the probe bound and demands
//! a definite yes from the order on every adjacent pair. Entries that
//! survive carry their claimed limit value and the bound that was actually
//! probed, nothing more. Valuation trusts exactly these claims, which
//! keeps every unverified assumption in one auditable place.
//!
//! Persistence is one line per entry, tab-separated:
//!
//! ```text
//! prog<TAB>claimed value in CNF text<TAB>probe bound
//! ```
//!
//! Loading re-runs the certification probes, so a tampered file fails
//! loudly rather than poisoning valuations.

use std::fmt;

use num_bigint::BigUint;

use crate::kernel::{big, eval, EvalOutcome};

use super::cnf::{CnfOrdinal, ParseCnfError};
use super::notation::{Notation, NotationView};
use super::order::{precedes, Answer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegistryEntry {
    pub prog: BigUint,
    /// The limit ordinal this sequence is claimed to converge to. Probed,
    /// never proved.
    pub claimed_value: CnfOrdinal,
    /// Totality and strict increase were checked for all n below this.
    pub probe_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegisterError {
    #[error("claimed value {0} is not a limit ordinal")]
    NotALimit(CnfOrdinal),
    #[error("sequence member {n} did not converge within fuel {fuel}")]
    Diverged { n: u64, fuel: u64 },
    #[error("sequence is not strictly increasing at step {n}")]
    NotIncreasing { n: u64 },
    #[error("order query at step {n} exhausted its fuel")]
    OrderUnknown { n: u64 },
    #[error("prog {prog} is already registered with claim {existing}")]
    ConflictingClaim { prog: BigUint, existing: CnfOrdinal },
}

/// Append-only store of certified sequences. Lookups see a snapshot;
/// nothing is ever rewritten or removed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Registry {
    entries: Vec<RegistryEntry>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn lookup(&self, prog: &BigUint) -> Option<&RegistryEntry> {
        self.entries.iter().find(|e| &e.prog == prog)
    }

    /// Runs the certification probes and appends on success. `fuel` is per
    /// evaluation and per order query. Registering the same program with
    /// the same claim again is a no-op; a different claim is refused, since
    /// append-only means earlier readers must never be contradicted.
    pub fn register(
        &mut self,
        prog: BigUint,
        claimed_value: CnfOrdinal,
        probe_bound: u64,
        fuel: u64,
    ) -> Result<&RegistryEntry, RegisterError> {
        if let Some(existing) = self.lookup(&prog) {
            if existing.claimed_value == claimed_value {
                let i = self.entries.iter().position(|e| e.prog == prog).unwrap();
                return Ok(&self.entries[i]);
            }
            return Err(RegisterError::ConflictingClaim {
                prog,
                existing: existing.claimed_value.clone(),
            });
        }
        if !claimed_value.is_limit() {
            return Err(RegisterError::NotALimit(claimed_value));
        }
        let mut prev: Option<Notation> = None;
        for n in 0..=probe_bound {
            let member = match eval(&prog, &big(n), fuel) {
                EvalOutcome::Converged { value, .. } => Notation::from_code(value),
                EvalOutcome::OutOfFuel => return Err(RegisterError::Diverged { n, fuel }),
            };
            if let Some(prev) = prev {
                match precedes(&prev, &member, fuel) {
                    Answer::True => {}
                    Answer::False => {
                        return Err(RegisterError::NotIncreasing { n: n - 1 });
                    }
                    Answer::Unknown => return Err(RegisterError::OrderUnknown { n: n - 1 }),
                }
            }
            prev = Some(member);
        }
        self.entries.push(RegistryEntry { prog, claimed_value, probe_bound });
        Ok(self.entries.last().unwrap())
    }

    /// The persistent form: entries in registration order, one line each.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{}\t{}\t{}\n", e.prog, e.claimed_value, e.probe_bound));
        }
        out
    }

    /// Rebuilds a registry from its persistent form, re-running every
    /// certification probe with the given fuel.
    pub fn from_lines(text: &str, fuel: u64) -> Result<Registry, RegistryLoadError> {
        let mut registry = Registry::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split('\t').collect();
            let [prog, claimed, bound] = parts.as_slice() else {
                return Err(RegistryLoadError::Shape { line: line_no, fields: parts.len() });
            };
            let prog: BigUint = prog
                .parse()
                .map_err(|_| RegistryLoadError::Prog { line: line_no, text: prog.to_string() })?;
            let claimed: CnfOrdinal = claimed
                .parse()
                .map_err(|e| RegistryLoadError::Claim { line: line_no, source: e })?;
            let bound: u64 = bound
                .parse()
                .map_err(|_| RegistryLoadError::Bound { line: line_no, text: bound.to_string() })?;
            registry
                .register(prog, claimed, bound, fuel)
                .map_err(|e| RegistryLoadError::Certify { line: line_no, source: e })?;
        }
        Ok(registry)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegistryLoadError {
    #[error("line {line}: {fields} fields, want 3")]
    Shape { line: usize, fields: usize },
    #[error("line {line}: bad program index {text:?}")]
    Prog { line: usize, text: String },
    #[error("line {line}: {source}")]
    Claim { line: usize, source: ParseCnfError },
    #[error("line {line}: bad probe bound {text:?}")]
    Bound { line: usize, text: String },
    #[error("line {line}: certification failed: {source}")]
    Certify { line: usize, source: RegisterError },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValueError {
    #[error("limit index {index} has no registry entry")]
    UnregisteredLimit { index: BigUint },
}

/// Cantor-normal-form value of a notation: zero is 0, successor adds one,
/// and a limit is worth whatever the registry certified for its program.
pub fn ordinal_value(a: &Notation, registry: &Registry) -> Result<CnfOrdinal, ValueError> {
    let mut steps = 0u64;
    let mut cur = a.clone();
    loop {
        match cur.view() {
            NotationView::Zero => {
                return Ok(CnfOrdinal::finite(steps));
            }
            NotationView::Succ(b) => {
                steps += 1;
                cur = b;
            }
            NotationView::Lim(e) => {
                let entry = registry
                    .lookup(&e)
                    .ok_or(ValueError::UnregisteredLimit { index: e })?;
                return Ok(entry.claimed_value.add(&CnfOrdinal::finite(steps)));
            }
        }
    }
}

impl fmt::Display for RegistryEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "prog {} claims {} (probed to {})",
            self.prog, self.claimed_value, self.probe_bound
        )
    }
}

#[cfg(test)]
mod tests {
    use super::super::notation::{lim, succ, succ_tower, zero};
    use super::*;
    use crate::kernel::{constant_index, encode_prog, Prog};

    /// eval(prog, n) = notation code of succ^n(zero): the guarded tower
    /// with a constant-true check never escapes.
    fn tower_prog() -> BigUint {
        encode_prog(&Prog::PointwiseAt {
            start: big(0),
            check: constant_index(&big(1)),
            anchor: big(0),
        })
    }

    #[test]
    fn certification_accepts_the_tower() {
        let mut reg = Registry::new();
        let entry =
            reg.register(tower_prog(), CnfOrdinal::omega(), 10, 10_000).unwrap().clone();
        assert_eq!(entry.probe_bound, 10);
        assert_eq!(reg.lookup(&tower_prog()).unwrap(), &entry);
    }

    #[test]
    fn non_limit_claims_are_refused() {
        let mut reg = Registry::new();
        for bad in [CnfOrdinal::zero(), CnfOrdinal::finite(5), CnfOrdinal::omega().succ()] {
            assert!(matches!(
                reg.register(tower_prog(), bad, 5, 10_000),
                Err(RegisterError::NotALimit(_))
            ));
        }
    }

    #[test]
    fn diverging_and_constant_sequences_are_refused() {
        let mut reg = Registry::new();
        // index 10 is the jump loop
        assert!(matches!(
            reg.register(big(10), CnfOrdinal::omega(), 3, 1_000),
            Err(RegisterError::Diverged { n: 0, .. })
        ));
        // a constant sequence converges but never increases
        assert!(matches!(
            reg.register(constant_index(&big(4)), CnfOrdinal::omega(), 3, 10_000),
            Err(RegisterError::NotIncreasing { n: 0 })
        ));
        assert!(reg.entries().is_empty());
    }

    #[test]
    fn re_registration_is_idempotent_but_contradiction_is_not() {
        let mut reg = Registry::new();
        reg.register(tower_prog(), CnfOrdinal::omega(), 5, 10_000).unwrap();
        reg.register(tower_prog(), CnfOrdinal::omega(), 9, 10_000).unwrap();
        assert_eq!(reg.entries().len(), 1);
        assert!(matches!(
            reg.register(tower_prog(), "ω*2".parse().unwrap(), 5, 10_000),
            Err(RegisterError::ConflictingClaim { .. })
        ));
    }

    #[test]
    fn valuation_follows_the_three_rules() {
        let mut reg = Registry::new();
        reg.register(tower_prog(), CnfOrdinal::omega(), 5, 10_000).unwrap();
        let l = super::super::notation::lim(&tower_prog());
        assert_eq!(ordinal_value(&zero(), &reg).unwrap(), CnfOrdinal::zero());
        assert_eq!(
            ordinal_value(&succ_tower(&zero(), 7), &reg).unwrap(),
            CnfOrdinal::finite(7)
        );
        assert_eq!(ordinal_value(&l, &reg).unwrap(), CnfOrdinal::omega());
        assert_eq!(
            ordinal_value(&succ(&succ(&l)), &reg).unwrap(),
            "ω+2".parse().unwrap()
        );
        match ordinal_value(&super::super::notation::lim(&big(999)), &reg) {
            Err(ValueError::UnregisteredLimit { index }) => assert_eq!(index, big(999)),
            other => panic!("unregistered limit valued: {other:?}"),
        }
    }

    #[test]
    fn lines_round_trip_through_recertification() {
        let mut reg = Registry::new();
        reg.register(tower_prog(), CnfOrdinal::omega(), 8, 10_000).unwrap();
        let text = reg.to_lines();
        let back = Registry::from_lines(&text, 10_000).unwrap();
        assert_eq!(back, reg);
    }

    #[test]
    fn tampered_lines_fail_to_load() {
        let mut reg = Registry::new();
        reg.register(tower_prog(), CnfOrdinal::omega(), 8, 10_000).unwrap();
        let good = reg.to_lines();
        // swap the certified program for the jump loop
        let bad = good.replace(&tower_prog().to_string(), "10");
        assert!(matches!(
            Registry::from_lines(&bad, 10_000),
            Err(RegistryLoadError::Certify { line: 1, .. })
        ));
        assert!(Registry::from_lines("not\ta\tregistry\tline", 100).is_err());
        assert!(matches!(
            Registry::from_lines("5\tω\tmany", 100),
            Err(RegistryLoadError::Bound { .. })
        ));
    }

    #[test]
    fn limit_law_holds_for_certified_members() {
        let mut reg = Registry::new();
        let entry = reg.register(tower_prog(), CnfOrdinal::omega(), 8, 10_000).unwrap().clone();
        let l = lim(&entry.prog);
        for n in 0..entry.probe_bound {
            let member = match eval(&entry.prog, &big(n), 10_000) {
                EvalOutcome::Converged { value, .. } => Notation::from_code(value),
                EvalOutcome::OutOfFuel => panic!("certified member diverged"),
            };
            assert_eq!(precedes(&member, &l, 100_000), Answer::True, "n = {n}");
        }
    }
}
