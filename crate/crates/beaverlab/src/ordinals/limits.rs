//! Limit notations built from kernel programs: the canonical omega
//! sequence, the self-referential pathology, and the guarded point-wise
//! construction that interpolates between them.
//!
//! All three lean on the same kernel shape. A guarded tower evaluated at n
//! probes a check program on 0..=n and answers succ^n(start) if every
//! probe passes, or escapes to succ(lim(own anchor)) on the first failure.
//! With a constant-true check the tower is the fundamental sequence of
//! |start|+omega. With any failing check, the fixed point of the tower is
//! a program whose sequence mentions the very limit being built from it,
//! and the notation order develops a cycle. That cycle is not a bug in the
//! order; it is the whole show.

use std::fmt;

use num_bigint::BigUint;

use crate::kernel::{
    big, constant_index, encode_prog, eval, fixpoint, EvalOutcome, KernelError, Prog,
};

use super::cnf::CnfOrdinal;
use super::notation::{lim, succ, Notation};
use super::order::{precedes, well_founded_probe, Answer, ProbeOutcome};
use super::registry::{ordinal_value, Registry, RegisterError, RegistryEntry, ValueError};

/// Program computing the fundamental sequence of omega: eval on n yields
/// the code of succ^n(zero). The anchor is irrelevant because the
/// constant-true check never lets the tower escape.
pub fn omega_sequence() -> BigUint {
    encode_prog(&Prog::PointwiseAt {
        start: big(0),
        check: constant_index(&big(1)),
        anchor: big(0),
    })
}

/// How far the stock omega entry is probed. Code sizes square with tower
/// height, so 20 is already a six-figure-digit notation.
pub const OMEGA_PROBE_BOUND: u64 = 20;

/// Registers the canonical omega sequence and returns its entry. The
/// certification always passes; a registry that already carries a
/// different claim for this program is corrupt and panics the probe.
pub fn canonical_omega(registry: &mut Registry) -> RegistryEntry {
    registry
        .register(omega_sequence(), CnfOrdinal::omega(), OMEGA_PROBE_BOUND, 100_000)
        .expect("the tower sequence certifies")
        .clone()
}

/// What the pathological fixed point looks like from every angle the
/// artifact can measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pathology {
    pub e: BigUint,
    /// eval(e, 0): by construction the code of succ(lim(e)).
    pub at_zero: Notation,
    /// precedes(lim(e), at_zero): True by the successor rule.
    pub ascent: Answer,
    /// precedes(at_zero, lim(e)): also True, by the limit rule applied to
    /// e's own sequence. Together with ascent this is a two-cycle.
    pub descent: Answer,
    /// The cycle, caught by the descent probe.
    pub probe: ProbeOutcome,
}

/// Builds e with eval(e, n) = code of succ(lim(e)) for every n: a sequence
/// claiming to approximate a limit strictly above itself. The recursion
/// theorem makes the self-mention exact, not approximate. Fails only when
/// the fuel cannot even cover the construction's handful of dispatches.
pub fn pathological_limit(fuel: u64) -> Result<Pathology, KernelError> {
    let transformer = encode_prog(&Prog::Pointwise {
        start: big(0),
        check: constant_index(&big(0)),
    });
    let e = fixpoint(&transformer, fuel)?;
    let at_zero = match eval(&e, &big(0), fuel) {
        EvalOutcome::Converged { value, .. } => Notation::from_code(value),
        EvalOutcome::OutOfFuel => return Err(KernelError::TransformerDiverged),
    };
    let l = lim(&e);
    Ok(Pathology {
        ascent: precedes(&l, &at_zero, fuel),
        descent: precedes(&at_zero, &l, fuel),
        probe: well_founded_probe(&l, fuel),
        e,
        at_zero,
    })
}

impl fmt::Display for Pathology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = lim(&self.e);
        writeln!(f, "e: {}", self.e)?;
        writeln!(f, "phi_e(0): {} (succ(lim(e)) is {})", self.at_zero, succ(&l))?;
        writeln!(f, "lim(e) precedes phi_e(0): {}", self.ascent)?;
        writeln!(f, "phi_e(0) precedes lim(e): {}", self.descent)?;
        write!(f, "well-founded probe on lim(e): {}", self.probe)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointwiseVerdict {
    /// Every probed i answered 1. The sequence looked like a genuine
    /// fundamental sequence as far as anyone checked.
    AllChecksPassed,
    /// First i whose check answered 0. From that i on, the sequence
    /// returns the self-referential escape notation.
    FailedAt { i: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointwiseError {
    #[error("check program returned {value} at {at}; only 0 and 1 are answers")]
    NonBooleanCheck { at: u64, value: BigUint },
    #[error("check program did not converge at {at}")]
    CheckDiverged { at: u64 },
    #[error(transparent)]
    Register(#[from] RegisterError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseNotation {
    /// succ(lim(e_x)): the notation whose standing depends entirely on
    /// what the check says.
    pub a_x: Notation,
    pub e_x: BigUint,
    pub verdict: PointwiseVerdict,
}

/// The point-wise step over a base notation: builds the fixed point e_x of
/// the guarded tower seeded at `a`, so that eval(e_x, n) is succ^n(a)
/// while the check keeps passing and the succ(lim(e_x)) escape afterwards.
///
/// The check is probed host-side for i <= probe_bound. If every probe
/// passes and the base notation has a registry value, e_x is registered
/// with claim |a| + omega, making |a_x| = |a| + omega + 1 computable; a
/// base built on unregistered limits skips the recording. A failed check
/// skips it too, and the returned notation is then exactly the
/// pathological kind: well_founded_probe on lim(e_x) finds the cycle.
pub fn pointwise_notation(
    a: &Notation,
    check: &BigUint,
    registry: &mut Registry,
    probe_bound: u64,
    fuel: u64,
) -> Result<PointwiseNotation, PointwiseError> {
    let transformer = encode_prog(&Prog::Pointwise {
        start: a.code().clone(),
        check: check.clone(),
    });
    let e_x = fixpoint(&transformer, fuel.max(2))
        .expect("a one-dispatch combinator transformer cannot diverge");
    let mut verdict = PointwiseVerdict::AllChecksPassed;
    for i in 0..=probe_bound {
        match eval(check, &big(i), fuel) {
            EvalOutcome::Converged { value, .. } => {
                if value == big(1) {
                    continue;
                }
                if value == big(0) {
                    verdict = PointwiseVerdict::FailedAt { i };
                    break;
                }
                return Err(PointwiseError::NonBooleanCheck { at: i, value });
            }
            EvalOutcome::OutOfFuel => return Err(PointwiseError::CheckDiverged { at: i }),
        }
    }
    if verdict == PointwiseVerdict::AllChecksPassed {
        match ordinal_value(a, registry) {
            Ok(base) => {
                let claimed = base.add(&CnfOrdinal::omega());
                registry.register(e_x.clone(), claimed, probe_bound, fuel)?;
            }
            Err(ValueError::UnregisteredLimit { .. }) => {}
        }
    }
    Ok(PointwiseNotation { a_x: succ(&lim(&e_x)), e_x, verdict })
}

#[cfg(test)]
mod tests {
    use super::super::notation::{succ_tower, zero, NotationView};
    use super::*;
    use crate::kernel::{below_two, index_of};

    fn member(e: &BigUint, n: u64) -> Notation {
        match eval(e, &big(n), 100_000) {
            EvalOutcome::Converged { value, .. } => Notation::from_code(value),
            EvalOutcome::OutOfFuel => panic!("sequence member {n} diverged"),
        }
    }

    #[test]
    fn omega_sequence_is_the_succ_tower() {
        let e = omega_sequence();
        assert!(member(&e, 0).is_zero());
        for n in 0..8 {
            assert_eq!(member(&e, n), succ_tower(&zero(), n));
        }
    }

    #[test]
    fn canonical_omega_certifies_and_values_as_omega() {
        let mut reg = Registry::new();
        let entry = canonical_omega(&mut reg);
        assert_eq!(entry.claimed_value, CnfOrdinal::omega());
        assert_eq!(entry.probe_bound, OMEGA_PROBE_BOUND);
        let l = lim(&entry.prog);
        assert_eq!(ordinal_value(&l, &reg).unwrap(), CnfOrdinal::omega());
        assert_eq!(well_founded_probe(&l, 10_000), ProbeOutcome::Ok);
    }

    #[test]
    fn finite_stages_precede_the_canonical_limit() {
        let l = lim(&omega_sequence());
        assert_eq!(precedes(&succ_tower(&zero(), 5), &l, 100_000), Answer::True);
    }

    #[test]
    fn pathological_limit_cycles() {
        let p = pathological_limit(10_000).unwrap();
        // the defining equation: phi_e(0) = succ(lim(e)), self-reference included
        assert_eq!(p.at_zero, succ(&lim(&p.e)));
        let NotationView::Succ(inner) = p.at_zero.view() else {
            panic!("phi_e(0) is not a successor");
        };
        assert_eq!(inner.view(), NotationView::Lim(p.e.clone()));
        // both strict comparisons hold at once: a two-cycle in the order
        assert_eq!(p.ascent, Answer::True);
        assert_eq!(p.descent, Answer::True);
        let ProbeOutcome::CycleFound { path } = &p.probe else {
            panic!("no cycle found: {:?}", p.probe);
        };
        assert_eq!(path.first(), path.last());
        assert!(path.len() >= 3);
    }

    #[test]
    fn pathology_holds_at_every_probed_input() {
        let p = pathological_limit(10_000).unwrap();
        for n in 0..5 {
            assert_eq!(member(&p.e, n), p.at_zero, "n = {n}");
        }
    }

    #[test]
    fn starved_construction_reports_rather_than_panics() {
        assert_eq!(pathological_limit(0), Err(KernelError::TransformerDiverged));
    }

    #[test]
    fn pointwise_with_constant_true_extends_by_omega() {
        let mut reg = Registry::new();
        let out =
            pointwise_notation(&zero(), &constant_index(&big(1)), &mut reg, 12, 10_000).unwrap();
        assert_eq!(out.verdict, PointwiseVerdict::AllChecksPassed);
        assert_eq!(member(&out.e_x, 3), succ_tower(&zero(), 3));
        assert_eq!(out.a_x, succ(&lim(&out.e_x)));
        // the registry recorded |0| + omega, so |a_x| = omega + 1
        assert_eq!(ordinal_value(&out.a_x, &reg).unwrap(), "ω+1".parse().unwrap());
        assert_eq!(well_founded_probe(&lim(&out.e_x), 10_000), ProbeOutcome::Ok);
    }

    #[test]
    fn pointwise_over_a_successor_base_starts_at_the_base() {
        let mut reg = Registry::new();
        let base = succ_tower(&zero(), 1);
        let out =
            pointwise_notation(&base, &constant_index(&big(1)), &mut reg, 8, 10_000).unwrap();
        assert_eq!(member(&out.e_x, 0), base);
        // |base| + omega absorbs the finite base, so a_x values to omega+1
        assert_eq!(ordinal_value(&out.a_x, &reg).unwrap(), "ω+1".parse().unwrap());
    }

    #[test]
    fn pointwise_with_a_failing_check_goes_pathological() {
        let mut reg = Registry::new();
        let check = index_of(&below_two());
        let out = pointwise_notation(&zero(), &check, &mut reg, 10, 100_000).unwrap();
        assert_eq!(out.verdict, PointwiseVerdict::FailedAt { i: 2 });
        // before the failure the tower is honest, after it the escape
        assert_eq!(member(&out.e_x, 1), succ_tower(&zero(), 1));
        for n in 2..6 {
            assert_eq!(member(&out.e_x, n), out.a_x, "n = {n}");
        }
        assert!(matches!(
            well_founded_probe(&lim(&out.e_x), 100_000),
            ProbeOutcome::CycleFound { .. }
        ));
        assert!(reg.entries().is_empty(), "a failed check must not register");
    }

    #[test]
    fn non_boolean_and_diverging_checks_are_errors() {
        let mut reg = Registry::new();
        match pointwise_notation(&zero(), &constant_index(&big(5)), &mut reg, 4, 10_000) {
            Err(PointwiseError::NonBooleanCheck { at: 0, value }) => assert_eq!(value, big(5)),
            other => panic!("constant five accepted: {other:?}"),
        }
        match pointwise_notation(&zero(), &big(10), &mut reg, 4, 1_000) {
            Err(PointwiseError::CheckDiverged { at: 0 }) => {}
            other => panic!("jump loop accepted: {other:?}"),
        }
    }

    #[test]
    fn pointwise_registration_is_repeatable() {
        let mut reg = Registry::new();
        let check = constant_index(&big(1));
        let first = pointwise_notation(&zero(), &check, &mut reg, 6, 10_000).unwrap();
        let second = pointwise_notation(&zero(), &check, &mut reg, 6, 10_000).unwrap();
        assert_eq!(first, second);
        assert_eq!(reg.entries().len(), 1);
    }
}
