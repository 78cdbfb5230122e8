//! The fueled notation order and the well-foundedness probe.
//!
//! The order is the inductively generated one: nothing precedes zero, a
//! precedes succ(b) when a is b or precedes it, and a precedes lim(e) when
//! some phi_e(n) is a or comes after it. Membership in that relation is
//! not even semi-decidable in general, so both directions run on fuel and
//! answer three ways. True and False are sound readings of the rules; on
//! notations whose limit programs are genuine (total, increasing, the
//! registry's business) they are sound for the order itself. On junk
//! limits the rules can certify a cycle, and that is a feature: it is how
//! the pathological constructions are caught in the act.

use num_bigint::BigUint;

use crate::kernel::{big, eval, EvalOutcome};

use super::notation::{Notation, NotationView};

/// Fueled answer to an undecidable question. Definite answers are stable
/// under fuel increase; Unknown is an admission, not a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    True,
    False,
    Unknown,
}

impl Answer {
    pub fn definite(self) -> bool {
        self != Answer::Unknown
    }
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Answer::True => "true",
            Answer::False => "false",
            Answer::Unknown => "unknown",
        })
    }
}

/// Does a strictly precede b? One shared budget pays for everything:
/// structural steps cost 1, limit sequences are evaluated out of the same
/// pool, so a run is O(fuel) no matter how adversarial the codes are.
pub fn precedes(a: &Notation, b: &Notation, fuel: u64) -> Answer {
    let mut budget = fuel;
    prec(a, b.clone(), &mut budget)
}

fn prec(a: &Notation, b: Notation, budget: &mut u64) -> Answer {
    let mut cur = b;
    loop {
        if a == &cur {
            // irreflexivity, and the base of the "a or before it" cases
            return Answer::False;
        }
        match budget.checked_sub(1) {
            Some(left) => *budget = left,
            None => return Answer::Unknown,
        }
        match cur.view() {
            NotationView::Zero => return Answer::False,
            NotationView::Succ(b1) => {
                if a == &b1 {
                    return Answer::True;
                }
                cur = b1;
            }
            NotationView::Lim(e) => return prec_limit(a, &e, budget),
        }
    }
}

/// a precedes lim(e) when a is phi_e(n) or precedes it for some n. The
/// search walks n upward until the budget dies; there is no sound way to
/// answer False short of exhausting an infinite sequence, so False never
/// comes out of here.
///
/// The walk runs in two phases. Fundamental sequences enumerate their own
/// stages, so a is very often literally one of the members; the first half
/// of the budget is an equality-only scan, which costs no recursion and in
/// particular cannot be eaten by a hopeless sub-search below some early
/// member. Only then does the recursive search start over from n = 0 on
/// the remaining budget.
fn prec_limit(a: &Notation, e: &BigUint, budget: &mut u64) -> Answer {
    let mut scan = *budget / 2;
    *budget -= scan;
    let mut n = 0u64;
    while let Some(left) = scan.checked_sub(1) {
        scan = left;
        match eval(e, &big(n), scan) {
            EvalOutcome::Converged { value, fuel_used } => {
                scan -= fuel_used;
                if a.code() == &value {
                    *budget += scan;
                    return Answer::True;
                }
            }
            EvalOutcome::OutOfFuel => break,
        }
        n += 1;
    }
    let mut n = 0u64;
    loop {
        match budget.checked_sub(1) {
            Some(left) => *budget = left,
            None => return Answer::Unknown,
        }
        let member = match eval(e, &big(n), *budget) {
            EvalOutcome::Converged { value, fuel_used } => {
                *budget -= fuel_used;
                Notation::from_code(value)
            }
            EvalOutcome::OutOfFuel => return Answer::Unknown,
        };
        if a == &member || prec(a, member, budget) == Answer::True {
            return Answer::True;
        }
        n += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// Every descent the budget reached grounded out at zero. A bounded
    /// claim, not a proof of well-foundedness.
    Ok,
    /// A notation code repeated along one descending path; the path ends
    /// with the repeat. This refutes membership in the genuine notation
    /// system outright.
    CycleFound { path: Vec<Notation> },
    Unknown,
}

impl std::fmt::Display for ProbeOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProbeOutcome::Ok => f.write_str("ok"),
            ProbeOutcome::CycleFound { path } => {
                write!(f, "cycle:")?;
                for node in path {
                    write!(f, " {node}")?;
                }
                Ok(())
            }
            ProbeOutcome::Unknown => f.write_str("unknown"),
        }
    }
}

/// How many members of each limit sequence the probe expands. The cycles
/// worth catching show up at the very front of a sequence; depth, not
/// breadth, is where the budget should go.
const LIM_WIDTH: u64 = 3;

/// Walks the expansion graph downward: succ(a) steps to a, lim(e) steps to
/// its first few members. Reports a cycle the moment a code repeats on the
/// current path.
pub fn well_founded_probe(a: &Notation, fuel: u64) -> ProbeOutcome {
    let mut budget = fuel;
    let mut path = Vec::new();
    probe(a.clone(), &mut path, &mut budget)
}

fn probe(start: Notation, path: &mut Vec<Notation>, budget: &mut u64) -> ProbeOutcome {
    let base = path.len();
    let mut cur = start;
    let outcome = loop {
        if path.contains(&cur) {
            let mut cycle = path.clone();
            cycle.push(cur);
            break ProbeOutcome::CycleFound { path: cycle };
        }
        match budget.checked_sub(1) {
            Some(left) => *budget = left,
            None => break ProbeOutcome::Unknown,
        }
        path.push(cur.clone());
        match cur.view() {
            NotationView::Zero => break ProbeOutcome::Ok,
            NotationView::Succ(b) => cur = b,
            NotationView::Lim(e) => {
                let mut verdict = ProbeOutcome::Ok;
                for n in 0..LIM_WIDTH {
                    match eval(&e, &big(n), *budget) {
                        EvalOutcome::Converged { value, fuel_used } => {
                            *budget -= fuel_used;
                            match probe(Notation::from_code(value), path, budget) {
                                ProbeOutcome::Ok => continue,
                                bad => {
                                    verdict = bad;
                                    break;
                                }
                            }
                        }
                        EvalOutcome::OutOfFuel => {
                            verdict = ProbeOutcome::Unknown;
                            break;
                        }
                    }
                }
                break verdict;
            }
        }
    };
    path.truncate(base);
    outcome
}

#[cfg(test)]
mod tests {
    use super::super::notation::{lim, succ, succ_tower, zero};
    use super::*;

    #[test]
    fn nothing_precedes_zero_and_everything_precedes_its_successor() {
        let samples =
            [zero(), succ(&zero()), succ_tower(&zero(), 5), lim(&big(65_529)), lim(&big(9))];
        for a in &samples {
            assert_eq!(precedes(a, &zero(), 1_000), Answer::False);
            assert_eq!(precedes(a, &succ(a), 1_000), Answer::True);
            assert_eq!(precedes(a, a, 1_000), Answer::False, "irreflexivity");
        }
    }

    #[test]
    fn finite_towers_order_by_height() {
        for i in 0..6u64 {
            for j in 0..6u64 {
                let (a, b) = (succ_tower(&zero(), i), succ_tower(&zero(), j));
                let want = if i < j { Answer::True } else { Answer::False };
                assert_eq!(precedes(&a, &b, 10_000), want, "{i} vs {j}");
            }
        }
    }

    #[test]
    fn zero_fuel_answers_only_by_equality() {
        let a = succ(&zero());
        assert_eq!(precedes(&a, &a, 0), Answer::False);
        assert_eq!(precedes(&zero(), &a, 0), Answer::Unknown);
    }

    #[test]
    fn probes_ground_finite_towers() {
        assert_eq!(well_founded_probe(&zero(), 10), ProbeOutcome::Ok);
        assert_eq!(well_founded_probe(&succ_tower(&zero(), 12), 100), ProbeOutcome::Ok);
        assert_eq!(well_founded_probe(&succ_tower(&zero(), 12), 5), ProbeOutcome::Unknown);
    }

    #[test]
    fn diverging_limit_programs_leave_the_probe_unknown() {
        // index 10 is the one-instruction jump loop
        assert_eq!(well_founded_probe(&lim(&big(10)), 2_000), ProbeOutcome::Unknown);
        assert_eq!(precedes(&succ(&zero()), &lim(&big(10)), 2_000), Answer::Unknown);
    }
}
