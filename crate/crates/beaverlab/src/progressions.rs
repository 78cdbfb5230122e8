//! Consistency progressions as symbolic trees over notations, and bounded
//! verification of universal machine statements.
//!
//! The progression side is deliberately proof-free: a stage is a label, a
//! successor edge records "this stage is the child plus the child's
//! consistency", a limit node records the coded sequence it unions, and
//! nothing resembling a formula is ever built. What is computable about
//! progressions is exactly the part that lives on notations, and that is
//! the part expanded here.
//!
//! The verification side turns a universal claim into a bounded run: a
//! statement carries a searcher machine that halts exactly when a
//! counterexample exists, so anyone holding an upper bound on the
//! searcher's halting time can settle the claim by running it that far.
//! The bound is the caller's responsibility, and the two entry points only
//! differ in how honest they are about that: the trusted one concludes,
//! the checked one refuses to.

use num_bigint::BigUint;

use crate::kernel::{big, eval, EvalOutcome};
use crate::ordinals::{well_founded_probe, Notation, NotationView, ProbeOutcome};
use crate::tm::{class_block, decode_machine, run, Entry, Machine, Move, SimOutcome};

/// A stage of a progression: a base theory name extended along a notation.
/// Equality is structural on both fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryLabel {
    pub base: String,
    pub notation: Notation,
}

impl std::fmt::Display for TheoryLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}_{}", self.base, self.notation)
    }
}

/// Which defining equation produced a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRule {
    /// The base theory itself.
    Ground,
    /// Successor stage: the child plus the child's consistency statement.
    AddsCons,
    /// Limit stage: the union of the stages along the coded sequence. Only
    /// the first `shown` stages are expanded; the rest are the ellipsis.
    LimitPrefix { shown: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressionNode {
    pub label: TheoryLabel,
    pub rule: NodeRule,
    /// The well-foundedness probe certified a cycle under this notation, or
    /// the notation repeats one of its own ancestors in the tree. Either
    /// way the stage is not part of a genuine progression.
    pub suspicious: bool,
    /// The depth budget ran out here; the equations would keep going.
    pub cut: bool,
    pub children: Vec<ProgressionNode>,
}

impl ProgressionNode {
    pub fn count(&self) -> usize {
        1 + self.children.iter().map(ProgressionNode::count).sum::<usize>()
    }
}

/// A finite expansion of a progression, together with the parameters that
/// shaped it. Expansion is deterministic: same parameters, same tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressionTree {
    pub root: ProgressionNode,
    pub limit_prefix: u64,
    pub depth: u64,
    pub fuel: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpandError {
    #[error("stage {n} of the limit sequence coded by {e} did not converge within fuel")]
    EvalExhausted { e: BigUint, n: u64 },
}

/// Expands the progression over `a` by the three equations: zero is the
/// base theory, a successor stage adds the consistency of its child, a
/// limit stage unions the coded sequence and shows the first
/// `limit_prefix` stages of it. `depth` bounds the number of edges walked
/// from the root, and `fuel` pays for both the sequence evaluations and
/// the per-node well-foundedness probes.
pub fn expand_progression(
    base: &str,
    a: &Notation,
    limit_prefix: u64,
    depth: u64,
    fuel: u64,
) -> Result<ProgressionTree, ExpandError> {
    let mut path = Vec::new();
    let root = expand_node(base, a, limit_prefix, depth, fuel, &mut path)?;
    Ok(ProgressionTree { root, limit_prefix, depth, fuel })
}

fn expand_node(
    base: &str,
    a: &Notation,
    limit_prefix: u64,
    depth: u64,
    fuel: u64,
    path: &mut Vec<Notation>,
) -> Result<ProgressionNode, ExpandError> {
    let repeats_ancestor = path.contains(a);
    let suspicious = repeats_ancestor
        || matches!(well_founded_probe(a, fuel), ProbeOutcome::CycleFound { .. });

    let mut cut = false;
    let mut children = Vec::new();
    let rule = match a.view() {
        NotationView::Zero => NodeRule::Ground,
        NotationView::Succ(b) => {
            if depth == 0 {
                cut = true;
            } else {
                path.push(a.clone());
                let child = expand_node(base, &b, limit_prefix, depth - 1, fuel, path);
                path.pop();
                children.push(child?);
            }
            NodeRule::AddsCons
        }
        NotationView::Lim(e) => {
            if depth == 0 {
                cut = true;
            } else {
                path.push(a.clone());
                for n in 0..limit_prefix {
                    let member = match eval(&e, &big(n), fuel) {
                        EvalOutcome::Converged { value, .. } => Notation::from_code(value),
                        EvalOutcome::OutOfFuel => {
                            path.pop();
                            return Err(ExpandError::EvalExhausted { e, n });
                        }
                    };
                    let child =
                        expand_node(base, &member, limit_prefix, depth - 1, fuel, path);
                    match child {
                        Ok(c) => children.push(c),
                        Err(err) => {
                            path.pop();
                            return Err(err);
                        }
                    }
                }
                path.pop();
            }
            NodeRule::LimitPrefix { shown: limit_prefix }
        }
    };

    Ok(ProgressionNode {
        label: TheoryLabel { base: base.to_string(), notation: a.clone() },
        rule,
        suspicious,
        cut,
        children,
    })
}

impl ProgressionTree {
    pub fn node_count(&self) -> usize {
        self.root.count()
    }

    /// One record per node in preorder:
    /// `depth<TAB>base<TAB>notation<TAB>rule<TAB>flags`, rule one of
    /// `ground`, `cons`, `limit:<shown>`, flags a comma list of
    /// `suspicious` and `cut` or `-` when clean.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        record_node(&mut out, &self.root, 0);
        out
    }
}

fn record_node(out: &mut String, node: &ProgressionNode, depth: usize) {
    let rule = match node.rule {
        NodeRule::Ground => "ground".to_string(),
        NodeRule::AddsCons => "cons".to_string(),
        NodeRule::LimitPrefix { shown } => format!("limit:{shown}"),
    };
    let mut flags: Vec<&str> = Vec::new();
    if node.suspicious {
        flags.push("suspicious");
    }
    if node.cut {
        flags.push("cut");
    }
    let flags = if flags.is_empty() { "-".to_string() } else { flags.join(",") };
    out.push_str(&format!(
        "{depth}\t{}\t{}\t{rule}\t{flags}\n",
        node.label.base, node.label.notation
    ));
    for child in &node.children {
        record_node(out, child, depth + 1);
    }
}

impl std::fmt::Display for ProgressionTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        outline(f, &self.root, 0)
    }
}

fn outline(
    f: &mut std::fmt::Formatter<'_>,
    node: &ProgressionNode,
    indent: usize,
) -> std::fmt::Result {
    write!(f, "{:indent$}{}", "", node.label, indent = indent * 2)?;
    match node.rule {
        NodeRule::Ground => write!(f, " = {}", node.label.base)?,
        NodeRule::AddsCons => {
            // The child label is recoverable from the notation even when
            // the depth cut kept it out of the tree.
            if let NotationView::Succ(b) = node.label.notation.view() {
                let child = TheoryLabel { base: node.label.base.clone(), notation: b };
                write!(f, " = {child} + Cons({child})")?;
            }
        }
        NodeRule::LimitPrefix { shown } => {
            write!(f, " = union of its coded stages (first {shown} below, then ...)")?;
        }
    }
    if node.suspicious {
        write!(f, " [suspicious]")?;
    }
    if node.cut {
        write!(f, " ...")?;
    }
    writeln!(f)?;
    for child in &node.children {
        outline(f, child, indent + 1)?;
    }
    Ok(())
}

/// Outcome of checking a finite notation set for linear orderedness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchCheck {
    LinearlyOrdered,
    /// Both order directions definitely fail for this pair.
    Incomparable { pair: (Notation, Notation) },
    Unknown,
}

/// Checks every pair for comparability under the fueled order. A pair is
/// comparable when the elements are equal or one definitely precedes the
/// other; it is definitely incomparable when both directions answer False.
/// The first definite incomparability wins; otherwise any unresolved pair
/// makes the whole answer Unknown.
pub fn branch_check(notations: &[Notation], fuel: u64) -> BranchCheck {
    let mut unresolved = false;
    for i in 0..notations.len() {
        for j in i + 1..notations.len() {
            let (a, b) = (&notations[i], &notations[j]);
            if a == b {
                continue;
            }
            let forward = crate::ordinals::precedes(a, b, fuel);
            if forward == crate::ordinals::Answer::True {
                continue;
            }
            let backward = crate::ordinals::precedes(b, a, fuel);
            if backward == crate::ordinals::Answer::True {
                continue;
            }
            if forward == crate::ordinals::Answer::False
                && backward == crate::ordinals::Answer::False
            {
                return BranchCheck::Incomparable { pair: (a.clone(), b.clone()) };
            }
            unresolved = true;
        }
    }
    if unresolved {
        BranchCheck::Unknown
    } else {
        BranchCheck::LinearlyOrdered
    }
}

/// A universal claim about numbers, packaged as its refutation searcher:
/// the machine halts from blank tape exactly when a counterexample exists,
/// leaving the counterexample on the tape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Statement {
    pub searcher: Machine,
    pub description: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pi1Outcome {
    /// The searcher survived the bound without halting. Sound exactly when
    /// the bound really does dominate the searcher's halting time.
    Verified,
    CounterexampleFound { x: u64, at_step: u64 },
    /// The bound ran out and the caller did not vouch for it.
    BoundInsufficient,
}

impl std::fmt::Display for Pi1Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Pi1Outcome::Verified => f.write_str("verified"),
            Pi1Outcome::CounterexampleFound { x, at_step } => {
                write!(f, "counterexample x={x} at_step={at_step}")
            }
            Pi1Outcome::BoundInsufficient => f.write_str("bound-insufficient"),
        }
    }
}

impl std::str::FromStr for Pi1Outcome {
    type Err = ParsePi1Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "verified" => return Ok(Pi1Outcome::Verified),
            "bound-insufficient" => return Ok(Pi1Outcome::BoundInsufficient),
            _ => {}
        }
        let rest = s
            .strip_prefix("counterexample x=")
            .ok_or_else(|| ParsePi1Error::Outcome(s.to_string()))?;
        let (x, at) = rest
            .split_once(" at_step=")
            .ok_or_else(|| ParsePi1Error::Outcome(s.to_string()))?;
        let x = x.parse().map_err(|_| ParsePi1Error::Outcome(s.to_string()))?;
        let at_step = at.parse().map_err(|_| ParsePi1Error::Outcome(s.to_string()))?;
        Ok(Pi1Outcome::CounterexampleFound { x, at_step })
    }
}

/// Settles the claim by running the searcher `bound` steps, trusting the
/// caller that the bound dominates the searcher's halting time. Under that
/// precondition a silent run is a proof: Verified. A halt always means a
/// real counterexample, bound or no bound.
pub fn verify_pi1_with_bound(stmt: &Pi1Statement, bound: u64) -> Pi1Outcome {
    match run(&stmt.searcher, 0, bound) {
        SimOutcome::Halted { steps, output, .. } => {
            Pi1Outcome::CounterexampleFound { x: output, at_step: steps }
        }
        _ => Pi1Outcome::Verified,
    }
}

/// The honest variant for bounds nobody vouches for: a halt still refutes,
/// but a silent run concludes nothing and says so.
pub fn verify_pi1_checked(stmt: &Pi1Statement, bound: u64) -> Pi1Outcome {
    match run(&stmt.searcher, 0, bound) {
        SimOutcome::Halted { steps, output, .. } => {
            Pi1Outcome::CounterexampleFound { x: output, at_step: steps }
        }
        _ => Pi1Outcome::BoundInsufficient,
    }
}

/// One verification run as a structured-text record:
/// `description<TAB>bound<TAB>trusted|untrusted<TAB>outcome`. Tabs and
/// newlines in the description are flattened to spaces on output so the
/// record stays one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Report {
    pub description: String,
    pub bound: u64,
    pub trusted: bool,
    pub outcome: Pi1Outcome,
}

impl std::fmt::Display for Pi1Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let clean: String = self
            .description
            .chars()
            .map(|c| if c == '\t' || c == '\n' { ' ' } else { c })
            .collect();
        write!(
            f,
            "{clean}\t{}\t{}\t{}",
            self.bound,
            if self.trusted { "trusted" } else { "untrusted" },
            self.outcome
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParsePi1Error {
    #[error("want 4 tab-separated fields: description, bound, trust, outcome")]
    FieldCount,
    #[error("bad bound field {0:?}")]
    Bound(String),
    #[error("bad trust field {0:?}, want trusted or untrusted")]
    Trust(String),
    #[error("bad outcome field {0:?}")]
    Outcome(String),
}

impl std::str::FromStr for Pi1Report {
    type Err = ParsePi1Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split('\t').collect();
        if fields.len() != 4 {
            return Err(ParsePi1Error::FieldCount);
        }
        let bound =
            fields[1].parse().map_err(|_| ParsePi1Error::Bound(fields[1].to_string()))?;
        let trusted = match fields[2] {
            "trusted" => true,
            "untrusted" => false,
            other => return Err(ParsePi1Error::Trust(other.to_string())),
        };
        let outcome = fields[3].parse()?;
        Ok(Pi1Report { description: fields[0].to_string(), bound, trusted, outcome })
    }
}

/// Runs the statement under the chosen trust discipline and packages the
/// outcome as a record.
pub fn verify_with_report(stmt: &Pi1Statement, bound: u64, trusted: bool) -> Pi1Report {
    let outcome = if trusted {
        verify_pi1_with_bound(stmt, bound)
    } else {
        verify_pi1_checked(stmt, bound)
    };
    Pi1Report { description: stmt.description.clone(), bound, trusted, outcome }
}

/// A statement that is false at `x` and says so at once: the searcher
/// lays down `x` ones and halts. Handy as a counterexample fixture and as
/// the degenerate case of the searcher contract.
pub fn immediate_counterexample(x: u64) -> Pi1Statement {
    assert!(x < 250, "fixture machines carry one state per written one");
    let states = (x + 1) as u8;
    let mut table = Vec::new();
    for state in 0..states {
        let entry = if (state as u64) < x {
            Entry::Step { write: 1, mv: Move::R, next: state + 1 }
        } else {
            Entry::Halt { write: 0, mv: Move::R }
        };
        // Same action on either read; the tape ahead is blank anyway.
        table.push(entry);
        table.push(entry);
    }
    Pi1Statement {
        searcher: Machine::new(states, 2, table),
        description: format!("false at {x} by construction"),
    }
}

/// The claim "every halting machine with this shape scores at most
/// `score_bound` from blank tape", with the searcher built by scanning the
/// whole class at `per_machine_fuel` steps per machine. The searcher is
/// extensional: if the scan finds an offender, the offender itself is the
/// searcher (it halts, and its tape is the counterexample); if none
/// exists, the searcher is a machine that never halts. Soundness of a
/// later Verified therefore leans on the scan fuel covering the class's
/// true halting times, which is exactly the trusted-bound discipline.
pub fn score_claim(
    states: u8,
    symbols: u8,
    score_bound: u64,
    per_machine_fuel: u64,
) -> Pi1Statement {
    let block = class_block(states, symbols);
    let description = format!(
        "every halting {states}x{symbols} machine scores at most {score_bound}"
    );
    for code in block.start as u64..block.end() as u64 {
        let m = decode_machine(code);
        if let SimOutcome::Halted { score, .. } = run(&m, 0, per_machine_fuel) {
            if score > score_bound {
                return Pi1Statement { searcher: m, description };
            }
        }
    }
    let rightward = Machine::new(
        1,
        2,
        vec![
            Entry::Step { write: 1, mv: Move::R, next: 0 },
            Entry::Step { write: 1, mv: Move::R, next: 0 },
        ],
    );
    Pi1Statement { searcher: rightward, description }
}
