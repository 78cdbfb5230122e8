//! Ordinal notations with computable fundamental sequences, and the ways
//! they go wrong.
//!
//! A notation is a natural-number code: zero, successor of a code, or the
//! limit of whatever sequence a kernel program computes. Because limits
//! defer to arbitrary programs, the order on notations is wildly
//! undecidable, so everything here runs on fuel and keeps its claims
//! bounded: [`precedes`] answers three ways, the [`Registry`] certifies
//! sequences only as far as it probed them, and [`ordinal_value`] refuses
//! limits nobody vouched for. The payoff for the caution is that the
//! pathological objects fit in the same type: [`pathological_limit`]
//! builds a notation that strictly precedes itself one step up, and
//! [`well_founded_probe`] catches it in a cycle.

mod cnf;
mod limits;
mod notation;
mod order;
mod registry;

pub use cnf::{CnfOrdinal, ParseCnfError};
pub use limits::{
    canonical_omega, omega_sequence, pathological_limit, pointwise_notation, Pathology,
    PointwiseError, PointwiseNotation, PointwiseVerdict, OMEGA_PROBE_BOUND,
};
pub use notation::{lim, succ, succ_tower, zero, Notation, NotationView, ParseNotationError};
pub use order::{precedes, well_founded_probe, Answer, ProbeOutcome};
pub use registry::{
    ordinal_value, RegisterError, Registry, RegistryEntry, RegistryLoadError, ValueError,
};
