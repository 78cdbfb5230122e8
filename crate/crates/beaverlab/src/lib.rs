//! A small laboratory for computability experiments.
//!
//! The crate has three layers that build on each other:
//!
//! * [`tm`] and [`search`]: concrete Turing machines, a total Gödel numbering
//!   of machine tables, exhaustive tree-normal-form enumeration of machine
//!   classes, non-halting deciders that emit machine-checkable certificates,
//!   and the busy-beaver style maximum functions computed from those runs.
//! * [`kernel`] and [`kdesc`]: a register-machine model with a total program
//!   numbering, fueled universal evaluation, s-m-n and Kleene fixed points,
//!   and the fuel-bounded descriptional-complexity measures built on top.
//! * [`ordinals`] and [`progressions`]: constructive ordinal notations with
//!   certified fundamental sequences, probes that hunt for ill-founded
//!   notations, iterated consistency progressions over those notations, and
//!   bounded verification of Pi-1 statements against trusted step bounds.
//!
//! Everything is deterministic: the same inputs produce byte-identical
//! reports, including under worker-pool parallelism.

pub mod kdesc;
pub mod kernel;
pub mod ordinals;
pub mod progressions;
pub mod search;
pub mod tm;
