//! Core engine for the worm calculus and the closed reflection calculus.
//!
//! Everything here is pure and allocation-only (`alloc`), so the crate builds
//! without `std`. IO, file formats and the command-line surface live in the
//! `wormcalc` crate.

#![no_std]

extern crate alloc;

pub mod calculus;
pub mod decide;
pub mod ignatiev;
pub mod ordinal;
pub mod rcnorm;
pub mod syntax;
pub mod worm;

pub use calculus::{check_proof, CheckError, Judgment, Proof, ProofError, Rule};
pub use decide::{brute_force, compare_worms, decide, Comparison, Decision, Verdict};
pub use ignatiev::{LSequence, ModelError, PointId, TruncatedModel};
pub use ordinal::{Ordinal, OrdinalError};
pub use rcnorm::RcFormula;
pub use syntax::ParseError;
pub use worm::Worm;
