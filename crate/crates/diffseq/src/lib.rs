//! Ramsey-type computations for diffsequences and arithmetic progressions
//! with restricted gaps.
//!
//! The crate provides exact arithmetic in ℚ(√5), the Fibonacci word and its
//! derived words S and T, difference sets and pattern enumeration, coloring
//! constructions, monochromatic-pattern detection, exhaustive backtracking
//! and SAT-based computation of the associated Ramsey numbers, and finite
//! certification suites for the avoidance arguments.

pub mod cdcl;
pub mod cli;
pub mod colorings;
pub mod detect;
pub mod diffsets;
pub mod numerics;
pub mod proofcheck;
pub mod satgen;
pub mod search;
pub mod words;

pub use colorings::Coloring;
pub use detect::{PatternKind, Witness};
pub use diffsets::DiffSet;
pub use numerics::{QuadRat, SeqId};
