//! Ordered read-k-times branching programs.
//!
//! The crate models leveled oblivious k-layer programs in deterministic,
//! nondeterministic and probabilistic mode and provides:
//!
//! * evaluation, validation and the `BPv1` text format ([`bp`]);
//! * the witness functions EQS and SAF as reference oracles ([`functions`]);
//! * explicit k-OBDD builders for those functions ([`constructions`]);
//! * trace decomposition and single-layer NOBDD simulation ([`transforms`]);
//! * subfunction counting and the width/count bounds ([`analysis`]);
//! * automata communication protocols, their matrix form and β-closeness
//!   ([`protocols`]);
//! * seeded random program generation and a differential harness
//!   ([`generate`], [`harness`]).
//!
//! All probabilities are exact rationals.

pub mod analysis;
pub mod bits;
pub mod bp;
pub mod constructions;
pub mod error;
pub mod functions;
pub mod generate;
pub mod harness;
pub mod protocols;
pub mod rational;
pub mod transforms;

pub use bp::{BranchingProgram, EvalResult, Mode, NodeId, Outcome};
pub use error::{Error, Result};
pub use rational::Rational;
