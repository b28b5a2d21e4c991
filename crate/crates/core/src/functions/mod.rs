//! Reference oracles for the witness functions and truth-table utilities.

mod eqs;
mod saf;
mod truth_table;

pub use eqs::{eqs_eval, Eqs, ShuffleStrings};
pub use saf::{planted_chain_input, PlantedChain, SafParameters, SafStep, SafTraceRecord, StepMode};
pub use truth_table::{TruthTable, DEFAULT_TABLE_LIMIT};
