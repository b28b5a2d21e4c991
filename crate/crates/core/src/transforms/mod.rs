//! Trace decomposition of k-layer programs and their simulation by a single
//! layer nondeterministic program.

mod decompose;
mod manifest;
mod simulate;
mod traces;

pub use decompose::{decompose, layer_program, Decomposition};
pub use manifest::Manifest;
pub use simulate::{simulate_as_nobdd, Simulation};
pub use traces::{enumerate_traces, Trace};
