//! Explicit k-OBDD builders for the witness functions.

mod builder;
mod eqs;
mod saf;

pub use builder::{build_layered, build_layered_annotated, Next, Slot};
pub use eqs::{build_eqs, build_eqs_annotated, build_eqs_kobdd, eqs_width_bound, EqsState};
pub use saf::{build_saf_2kobdd, saf_width_bound, SafState};
