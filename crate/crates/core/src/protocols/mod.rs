//! Automata communication protocols simulating k-layer programs.
//!
//! Player A holds the variables of a prefix of the program order, player B
//! the rest. A message is the ordinal of the node where the computation
//! crosses between the two halves of a layer, written on `l` bits. Rounds
//! `1..=t` alternate A, B, …, A, after which B decides.

mod beta;
mod compile;
mod format;
mod matrices;
mod perturb;
mod protocol;
mod weak;

pub use beta::{
    beta_close, beta_close_matrix, beta_close_vec, rational_root_below, stated_transfer_beta_power, transfer_beta,
    transfer_beta_power,
};
pub use compile::{compile_protocol, message_bits};
pub use matrices::{matrix_accept, message_index, protocol_matrices, ProtocolMatrices, RatMatrix};
pub use perturb::perturb_protocol;
pub use protocol::{AutomataProtocol, Player, Round};
pub use weak::{weak_threshold, weaken_protocol};
