//! 2k-OBDD for SAF_{k,w} in the natural order.
//!
//! Layer `2t + 1` scans the blocks for address `(t, Step₂(t-1))` and ends
//! knowing Step₁(t); layer `2t + 2` scans for `(t, Step₁(t))` and ends knowing
//! Step₂(t). The zero padding past `n` is applied on the last level of each
//! layer.

use super::builder::{build_layered, Next};
use crate::bp::BranchingProgram;
use crate::error::Result;
use crate::functions::{SafParameters, StepMode};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SafState {
    /// Reading an address while looking for `s`. `need` lists the address
    /// suffixes (bits not yet read) that still match.
    Search { s: usize, need: Vec<usize> },
    /// The current block does not match `s`.
    Skip { s: usize },
    /// Summing the value bits of the matching block.
    Acc { sum: usize },
    /// The first matching block had value `v`.
    Found { v: usize },
}

/// `3w + 1`.
pub fn saf_width_bound(w: usize) -> usize {
    3 * w + 1
}

/// Deterministic 2k-OBDD computing SAF_{k,w} (in the Step₁ mode of `params`).
pub fn build_saf_2kobdd(params: &SafParameters) -> Result<BranchingProgram> {
    let n = params.n();
    let k = params.k();
    let start = search(params, 0, 0);
    build_layered(n, 2 * k, (1..=n).collect(), start, |level, s, bit| {
        let layer = (level - 1) / n + 1;
        let pos = (level - 1) % n + 1;
        let mut st = advance(params, layer, pos - 1, s.clone(), bit);
        if pos < n {
            return Next::Node(st);
        }
        for offset in n..params.padded_len() {
            st = advance(params, layer, offset, st, false);
        }
        finish_layer(params, layer, st)
    })
}

/// Acceptable full addresses for `(t, s)` as `AdrK bits | AdrW bits << kb`.
fn search(params: &SafParameters, t: usize, s: usize) -> SafState {
    let (kb, wb) = (params.k_bits(), params.w_bits());
    let mut need = Vec::new();
    for yw in (0..1usize << wb).filter(|y| y % (2 * params.w()) == s) {
        for yk in (0..1usize << kb).filter(|y| y % params.k() == t) {
            need.push(yk | yw << kb);
        }
    }
    need.sort_unstable();
    SafState::Search { s, need }
}

fn advance(params: &SafParameters, layer: usize, offset: usize, st: SafState, bit: bool) -> SafState {
    let a = params.block_len();
    let alen = params.address_len();
    let t = (layer - 1) / 2;
    let j = offset % a;
    let st = match st {
        SafState::Search { s, need } => {
            let need: Vec<usize> = need
                .into_iter()
                .filter(|r| (r & 1 == 1) == bit)
                .map(|r| r >> 1)
                .collect();
            if need.is_empty() {
                SafState::Skip { s }
            } else if j + 1 == alen {
                SafState::Acc { sum: 0 }
            } else {
                SafState::Search { s, need }
            }
        }
        SafState::Acc { sum } if j >= alen => SafState::Acc {
            sum: (sum + bit as usize) % params.w(),
        },
        other => other,
    };
    if j + 1 < a {
        return st;
    }
    match st {
        SafState::Acc { sum } => SafState::Found { v: sum },
        SafState::Skip { s } => search(params, t, s),
        other => other,
    }
}

fn finish_layer(params: &SafParameters, layer: usize, st: SafState) -> Next<SafState> {
    let w = params.w();
    let t = (layer - 1) / 2;
    let found = match st {
        SafState::Found { v } => Some(v),
        _ => None,
    };
    if layer % 2 == 1 {
        let step1 = match (found, params.mode()) {
            (Some(v), _) => v + w,
            (None, StepMode::Literal) => w - 1,
            (None, StepMode::Strict) => return Next::Sink(false),
        };
        Next::Node(search(params, t, step1))
    } else {
        match found {
            None => Next::Sink(false),
            Some(v) if t + 1 == params.k() => Next::Sink(v > 0),
            Some(v) => Next::Node(search(params, t + 1, v)),
        }
    }
}
