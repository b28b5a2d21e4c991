//! k-OBDD for EQS_k in the natural order.
//!
//! Layer `i <= k/4` locates the `i`-th bits of α and β and compares them.
//! Layer `k/4 + 1` checks `|α| = k/4`. Later layers pass the verdict on.

use super::builder::{build_layered, build_layered_annotated, Next, Slot};
use crate::bp::BranchingProgram;
use crate::error::Result;
use crate::functions::Eqs;

/// Node label. `marker` holds the marker bit of the current pair once read.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EqsState {
    /// Neither `i`-th bit seen; `a`, `b` bits of α and β seen so far.
    Count { a: usize, b: usize, marker: Option<bool> },
    /// `i`-th bit of α is `q`; `b` bits of β seen.
    AlphaKnown { q: bool, b: usize, marker: Option<bool> },
    /// `i`-th bit of β is `q`; `a` bits of α seen.
    BetaKnown { q: bool, a: usize, marker: Option<bool> },
    /// Length layer: `a` bits of α seen.
    Length { a: usize, marker: Option<bool> },
    /// Everything checked so far agrees.
    Equal,
}

/// `k² + 6k + 2`.
pub fn eqs_width_bound(k: usize) -> usize {
    k * k + 6 * k + 2
}

/// Deterministic k-OBDD computing EQS_k on `n` variables.
pub fn build_eqs_kobdd(k: usize, n: usize) -> Result<BranchingProgram> {
    build_eqs(&Eqs::new(k, n)?)
}

/// Builder for already checked (or relaxed) parameters; `k = d`.
pub fn build_eqs(params: &Eqs) -> Result<BranchingProgram> {
    let (n, k) = (params.n(), params.d());
    build_layered(n, k, (1..=n).collect(), layer_start(1, k), |l, s, b| {
        transition(n, k, l, s, b)
    })
}

/// [`build_eqs`] with the state label of every node.
pub fn build_eqs_annotated(params: &Eqs) -> Result<(BranchingProgram, Vec<Vec<Slot<EqsState>>>)> {
    let (n, k) = (params.n(), params.d());
    build_layered_annotated(n, k, (1..=n).collect(), layer_start(1, k), |l, s, b| {
        transition(n, k, l, s, b)
    })
}

fn layer_start(layer: usize, d: usize) -> EqsState {
    let quarter = d / 4;
    if layer <= quarter {
        EqsState::Count {
            a: 0,
            b: 0,
            marker: None,
        }
    } else if layer == quarter + 1 {
        EqsState::Length { a: 0, marker: None }
    } else {
        EqsState::Equal
    }
}

fn transition(n: usize, d: usize, level: usize, s: &EqsState, bit: bool) -> Next<EqsState> {
    use EqsState::*;
    let layer = (level - 1) / n + 1;
    let pos = (level - 1) % n + 1;
    let i = layer;
    let quarter = d / 4;

    let mut next = if pos > d {
        Next::Node(s.clone())
    } else if pos % 2 == 1 {
        Next::Node(match *s {
            Count { a, b, .. } => Count {
                a,
                b,
                marker: Some(bit),
            },
            AlphaKnown { q, b, .. } => AlphaKnown {
                q,
                b,
                marker: Some(bit),
            },
            BetaKnown { q, a, .. } => BetaKnown {
                q,
                a,
                marker: Some(bit),
            },
            Length { a, .. } => Length { a, marker: Some(bit) },
            Equal => Equal,
        })
    } else {
        match *s {
            Count {
                a,
                b,
                marker: Some(false),
            } if a + 1 == i => Next::Node(AlphaKnown {
                q: bit,
                b,
                marker: None,
            }),
            Count {
                a,
                b,
                marker: Some(false),
            } => Next::Node(Count {
                a: a + 1,
                b,
                marker: None,
            }),
            Count {
                a,
                b,
                marker: Some(true),
            } if b + 1 == i => Next::Node(BetaKnown {
                q: bit,
                a,
                marker: None,
            }),
            Count {
                a,
                b,
                marker: Some(true),
            } => Next::Node(Count {
                a,
                b: b + 1,
                marker: None,
            }),
            AlphaKnown {
                q,
                b,
                marker: Some(false),
            } => Next::Node(AlphaKnown { q, b, marker: None }),
            AlphaKnown {
                q,
                b,
                marker: Some(true),
            } if b + 1 == i => {
                if q == bit {
                    Next::Node(Equal)
                } else {
                    Next::Sink(false)
                }
            }
            AlphaKnown {
                q,
                b,
                marker: Some(true),
            } => Next::Node(AlphaKnown {
                q,
                b: b + 1,
                marker: None,
            }),
            BetaKnown {
                q,
                a,
                marker: Some(true),
            } => Next::Node(BetaKnown { q, a, marker: None }),
            BetaKnown {
                q,
                a,
                marker: Some(false),
            } if a + 1 == i => {
                if q == bit {
                    Next::Node(Equal)
                } else {
                    Next::Sink(false)
                }
            }
            BetaKnown {
                q,
                a,
                marker: Some(false),
            } => Next::Node(BetaKnown {
                q,
                a: a + 1,
                marker: None,
            }),
            Length { a, marker: Some(false) } if a + 1 > quarter => Next::Sink(false),
            Length { a, marker: Some(false) } => Next::Node(Length { a: a + 1, marker: None }),
            Length { a, marker: Some(true) } => Next::Node(Length { a, marker: None }),
            Equal => Next::Node(Equal),
            _ => unreachable!("value position reached without a marker"),
        }
    };

    if pos == d {
        next = match next {
            Next::Node(Equal) => Next::Node(Equal),
            Next::Node(Length { a, .. }) if a == quarter => Next::Node(Equal),
            _ => Next::Sink(false),
        };
    }
    if pos == n {
        next = match next {
            Next::Node(Equal) if layer == d => Next::Sink(true),
            Next::Node(Equal) => Next::Node(layer_start(layer + 1, d)),
            other => other,
        };
    }
    next
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::all_inputs;

    #[test]
    fn matches_oracle_k4_n8() {
        let eqs = Eqs::new(4, 8).unwrap();
        let p = build_eqs(&eqs).unwrap();
        assert!(p.validate().is_empty());
        assert!(p.width() <= eqs_width_bound(4));
        for x in all_inputs(8) {
            assert_eq!(p.evaluate_bit(&x).unwrap(), eqs.eval(&x).unwrap());
        }
        assert!(!p.evaluate_bit(&[false; 8]).unwrap());
    }

    #[test]
    fn relaxed_k4_n4_and_k8_n12() {
        for (d, n) in [(4, 4), (4, 5), (8, 12)] {
            let eqs = Eqs::relaxed(d, n).unwrap();
            let p = build_eqs(&eqs).unwrap();
            for x in all_inputs(n) {
                assert_eq!(p.evaluate_bit(&x).unwrap(), eqs.eval(&x).unwrap(), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn counts_stay_below_layer_index() {
        let n = 12;
        let (p, labels) = build_eqs_annotated(&Eqs::relaxed(8, n).unwrap()).unwrap();
        for (li, level) in labels.iter().enumerate() {
            let layer = li / n + 1;
            assert_eq!(level.len(), p.levels()[li].nodes.len());
            for slot in level {
                if let Slot::Live(EqsState::Count { a, b, .. }) = slot {
                    assert!(*a < layer && *b < layer);
                }
            }
        }
    }

    #[test]
    fn deterministic_output() {
        let a = build_eqs_kobdd(4, 12).unwrap().to_bpv1();
        let b = build_eqs_kobdd(4, 12).unwrap().to_bpv1();
        assert_eq!(a, b);
    }
}
