//! Forward construction of deterministic layered programs from a transition
//! function over abstract states.

use std::hash::Hash;

use indexmap::IndexSet;

use crate::bp::{BranchingProgram, Edge, Level, Mode, Node, NodeId, Sinks};
use crate::error::{param, Result};

/// Result of one transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Next<S> {
    Node(S),
    /// Decided early. The value falls through single-node chains to its sink.
    Sink(bool),
}

/// A node label: a live state or an already decided value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Slot<S> {
    Live(S),
    Done(bool),
}

/// Build a deterministic k-layer program in order `order`.
///
/// `step(level, state, bit)` gives the successor of `state` on level `level`
/// (1-based) when the variable of that level is `bit`. On the last level
/// every transition must return [`Next::Sink`]. Nodes are created in
/// breadth-first discovery order, so the output depends only on `step`.
pub fn build_layered<S, F>(n: usize, k: usize, order: Vec<usize>, start: S, step: F) -> Result<BranchingProgram>
where
    S: Clone + Eq + Hash,
    F: FnMut(usize, &S, bool) -> Next<S>,
{
    build_layered_annotated(n, k, order, start, step).map(|(p, _)| p)
}

/// [`build_layered`] that also returns the label of every inner node,
/// `labels[L - 1][i]` for node `(L, i)`.
pub fn build_layered_annotated<S, F>(
    n: usize,
    k: usize,
    order: Vec<usize>,
    start: S,
    mut step: F,
) -> Result<(BranchingProgram, Vec<Vec<Slot<S>>>)>
where
    S: Clone + Eq + Hash,
    F: FnMut(usize, &S, bool) -> Next<S>,
{
    if n == 0 || k == 0 {
        return param("n and k must be positive");
    }
    if order.len() != n {
        return param("order length differs from n");
    }
    let total = n * k;
    let sink_level = total + 1;
    let sinks = Sinks {
        zero: NodeId::new(sink_level, 0),
        one: NodeId::new(sink_level, 1),
    };
    let mut current: IndexSet<Slot<S>> = IndexSet::new();
    current.insert(Slot::Live(start));
    let mut levels = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);

    for lnum in 1..=total {
        let last = lnum == total;
        let mut next: IndexSet<Slot<S>> = IndexSet::new();
        let mut nodes = Vec::with_capacity(current.len());
        for slot in &current {
            let mut targets = [NodeId::new(0, 0); 2];
            for bit in [false, true] {
                let succ = match slot {
                    Slot::Done(v) => Next::Sink(*v),
                    Slot::Live(s) => step(lnum, s, bit),
                };
                targets[bit as usize] = match (succ, last) {
                    (Next::Sink(v), true) => {
                        if v {
                            sinks.one
                        } else {
                            sinks.zero
                        }
                    }
                    (Next::Sink(v), false) => NodeId::new(lnum + 1, next.insert_full(Slot::Done(v)).0),
                    (Next::Node(s), false) => NodeId::new(lnum + 1, next.insert_full(Slot::Live(s)).0),
                    (Next::Node(_), true) => {
                        return param(format!("transition on the last level {lnum} must reach a sink"))
                    }
                };
            }
            nodes.push(Node::new(vec![Edge::to(targets[0])], vec![Edge::to(targets[1])]));
        }
        levels.push(Level {
            var: order[(lnum - 1) % n],
            nodes,
        });
        labels.push(current.into_iter().collect());
        current = next;
    }
    let p = BranchingProgram::new(n, k, Mode::Deterministic, order, levels, sinks, None)?;
    Ok((p, labels))
}
