use crate::bp::{BranchingProgram, Mode, NodeId};
use crate::error::{Error, Result};

/// Boundary nodes `m_1, …, m_{k+1}`: the source, one node on the first level
/// of each layer `2..=k`, and the 1-sink.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Trace {
    pub nodes: Vec<NodeId>,
}

pub(crate) fn reject_probabilistic(p: &BranchingProgram) -> Result<()> {
    if p.mode() == Mode::Probabilistic {
        return Err(Error::UnsupportedMode("probabilistic"));
    }
    p.ensure_valid()
}

/// Nodes of level `to` reachable from `from_node` through any edges.
pub(crate) fn graph_reach(p: &BranchingProgram, from_node: NodeId, to: usize) -> Vec<bool> {
    let mut cur = vec![false; p.level_size(from_node.level)];
    cur[from_node.index] = true;
    for lnum in from_node.level..to {
        let mut next = vec![false; p.level_size(lnum + 1)];
        for (node, _) in p.level(lnum).nodes.iter().zip(&cur).filter(|(_, &on)| on) {
            for e in node.edges[0].iter().chain(&node.edges[1]) {
                next[e.target.index] = true;
            }
        }
        cur = next;
    }
    cur
}

/// All traces whose consecutive boundary nodes are connected inside their
/// layer. Traces failing this contribute constant-0 disjuncts and are
/// skipped. Ordered lexicographically by boundary node ordinals.
pub fn enumerate_traces(p: &BranchingProgram) -> Result<Vec<Trace>> {
    reject_probabilistic(p)?;
    let k = p.k();
    let boundary = |layer: usize| -> usize {
        if layer > k {
            p.sink_level()
        } else {
            p.layer_start(layer)
        }
    };
    let mut out = Vec::new();
    let mut stack = vec![vec![p.source()]];
    while let Some(prefix) = stack.pop() {
        let layer = prefix.len();
        let last = *prefix.last().unwrap();
        let reach = graph_reach(p, last, boundary(layer + 1));
        if layer == k {
            if reach[p.sinks().one.index] {
                let mut nodes = prefix;
                nodes.push(p.sinks().one);
                out.push(Trace { nodes });
            }
            continue;
        }
        let lvl = boundary(layer + 1);
        for idx in (0..reach.len()).rev().filter(|&i| reach[i]) {
            let mut next = prefix.clone();
            next.push(NodeId::new(lvl, idx));
            stack.push(next);
        }
    }
    Ok(out)
}
