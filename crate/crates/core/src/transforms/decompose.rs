use super::traces::{enumerate_traces, reject_probabilistic, Trace};
use crate::bp::{BranchingProgram, Edge, Level, Node, NodeId, Sinks};
use crate::error::{Error, Result};

/// `g = OR over traces T of AND over layers i of g_{m_i, m_{i+1}}`, each
/// factor a single-layer program of width at most `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub k: usize,
    pub traces: Vec<Trace>,
    /// `terms[j][i]` is layer `i + 1` of `traces[j]`.
    pub terms: Vec<Vec<BranchingProgram>>,
}

impl Decomposition {
    pub fn eval(&self, input: &[bool]) -> Result<bool> {
        if input.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: input.len(),
            });
        }
        for term in &self.terms {
            let mut all = true;
            for prog in term {
                if !prog.evaluate_bit(input)? {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Largest factor width.
    pub fn max_term_width(&self) -> usize {
        self.terms
            .iter()
            .flatten()
            .map(BranchingProgram::width)
            .max()
            .unwrap_or(0)
    }
}

pub fn decompose(p: &BranchingProgram) -> Result<Decomposition> {
    let traces = enumerate_traces(p)?;
    let terms = traces
        .iter()
        .map(|t| {
            (1..=p.k())
                .map(|i| layer_program(p, i, t.nodes[i - 1], t.nodes[i]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition {
        n: p.n(),
        k: p.k(),
        traces,
        terms,
    })
}

/// Layer `layer` of `p` started at `from` (a node on the layer's first level)
/// and accepting exactly when it ends in `to` (a node on the level after the
/// layer). Only nodes reachable from `from` are kept.
pub fn layer_program(p: &BranchingProgram, layer: usize, from: NodeId, to: NodeId) -> Result<BranchingProgram> {
    reject_probabilistic(p)?;
    let n = p.n();
    let first = p.layer_start(layer);
    if from.level != first || to.level != first + n {
        return Err(Error::Param(format!("{from} and {to} do not delimit layer {layer}")));
    }
    // Reachable sets and renumbering per level of the layer.
    let mut maps: Vec<Vec<Option<usize>>> = Vec::with_capacity(n);
    let mut cur = vec![false; p.level_size(first)];
    cur[from.index] = true;
    for lnum in first..first + n {
        let mut count = 0;
        maps.push(
            cur.iter()
                .map(|&on| {
                    on.then(|| {
                        count += 1;
                        count - 1
                    })
                })
                .collect(),
        );
        let mut next = vec![false; p.level_size(lnum + 1)];
        for (node, _) in p.level(lnum).nodes.iter().zip(&cur).filter(|(_, &on)| on) {
            for e in node.edges[0].iter().chain(&node.edges[1]) {
                next[e.target.index] = true;
            }
        }
        cur = next;
    }

    let sinks = Sinks {
        zero: NodeId::new(n + 1, 0),
        one: NodeId::new(n + 1, 1),
    };
    let mut levels = Vec::with_capacity(n);
    for (off, lnum) in (first..first + n).enumerate() {
        let level = p.level(lnum);
        let mut nodes = Vec::new();
        for (idx, node) in level.nodes.iter().enumerate() {
            if maps[off][idx].is_none() {
                continue;
            }
            let map_edges = |edges: &[Edge]| -> Vec<Edge> {
                let mut out: Vec<Edge> = Vec::with_capacity(edges.len());
                for e in edges {
                    let target = if off + 1 == n {
                        if e.target == to {
                            sinks.one
                        } else {
                            sinks.zero
                        }
                    } else {
                        NodeId::new(off + 2, maps[off + 1][e.target.index].expect("reachable"))
                    };
                    if !out.iter().any(|x| x.target == target) {
                        out.push(Edge::to(target));
                    }
                }
                out
            };
            nodes.push(Node::new(map_edges(&node.edges[0]), map_edges(&node.edges[1])));
        }
        levels.push(Level { var: level.var, nodes });
    }
    BranchingProgram::new(n, 1, p.mode(), p.order().to_vec(), levels, sinks, None)
}
