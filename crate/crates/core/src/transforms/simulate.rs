use indexmap::IndexSet;

use super::traces::{enumerate_traces, Trace};
use crate::bp::{BranchingProgram, Edge, Level, Mode, Node, NodeId, Sinks};
use crate::error::Result;

/// Output of [`simulate_as_nobdd`].
#[derive(Clone, Debug)]
pub struct Simulation {
    pub program: BranchingProgram,
    pub traces: Vec<Trace>,
    /// Width of the full product `|TR| · |V_i| · |V_{n+i}| ⋯` before
    /// unreachable states are dropped, maximized over levels (sink level
    /// included).
    pub construction_width: usize,
}

/// One-layer nondeterministic program equivalent to `p`.
///
/// The source guesses a trace `T`; the branch for `T` runs all `k` layers in
/// parallel from `(m_1, …, m_k)` and accepts iff it ends in
/// `(m_2, …, m_{k+1})`. States are `(trace, k-tuple)`; only reachable ones
/// are materialized.
pub fn simulate_as_nobdd(p: &BranchingProgram) -> Result<Simulation> {
    let traces = enumerate_traces(p)?;
    let n = p.n();
    let k = p.k();
    let sinks = Sinks {
        zero: NodeId::new(n + 1, 0),
        one: NodeId::new(n + 1, 1),
    };

    let mut construction_width = 2;
    for pos in 2..=n {
        let product: usize = (0..k).map(|i| p.level_size(i * n + pos)).product();
        construction_width = construction_width.max(traces.len() * product);
    }

    type State = (usize, Vec<usize>);
    // Successor tuples of `tuple` (component i on level i·n + pos) under `bit`.
    let successors = |pos: usize, tuple: &[usize], bit: bool| -> Vec<Vec<usize>> {
        let mut acc: Vec<Vec<usize>> = vec![Vec::with_capacity(k)];
        for (i, &idx) in tuple.iter().enumerate() {
            let node = &p.level(i * n + pos).nodes[idx];
            let mut next = Vec::new();
            for prefix in &acc {
                for e in node.edges(bit) {
                    let mut t = prefix.clone();
                    t.push(e.target.index);
                    next.push(t);
                }
            }
            acc = next;
        }
        acc.sort();
        acc.dedup();
        acc
    };

    let mut levels = Vec::with_capacity(n);
    let mut current: IndexSet<State> = IndexSet::new();
    for pos in 1..=n {
        let var = p.order()[pos - 1];
        let mut next: IndexSet<State> = IndexSet::new();
        let edges_for = |states: &[State], bit: bool, next: &mut IndexSet<State>| -> Vec<Edge> {
            let mut out: Vec<NodeId> = Vec::new();
            for (j, tuple) in states {
                for succ in successors(pos, tuple, bit) {
                    let target = if pos == n {
                        let goal: Vec<usize> = traces[*j].nodes[1..].iter().map(|m| m.index).collect();
                        if succ == goal {
                            sinks.one
                        } else {
                            sinks.zero
                        }
                    } else {
                        NodeId::new(pos + 1, next.insert_full((*j, succ)).0)
                    };
                    if !out.contains(&target) {
                        out.push(target);
                    }
                }
            }
            out.into_iter().map(Edge::to).collect()
        };
        let nodes = if pos == 1 {
            let starts: Vec<State> = traces
                .iter()
                .enumerate()
                .map(|(j, t)| (j, t.nodes[..k].iter().map(|m| m.index).collect()))
                .collect();
            let zero = edges_for(&starts, false, &mut next);
            let one = edges_for(&starts, true, &mut next);
            vec![Node::new(zero, one)]
        } else {
            current
                .iter()
                .map(|s| {
                    let single = std::slice::from_ref(s);
                    let zero = edges_for(single, false, &mut next);
                    let one = edges_for(single, true, &mut next);
                    Node::new(zero, one)
                })
                .collect()
        };
        levels.push(Level { var, nodes });
        current = next;
    }

    let program = BranchingProgram::new(n, 1, Mode::Nondeterministic, p.order().to_vec(), levels, sinks, None)?;
    Ok(Simulation {
        program,
        traces,
        construction_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::all_inputs;
    use crate::constructions::build_eqs_kobdd;
    use crate::transforms::decompose;

    #[test]
    fn eqs_simulation() {
        let p = build_eqs_kobdd(4, 8).unwrap();
        let sim = simulate_as_nobdd(&p).unwrap();
        assert!(sim.program.validate().is_empty());
        for x in all_inputs(8) {
            assert_eq!(sim.program.evaluate_bit(&x).unwrap(), p.evaluate_bit(&x).unwrap());
        }
        // Decomposing the one-layer result again gives a single trace.
        let d = decompose(&sim.program).unwrap();
        assert_eq!(d.traces.len(), 1);
        for x in all_inputs(8) {
            assert_eq!(d.eval(&x).unwrap(), p.evaluate_bit(&x).unwrap());
        }
    }
}
