//! Seeded random programs and inputs.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::bp::{BranchingProgram, Edge, Level, Mode, Node, NodeId, Sinks};
use crate::error::{param, Result};
use crate::rational::{ratio, Rational};

/// Shape of a random program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    pub k: usize,
    /// Maximum inner level size.
    pub w: usize,
    pub mode: Mode,
    /// Error margin of probabilistic programs; 1/4 when absent.
    pub delta: Option<Rational>,
    /// Shuffle the variable order instead of using `1..=n`.
    pub random_order: bool,
}

impl GenConfig {
    pub fn new(mode: Mode, n: usize, k: usize, w: usize) -> Self {
        GenConfig {
            n,
            k,
            w,
            mode,
            delta: None,
            random_order: true,
        }
    }
}

pub fn random_input<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.gen()).collect()
}

pub fn random_order<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    order
}

/// A small transition weight, `2^-20`.
pub fn tiny_weight() -> Rational {
    ratio(1, 1 << 20)
}

fn random_distribution<R: Rng + ?Sized>(rng: &mut R, level: usize, next_size: usize) -> Vec<Edge> {
    let mut targets: Vec<usize> = (0..next_size).collect();
    targets.shuffle(rng);
    let support = rng.gen_range(1..=next_size.min(3));
    let counts: Vec<i64> = (0..support).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = counts.iter().sum();
    let tiny = support < next_size && rng.gen_ratio(1, 8);
    let scale = if tiny {
        Rational::one() - tiny_weight()
    } else {
        Rational::one()
    };
    let mut edges: Vec<Edge> = counts
        .iter()
        .zip(&targets)
        .map(|(&c, &t)| Edge::with_prob(NodeId::new(level + 1, t), ratio(c, total) * &scale))
        .collect();
    if tiny {
        edges.push(Edge::with_prob(NodeId::new(level + 1, targets[support]), tiny_weight()));
    }
    edges
}

fn random_edges<R: Rng + ?Sized>(rng: &mut R, mode: Mode, level: usize, next_size: usize) -> Vec<Edge> {
    let to = |i| NodeId::new(level + 1, i);
    match mode {
        Mode::Deterministic => vec![Edge::to(to(rng.gen_range(0..next_size)))],
        Mode::Nondeterministic => {
            if rng.gen_ratio(1, 8) {
                return Vec::new();
            }
            let mut edges: Vec<Edge> = (0..next_size).filter(|_| rng.gen()).map(|i| Edge::to(to(i))).collect();
            if edges.is_empty() {
                edges.push(Edge::to(to(rng.gen_range(0..next_size))));
            }
            edges
        }
        Mode::Probabilistic => random_distribution(rng, level, next_size),
    }
}

/// Random valid program. Inner levels hold between 1 and `w` nodes; level 1
/// holds only the source.
pub fn random_program<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig) -> Result<BranchingProgram> {
    if cfg.n == 0 || cfg.k == 0 || cfg.w == 0 {
        return param("n, k and w must be positive");
    }
    let total = cfg.n * cfg.k;
    let order = if cfg.random_order {
        random_order(rng, cfg.n)
    } else {
        (1..=cfg.n).collect()
    };
    let mut sizes = vec![1];
    sizes.extend((1..total).map(|_| rng.gen_range(1..=cfg.w)));
    sizes.push(2);
    let levels = (1..=total)
        .map(|l| Level {
            var: order[(l - 1) % cfg.n],
            nodes: (0..sizes[l - 1])
                .map(|_| {
                    let zero = random_edges(rng, cfg.mode, l, sizes[l]);
                    let one = random_edges(rng, cfg.mode, l, sizes[l]);
                    Node::new(zero, one)
                })
                .collect(),
        })
        .collect();
    let sinks = Sinks {
        zero: NodeId::new(total + 1, 0),
        one: NodeId::new(total + 1, 1),
    };
    let delta = (cfg.mode == Mode::Probabilistic).then(|| cfg.delta.clone().unwrap_or_else(|| ratio(1, 4)));
    BranchingProgram::new(cfg.n, cfg.k, cfg.mode, order, levels, sinks, delta)
}

/// Random probabilistic program with a defined outcome on every input: a
/// random deterministic program whose edges leak a small probability to
/// other nodes. Needs `n <= 16` for the exhaustive check.
pub fn bounded_error_program<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig) -> Result<BranchingProgram> {
    if cfg.n > 16 {
        return param("bounded-error generation checks all inputs and needs n <= 16");
    }
    let det = random_program(
        rng,
        &GenConfig {
            mode: Mode::Deterministic,
            ..cfg.clone()
        },
    )?;
    let delta = cfg.delta.clone().unwrap_or_else(|| ratio(1, 4));
    let leaks = [ratio(1, 64), ratio(1, 256), tiny_weight()];
    for _ in 0..1000 {
        let levels = det
            .levels()
            .iter()
            .enumerate()
            .map(|(li, level)| {
                let next_size = det.level_size(li + 2);
                Level {
                    var: level.var,
                    nodes: level
                        .nodes
                        .iter()
                        .map(|node| {
                            let leak_edges = |edges: &[Edge], rng: &mut R| {
                                let main = edges[0].target;
                                if next_size < 2 || rng.gen_bool(0.5) {
                                    return vec![Edge::with_prob(main, Rational::one())];
                                }
                                let eps = leaks.choose(rng).unwrap().clone();
                                let other = loop {
                                    let i = rng.gen_range(0..next_size);
                                    if i != main.index {
                                        break i;
                                    }
                                };
                                vec![
                                    Edge::with_prob(main, Rational::one() - &eps),
                                    Edge::with_prob(NodeId::new(main.level, other), eps),
                                ]
                            };
                            let zero = leak_edges(&node.edges[0], rng);
                            let one = leak_edges(&node.edges[1], rng);
                            Node::new(zero, one)
                        })
                        .collect(),
                }
            })
            .collect();
        let p = BranchingProgram::new(
            det.n(),
            det.k(),
            Mode::Probabilistic,
            det.order().to_vec(),
            levels,
            det.sinks(),
            Some(delta.clone()),
        )?;
        if p.truth_table().is_ok() {
            return Ok(p);
        }
    }
    param("no bounded-error program found")
}

/// Sum of probabilities of a `(node, bit)` pair; useful in tests.
pub fn edge_mass(edges: &[Edge]) -> Rational {
    edges.iter().fold(Rational::zero(), |acc, e| {
        acc + e.prob.clone().unwrap_or_else(Rational::one)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_programs_are_valid_and_seeded() {
        for mode in [Mode::Deterministic, Mode::Nondeterministic, Mode::Probabilistic] {
            let cfg = GenConfig::new(mode, 5, 3, 3);
            let a = random_program(&mut ChaCha8Rng::seed_from_u64(5), &cfg).unwrap();
            let b = random_program(&mut ChaCha8Rng::seed_from_u64(5), &cfg).unwrap();
            assert_eq!(a.to_bpv1(), b.to_bpv1());
            assert!(a.validate().is_empty());
            assert!(a.width() <= 3);
        }
    }

    #[test]
    fn bounded_error_is_total() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cfg = GenConfig::new(Mode::Probabilistic, 4, 2, 2);
        let p = bounded_error_program(&mut rng, &cfg).unwrap();
        assert!(p.truth_table().is_ok());
        for level in p.levels() {
            for node in &level.nodes {
                assert_eq!(edge_mass(&node.edges[0]), Rational::one());
            }
        }
    }
}
