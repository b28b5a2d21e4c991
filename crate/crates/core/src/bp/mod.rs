//! Leveled oblivious branching programs in deterministic, nondeterministic and
//! probabilistic mode.
//!
//! A program over `n` variables with `k` layers has `k·n` inner levels followed
//! by a sink level holding exactly the 0-sink and the 1-sink. Levels are
//! numbered from 1; nodes are numbered from 0 within their level. Level `L`
//! reads variable `order[(L - 1) mod n]`, so every layer reads the variables
//! in the same order.

mod eval;
pub(crate) mod format;
mod validate;

use std::fmt;
use std::sync::OnceLock;

pub use eval::{EvalResult, Outcome};
pub use validate::{ValidationReport, Violation, ViolationKind};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Edge multiplicity regime of a program.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Deterministic,
    Nondeterministic,
    Probabilistic,
}

impl Mode {
    /// Short name used by the text formats (`det`, `nd`, `prob`).
    pub fn tag(self) -> &'static str {
        match self {
            Mode::Deterministic => "det",
            Mode::Nondeterministic => "nd",
            Mode::Probabilistic => "prob",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Mode> {
        match tag {
            "det" => Some(Mode::Deterministic),
            "nd" => Some(Mode::Nondeterministic),
            "prob" => Some(Mode::Probabilistic),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `(level, ordinal)` address of a node. Levels are 1-based, ordinals 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId {
    pub level: usize,
    pub index: usize,
}

impl NodeId {
    pub fn new(level: usize, index: usize) -> Self {
        NodeId { level, index }
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.index)
    }
}

/// An outgoing edge. `prob` is present exactly in probabilistic programs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub target: NodeId,
    pub prob: Option<Rational>,
}

impl Edge {
    pub fn to(target: NodeId) -> Self {
        Edge { target, prob: None }
    }

    pub fn with_prob(target: NodeId, prob: Rational) -> Self {
        Edge {
            target,
            prob: Some(prob),
        }
    }
}

/// Inner node: outgoing edges for `x = 0` and `x = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Node {
    pub edges: [Vec<Edge>; 2],
}

impl Node {
    pub fn new(zero: Vec<Edge>, one: Vec<Edge>) -> Self {
        Node { edges: [zero, one] }
    }

    pub fn edges(&self, bit: bool) -> &[Edge] {
        &self.edges[bit as usize]
    }
}

/// One inner level: the variable it reads and its nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub var: usize,
    pub nodes: Vec<Node>,
}

/// Positions of the two sinks inside the sink level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sinks {
    pub zero: NodeId,
    pub one: NodeId,
}

/// Number of nodes on the sink level.
pub const SINK_LEVEL_SIZE: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metrics {
    pub width: usize,
    pub size: usize,
    pub length: usize,
}

/// A leveled, oblivious k-layer program. Immutable once built.
#[derive(Clone, Debug)]
pub struct BranchingProgram {
    n: usize,
    k: usize,
    mode: Mode,
    order: Vec<usize>,
    levels: Vec<Level>,
    sinks: Sinks,
    delta: Option<Rational>,
    validity: OnceLock<bool>,
}

impl PartialEq for BranchingProgram {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.mode == other.mode
            && self.order == other.order
            && self.levels == other.levels
            && self.sinks == other.sinks
            && self.delta == other.delta
    }
}

impl Eq for BranchingProgram {}

impl BranchingProgram {
    /// Assemble a program without checking any invariant. Use
    /// [`BranchingProgram::validate`] to obtain the list of violations.
    pub fn from_parts(
        n: usize,
        k: usize,
        mode: Mode,
        order: Vec<usize>,
        levels: Vec<Level>,
        sinks: Sinks,
        delta: Option<Rational>,
    ) -> Self {
        BranchingProgram {
            n,
            k,
            mode,
            order,
            levels,
            sinks,
            delta,
            validity: OnceLock::new(),
        }
    }

    /// Assemble and validate.
    pub fn new(
        n: usize,
        k: usize,
        mode: Mode,
        order: Vec<usize>,
        levels: Vec<Level>,
        sinks: Sinks,
        delta: Option<Rational>,
    ) -> Result<Self> {
        Self::from_parts(n, k, mode, order, levels, sinks, delta).checked()
    }

    /// Return `self` if it is well formed, otherwise the violations.
    pub fn checked(self) -> Result<Self> {
        let report = self.validate();
        if report.is_empty() {
            let _ = self.validity.set(true);
            Ok(self)
        } else {
            let _ = self.validity.set(false);
            Err(Error::InvalidProgram(report.to_string()))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The shared variable order θ, 1-based variable indices.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Inner levels; `levels()[L - 1]` is level `L`.
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, level: usize) -> &Level {
        &self.levels[level - 1]
    }

    pub fn sinks(&self) -> Sinks {
        self.sinks
    }

    pub fn delta(&self) -> Option<&Rational> {
        self.delta.as_ref()
    }

    /// Number of the sink level, `k·n + 1`.
    pub fn sink_level(&self) -> usize {
        self.k * self.n + 1
    }

    /// Node count of level `level`, sink level included.
    pub fn level_size(&self, level: usize) -> usize {
        if level == self.sink_level() {
            SINK_LEVEL_SIZE
        } else {
            self.levels.get(level - 1).map_or(0, |l| l.nodes.len())
        }
    }

    /// First level of layer `layer` (1-based layer index).
    pub fn layer_start(&self, layer: usize) -> usize {
        (layer - 1) * self.n + 1
    }

    pub fn source(&self) -> NodeId {
        NodeId::new(1, 0)
    }

    pub fn metrics(&self) -> Metrics {
        let inner = self.levels.iter().map(|l| l.nodes.len());
        Metrics {
            width: inner.clone().chain([SINK_LEVEL_SIZE]).max().unwrap_or(0),
            size: inner.sum::<usize>() + SINK_LEVEL_SIZE,
            length: self.n * self.k,
        }
    }

    pub fn width(&self) -> usize {
        self.metrics().width
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let ok = *self.validity.get_or_init(|| self.validate().is_empty());
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidProgram(self.validate().to_string()))
        }
    }

    /// The same program with the 0-sink and 1-sink exchanged.
    pub fn with_swapped_sinks(&self) -> Self {
        let mut p = self.clone();
        p.sinks = Sinks {
            zero: self.sinks.one,
            one: self.sinks.zero,
        };
        p.validity = OnceLock::new();
        p
    }
}
