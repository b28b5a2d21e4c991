use std::fmt;

use num_traits::{One, Signed};

use super::{BranchingProgram, Mode, SINK_LEVEL_SIZE};
use crate::rational::{ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    Header,
    Order,
    Leveled,
    Oblivious,
    Ordered,
    Source,
    Sinks,
    EdgeMultiplicity,
    ProbabilityAnnotation,
    ProbabilitySum,
    Delta,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::Header => "header",
            ViolationKind::Order => "order",
            ViolationKind::Leveled => "leveled",
            ViolationKind::Oblivious => "oblivious",
            ViolationKind::Ordered => "ordered",
            ViolationKind::Source => "source",
            ViolationKind::Sinks => "sinks",
            ViolationKind::EdgeMultiplicity => "edge-multiplicity",
            ViolationKind::ProbabilityAnnotation => "probability-annotation",
            ViolationKind::ProbabilitySum => "probability-sum",
            ViolationKind::Delta => "delta",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Level the violation was found on, if it is local to one level.
    pub level: Option<usize>,
    pub message: String,
}

/// All invariant violations of a program; empty iff the program is well formed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, level: Option<usize>, message: String) {
        self.violations.push(Violation { kind, level, message });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            match v.level {
                Some(l) => write!(f, "{} at level {}: {}", v.kind.name(), l, v.message)?,
                None => write!(f, "{}: {}", v.kind.name(), v.message)?,
            }
        }
        Ok(())
    }
}

impl BranchingProgram {
    /// Check every structural invariant and report all violations.
    pub fn validate(&self) -> ValidationReport {
        use ViolationKind::*;
        let mut report = ValidationReport::default();
        let n = self.n;
        let k = self.k;

        if n == 0 {
            report.push(Header, None, "n must be at least 1".into());
        }
        if k == 0 {
            report.push(Header, None, "k must be at least 1".into());
        }

        let mut seen = vec![false; n + 1];
        let mut permutation = self.order.len() == n;
        for &v in &self.order {
            if v == 0 || v > n || seen[v] {
                permutation = false;
            } else {
                seen[v] = true;
            }
        }
        if !permutation {
            report.push(
                Order,
                None,
                format!("order {:?} is not a permutation of 1..{n}", self.order),
            );
        }

        if self.levels.len() != k * n {
            report.push(
                Leveled,
                None,
                format!("expected {} inner levels, found {}", k * n, self.levels.len()),
            );
        }

        match self.levels.first() {
            Some(l) if l.nodes.len() == 1 => {}
            Some(l) => report.push(
                Source,
                Some(1),
                format!("level 1 must hold exactly the source, found {} nodes", l.nodes.len()),
            ),
            None => report.push(Source, None, "program has no levels".into()),
        }

        let sink_level = self.levels.len() + 1;
        let sinks = &self.sinks;
        for (name, id) in [("zero", sinks.zero), ("one", sinks.one)] {
            if id.level != sink_level || id.index >= SINK_LEVEL_SIZE {
                report.push(
                    Sinks,
                    None,
                    format!("{name}-sink {id} is not on the sink level {sink_level}"),
                );
            }
        }
        if sinks.zero == sinks.one {
            report.push(Sinks, None, "0-sink and 1-sink coincide".into());
        }

        for (li, level) in self.levels.iter().enumerate() {
            let lnum = li + 1;
            if level.var == 0 || level.var > n {
                report.push(
                    Oblivious,
                    Some(lnum),
                    format!("level reads variable {} outside 1..{n}", level.var),
                );
            } else if permutation && n > 0 && level.var != self.order[li % n] {
                report.push(
                    Ordered,
                    Some(lnum),
                    format!(
                        "level reads x{} but the order prescribes x{}",
                        level.var,
                        self.order[li % n]
                    ),
                );
            }
            let next_size = if lnum == self.levels.len() {
                SINK_LEVEL_SIZE
            } else {
                self.levels[lnum].nodes.len()
            };
            for (ni, node) in level.nodes.iter().enumerate() {
                for bit in 0..2 {
                    let edges = &node.edges[bit];
                    if self.mode == Mode::Deterministic && edges.len() != 1 {
                        report.push(
                            EdgeMultiplicity,
                            Some(lnum),
                            format!(
                                "node {ni} has {} edges for bit {bit}, deterministic needs exactly 1",
                                edges.len()
                            ),
                        );
                    }
                    for e in edges {
                        if e.target.level != lnum + 1 || e.target.index >= next_size {
                            report.push(
                                Leveled,
                                Some(lnum),
                                format!("node {ni} bit {bit} targets {} outside level {}", e.target, lnum + 1),
                            );
                        }
                        match (&e.prob, self.mode) {
                            (None, Mode::Probabilistic) => report.push(
                                ProbabilityAnnotation,
                                Some(lnum),
                                format!("node {ni} bit {bit} has an edge without probability"),
                            ),
                            (Some(_), Mode::Deterministic | Mode::Nondeterministic) => report.push(
                                ProbabilityAnnotation,
                                Some(lnum),
                                format!("node {ni} bit {bit} carries a probability in {} mode", self.mode),
                            ),
                            (Some(p), Mode::Probabilistic) if p.is_negative() => report.push(
                                ProbabilityAnnotation,
                                Some(lnum),
                                format!("node {ni} bit {bit} has negative probability"),
                            ),
                            _ => {}
                        }
                    }
                    if self.mode == Mode::Probabilistic {
                        let sum: Rational = edges.iter().filter_map(|e| e.prob.clone()).sum();
                        if !sum.is_one() {
                            report.push(
                                ProbabilitySum,
                                Some(lnum),
                                format!("node {ni} bit {bit} probabilities sum to {sum}, not 1"),
                            );
                        }
                    }
                }
            }
        }

        match (&self.delta, self.mode) {
            (Some(d), Mode::Probabilistic) => {
                if !(d.is_positive() && *d < ratio(1, 2)) {
                    report.push(Delta, None, format!("error margin {d} outside (0, 1/2)"));
                }
            }
            (None, Mode::Probabilistic) => {
                report.push(Delta, None, "probabilistic program needs an error margin".into())
            }
            (Some(_), _) => report.push(
                Delta,
                None,
                "error margin is only meaningful in probabilistic mode".into(),
            ),
            (None, _) => {}
        }
        report
    }
}
