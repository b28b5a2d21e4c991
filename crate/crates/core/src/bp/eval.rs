use num_traits::{One, Zero};

use super::{BranchingProgram, Mode};
use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

/// Classification of an acceptance probability against the error margin δ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Accept,
    Reject,
    /// Probability within `[1/2 - δ, 1/2 + δ]`.
    Undefined,
}

impl Outcome {
    pub fn classify(probability: &Rational, delta: &Rational) -> Outcome {
        let half = ratio(1, 2);
        if *probability > &half + delta {
            Outcome::Accept
        } else if *probability < &half - delta {
            Outcome::Reject
        } else {
            Outcome::Undefined
        }
    }

    pub fn as_bit(self) -> Option<bool> {
        match self {
            Outcome::Accept => Some(true),
            Outcome::Reject => Some(false),
            Outcome::Undefined => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalResult {
    Bit(bool),
    Probability { value: Rational, outcome: Outcome },
}

impl EvalResult {
    pub fn probabilistic(value: Rational, delta: &Rational) -> Self {
        let outcome = Outcome::classify(&value, delta);
        EvalResult::Probability { value, outcome }
    }

    /// The computed bit; `None` for an undefined probabilistic outcome.
    pub fn as_bit(&self) -> Option<bool> {
        match self {
            EvalResult::Bit(b) => Some(*b),
            EvalResult::Probability { outcome, .. } => outcome.as_bit(),
        }
    }

    pub fn probability(&self) -> Option<&Rational> {
        match self {
            EvalResult::Probability { value, .. } => Some(value),
            EvalResult::Bit(_) => None,
        }
    }
}

impl BranchingProgram {
    /// Evaluate on `input` (`input[j - 1]` is `x_j`).
    pub fn evaluate(&self, input: &[bool]) -> Result<EvalResult> {
        self.ensure_valid()?;
        if input.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: input.len(),
            });
        }
        Ok(match self.mode {
            Mode::Deterministic => EvalResult::Bit(self.follow_path(input)),
            Mode::Nondeterministic => {
                let reach = self.reach(1, vec![true], self.sink_level(), |v| input[v - 1]);
                EvalResult::Bit(reach[self.sinks.one.index])
            }
            Mode::Probabilistic => {
                let dist = self.propagate(1, vec![Rational::one()], self.sink_level(), |v| input[v - 1]);
                let delta = self.delta.clone().expect("validated probabilistic program");
                EvalResult::probabilistic(dist[self.sinks.one.index].clone(), &delta)
            }
        })
    }

    /// Evaluate and reduce to a bit; undefined probabilistic outcomes are errors.
    pub fn evaluate_bit(&self, input: &[bool]) -> Result<bool> {
        self.evaluate(input)?
            .as_bit()
            .ok_or_else(|| Error::UndefinedOutcome(crate::bits::format_bits(input)))
    }

    fn follow_path(&self, input: &[bool]) -> bool {
        let mut cur = 0;
        for level in &self.levels {
            cur = level.nodes[cur].edges(input[level.var - 1])[0].target.index;
        }
        cur == self.sinks.one.index
    }

    /// Reachable-set propagation from `start` (a set over level `from`) to
    /// level `to`. Only the variables read on levels `from..to` are queried.
    pub fn reach(&self, from: usize, start: Vec<bool>, to: usize, bit_of: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut cur = start;
        for lnum in from..to {
            let level = self.level(lnum);
            let bit = bit_of(level.var);
            let mut next = vec![false; self.level_size(lnum + 1)];
            for (node, _) in level.nodes.iter().zip(&cur).filter(|(_, &on)| on) {
                for e in node.edges(bit) {
                    next[e.target.index] = true;
                }
            }
            cur = next;
        }
        cur
    }

    /// Weighted propagation from `start` (weights over level `from`) to level
    /// `to`. Deterministic and nondeterministic edges weigh 1, so the result
    /// counts consistent paths; probabilistic edges weigh their probability.
    pub fn propagate(
        &self,
        from: usize,
        start: Vec<Rational>,
        to: usize,
        bit_of: impl Fn(usize) -> bool,
    ) -> Vec<Rational> {
        let mut cur = start;
        for lnum in from..to {
            let level = self.level(lnum);
            let bit = bit_of(level.var);
            let mut next = vec![Rational::zero(); self.level_size(lnum + 1)];
            for (node, w) in level.nodes.iter().zip(&cur) {
                if w.is_zero() {
                    continue;
                }
                for e in node.edges(bit) {
                    match &e.prob {
                        Some(p) => next[e.target.index] += w * p,
                        None => next[e.target.index] += w,
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// Truth table of the computed function in big-endian input order.
    /// Fails on undefined probabilistic outcomes.
    pub fn truth_table(&self) -> Result<crate::functions::TruthTable> {
        crate::functions::TruthTable::try_from_fn(self.n, |x| self.evaluate_bit(x))
    }
}
