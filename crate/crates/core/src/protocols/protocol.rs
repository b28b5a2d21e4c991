use num_traits::{One, Signed, Zero};

use crate::analysis::Partition;
use crate::bp::{EvalResult, Mode};
use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    A,
    B,
}

impl Player {
    /// Owner of round `j` (1-based): A on odd rounds, B on even ones.
    pub fn of_round(j: usize) -> Player {
        if j % 2 == 1 {
            Player::A
        } else {
            Player::B
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Player::A => "A",
            Player::B => "B",
        }
    }
}

/// Transition table of round `j >= 2`: `table[x][m][m']` is the weight of
/// sending `m'` after receiving `m` when the owner's input has index `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub owner: Player,
    pub table: Vec<Vec<Vec<Rational>>>,
}

/// A `(π, t, l)` automata protocol.
///
/// Weights are 0/1 in deterministic and nondeterministic mode and
/// probabilities in probabilistic mode. Inputs of a player are indexed
/// big-endian over that player's variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomataProtocol {
    pub mode: Mode,
    pub partition: Partition,
    pub t: usize,
    pub l: usize,
    /// `init[σ][m]`: weight of A sending `m` in round 1.
    pub init: Vec<Vec<Rational>>,
    /// Rounds `2..=t`; `rounds[j - 2]` is round `j`.
    pub rounds: Vec<Round>,
    /// `decide[γ][m]`: acceptance weight after the last message `m`.
    pub decide: Vec<Vec<Rational>>,
    pub delta: Option<Rational>,
}

/// Big-endian index of the restriction of `input` to `vars`.
pub(crate) fn restriction_index(input: &[bool], vars: &[usize]) -> usize {
    vars.iter().fold(0, |acc, &v| (acc << 1) | input[v - 1] as usize)
}

impl AutomataProtocol {
    pub fn messages(&self) -> usize {
        1 << self.l
    }

    /// `k` with `t = 2k - 1`.
    pub fn k(&self) -> usize {
        self.t.div_ceil(2)
    }

    fn table_error(&self, msg: impl Into<String>) -> Error {
        Error::InvalidProtocol(msg.into())
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.messages();
        let a_inputs = 1usize << self.partition.alice().len();
        let b_inputs = 1usize << self.partition.bob().len();
        if self.t.is_multiple_of(2) {
            return Err(self.table_error(format!("round count t = {} must be odd", self.t)));
        }
        if self.l == 0 || self.l > 16 {
            return Err(self.table_error("message length must lie in 1..=16"));
        }
        if self.rounds.len() + 1 != self.t {
            return Err(self.table_error(format!("expected {} transition rounds", self.t - 1)));
        }
        match (&self.delta, self.mode) {
            (Some(d), Mode::Probabilistic) if d.is_positive() && *d < ratio(1, 2) => {}
            (None, Mode::Deterministic | Mode::Nondeterministic) => {}
            _ => return Err(self.table_error("δ in (0, 1/2) is required exactly in probabilistic mode")),
        }
        self.check_rows("init", &self.init, a_inputs, m, true)?;
        for (idx, round) in self.rounds.iter().enumerate() {
            let j = idx + 2;
            if round.owner != Player::of_round(j) {
                return Err(self.table_error(format!("round {j} must be owned by {}", Player::of_round(j).name())));
            }
            let inputs = if round.owner == Player::A { a_inputs } else { b_inputs };
            if round.table.len() != inputs {
                return Err(self.table_error(format!("round {j} needs {inputs} input tables")));
            }
            for (x, rows) in round.table.iter().enumerate() {
                self.check_rows(&format!("round {j} input {x}"), rows, m, m, true)?;
            }
        }
        self.check_rows("decide", &self.decide, b_inputs, m, false)
    }

    fn check_rows(&self, what: &str, rows: &[Vec<Rational>], count: usize, len: usize, stochastic: bool) -> Result<()> {
        if rows.len() != count || rows.iter().any(|r| r.len() != len) {
            return Err(self.table_error(format!("{what} must be {count} rows of {len} weights")));
        }
        for (i, row) in rows.iter().enumerate() {
            let bad = |msg: &str| Err(self.table_error(format!("{what} row {i}: {msg}")));
            if row.iter().any(Rational::is_negative) {
                return bad("negative weight");
            }
            match self.mode {
                Mode::Deterministic | Mode::Nondeterministic => {
                    if row.iter().any(|w| !w.is_zero() && !w.is_one()) {
                        return bad("weights must be 0 or 1");
                    }
                    if self.mode == Mode::Deterministic && stochastic && row.iter().filter(|w| w.is_one()).count() > 1 {
                        return bad("deterministic rows send at most one message");
                    }
                }
                Mode::Probabilistic => {
                    if stochastic {
                        if row.iter().sum::<Rational>() > Rational::one() {
                            return bad("probabilities sum above 1");
                        }
                    } else if row.iter().any(|w| *w > Rational::one()) {
                        return bad("acceptance probability above 1");
                    }
                }
            }
        }
        Ok(())
    }

    /// Weight of each round-`j` message, `j = 1..=t`, then the acceptance
    /// weight. Nondeterministic weights are reduced to 0/1 after each round.
    pub fn message_weights(&self, input: &[bool]) -> Result<(Vec<Vec<Rational>>, Rational)> {
        if input.len() != self.partition.n() {
            return Err(Error::LengthMismatch {
                expected: self.partition.n(),
                got: input.len(),
            });
        }
        let sigma = restriction_index(input, self.partition.alice());
        let gamma = restriction_index(input, self.partition.bob());
        let normalize = |v: Vec<Rational>| -> Vec<Rational> {
            if self.mode == Mode::Probabilistic {
                v
            } else {
                v.into_iter()
                    .map(|w| if w.is_zero() { w } else { Rational::one() })
                    .collect()
            }
        };
        let mut cur = normalize(self.init[sigma].clone());
        let mut all = vec![cur.clone()];
        for round in &self.rounds {
            let x = if round.owner == Player::A { sigma } else { gamma };
            let table = &round.table[x];
            let mut next = vec![Rational::zero(); self.messages()];
            for (m, w) in cur.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                for (m2, p) in table[m].iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                    next[m2] += w * p;
                }
            }
            cur = normalize(next);
            all.push(cur.clone());
        }
        let accept = cur
            .iter()
            .zip(&self.decide[gamma])
            .map(|(a, b)| a * b)
            .sum::<Rational>();
        Ok((all, accept))
    }

    /// Acceptance on `input`: a bit, or an exact probability classified by δ.
    pub fn run(&self, input: &[bool]) -> Result<EvalResult> {
        self.validate()?;
        let (_, accept) = self.message_weights(input)?;
        Ok(match self.mode {
            Mode::Probabilistic => EvalResult::probabilistic(accept, self.delta.as_ref().expect("validated")),
            _ => EvalResult::Bit(!accept.is_zero()),
        })
    }
}
