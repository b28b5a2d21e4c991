//! Differential evaluation of two programs or two functions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::{format_bits, index_to_bits};
use crate::bp::{BranchingProgram, EvalResult};
use crate::error::{Error, Result};
use crate::generate::random_input;

/// Largest `n` accepted by exhaustive comparison.
pub const MAX_EXHAUSTIVE_N: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffMode {
    Exhaustive,
    Sample { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub input: Vec<bool>,
    pub left: EvalResult,
    pub right: EvalResult,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "input {}: {} vs {}",
            format_bits(&self.input),
            show(&self.left),
            show(&self.right)
        )
    }
}

fn show(r: &EvalResult) -> String {
    match r {
        EvalResult::Bit(b) => (*b as u8).to_string(),
        EvalResult::Probability { value, outcome } => format!("{} ({outcome:?})", crate::rational::format_ratio(value)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiffVerdict {
    Equivalent { checked: u64 },
    Differ(Counterexample),
}

impl DiffVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, DiffVerdict::Equivalent { .. })
    }
}

/// Two results agree when both are bits and equal, both are probabilities
/// and equal, or one is a probability whose classified outcome is the other
/// bit.
pub fn results_agree(a: &EvalResult, b: &EvalResult) -> bool {
    match (a, b) {
        (EvalResult::Bit(x), EvalResult::Bit(y)) => x == y,
        (EvalResult::Probability { value: x, .. }, EvalResult::Probability { value: y, .. }) => x == y,
        (p, EvalResult::Bit(y)) | (EvalResult::Bit(y), p) => p.as_bit() == Some(*y),
    }
}

/// Compare two evaluators on `n`-bit inputs. Returns the first differing
/// input in scan order (input index for exhaustive, draw index for sampling).
pub fn diff_fns<F, G>(n: usize, mode: DiffMode, left: F, right: G) -> Result<DiffVerdict>
where
    F: Fn(&[bool]) -> Result<EvalResult> + Sync,
    G: Fn(&[bool]) -> Result<EvalResult> + Sync,
{
    let check = |x: Vec<bool>| -> Result<Option<Counterexample>> {
        let l = left(&x)?;
        let r = right(&x)?;
        Ok((!results_agree(&l, &r)).then_some(Counterexample {
            input: x,
            left: l,
            right: r,
        }))
    };
    let keep = |r: &Result<Option<Counterexample>>| !matches!(r, Ok(None));
    let (found, checked) = match mode {
        DiffMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_N {
                return Err(Error::LimitExceeded {
                    what: "n",
                    value: n,
                    limit: MAX_EXHAUSTIVE_N,
                });
            }
            let total = 1u64 << n;
            let found = (0..total)
                .into_par_iter()
                .map(|i| check(index_to_bits(i, n)))
                .find_first(keep);
            (found, total)
        }
        DiffMode::Sample { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let inputs: Vec<Vec<bool>> = (0..samples).map(|_| random_input(&mut rng, n)).collect();
            let found = inputs.into_par_iter().map(check).find_first(keep);
            (found, samples as u64)
        }
    };
    match found {
        None => Ok(DiffVerdict::Equivalent { checked }),
        Some(Ok(Some(c))) => Ok(DiffVerdict::Differ(c)),
        Some(Err(e)) => Err(e),
        Some(Ok(None)) => unreachable!(),
    }
}

pub fn diff_eval(p1: &BranchingProgram, p2: &BranchingProgram, mode: DiffMode) -> Result<DiffVerdict> {
    if p1.n() != p2.n() {
        return Err(Error::LengthMismatch {
            expected: p1.n(),
            got: p2.n(),
        });
    }
    diff_fns(p1.n(), mode, |x| p1.evaluate(x), |x| p2.evaluate(x))
}
