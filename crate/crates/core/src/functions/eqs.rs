//! Shuffled equality.
//!
//! Among the first `d` input bits, odd positions are markers and even
//! positions are values. Value `x_{2i}` goes to α when marker `x_{2i-1}` is 0
//! and to β otherwise. The function is 1 iff α = β as strings.

use crate::error::{param, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleStrings {
    pub alpha: Vec<bool>,
    pub beta: Vec<bool>,
}

/// Parameters `(d, n)` of EQS_d on `n` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eqs {
    d: usize,
    n: usize,
}

impl Eqs {
    /// Requires `4 <= d`, `d ≡ 0 mod 4`, `d <= 2^{n/4}` and `d <= n`.
    pub fn new(d: usize, n: usize) -> Result<Self> {
        Self::check_d(d)?;
        if d > n {
            return param(format!("d={d} exceeds n={n}"));
        }
        // d <= 2^{n/4}  <=>  d^4 <= 2^n
        let d4 = (d as u128).pow(4);
        if n < 128 && d4 > 1u128 << n {
            return param(format!("d={d} exceeds 2^(n/4) for n={n}"));
        }
        Ok(Eqs { d, n })
    }

    /// Like [`Eqs::new`] but without the `d <= 2^{n/4}` bound.
    pub fn relaxed(d: usize, n: usize) -> Result<Self> {
        Self::check_d(d)?;
        if d > n {
            return param(format!("d={d} exceeds n={n}"));
        }
        Ok(Eqs { d, n })
    }

    fn check_d(d: usize) -> Result<()> {
        if d < 4 || !d.is_multiple_of(4) {
            return param(format!("d={d} must be a positive multiple of 4"));
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shuffle_strings(&self, input: &[bool]) -> Result<ShuffleStrings> {
        if input.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: input.len(),
            });
        }
        let mut s = ShuffleStrings {
            alpha: Vec::new(),
            beta: Vec::new(),
        };
        for pair in input[..self.d].chunks(2) {
            if pair[0] {
                s.beta.push(pair[1]);
            } else {
                s.alpha.push(pair[1]);
            }
        }
        Ok(s)
    }

    pub fn eval(&self, input: &[bool]) -> Result<bool> {
        let s = self.shuffle_strings(input)?;
        Ok(s.alpha == s.beta)
    }
}

/// EQS_d with the checked parameter rules; `n` is the input length.
pub fn eqs_eval(d: usize, input: &[bool]) -> Result<bool> {
    Eqs::new(d, input.len())?.eval(input)
}
