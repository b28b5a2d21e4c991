use std::fmt;

use rayon::prelude::*;

use crate::bits::index_to_bits;
use crate::error::{Error, Result};

/// Largest `n` accepted by [`TruthTable::from_fn`] unless a limit is given.
pub const DEFAULT_TABLE_LIMIT: usize = 24;

/// Truth table of an `n`-variable function. Entry `i` is the value on the
/// big-endian encoding of `i` (`x_1` is the most significant bit).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    pub fn from_fn(n: usize, f: impl Fn(&[bool]) -> bool + Sync) -> Result<Self> {
        Self::try_from_fn(n, |x| Ok(f(x)))
    }

    pub fn try_from_fn(n: usize, f: impl Fn(&[bool]) -> Result<bool> + Sync) -> Result<Self> {
        Self::try_from_fn_with_limit(n, DEFAULT_TABLE_LIMIT, f)
    }

    pub fn try_from_fn_with_limit(n: usize, limit: usize, f: impl Fn(&[bool]) -> Result<bool> + Sync) -> Result<Self> {
        if n > limit {
            return Err(Error::LimitExceeded {
                what: "n",
                value: n,
                limit,
            });
        }
        let len = 1u64 << n;
        let words = (0..len.div_ceil(64))
            .into_par_iter()
            .map(|w| {
                let mut word = 0u64;
                for bit in 0..64u64.min(len - w * 64) {
                    if f(&index_to_bits(w * 64 + bit, n))? {
                        word |= 1 << bit;
                    }
                }
                Ok(word)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TruthTable { n, words })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, index: u64) -> bool {
        (self.words[(index / 64) as usize] >> (index % 64)) & 1 == 1
    }

    pub fn get_bits(&self, input: &[bool]) -> bool {
        self.get(crate::bits::bits_to_index(input))
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Entries as a `0`/`1` string in index order.
    pub fn to_bit_string(&self) -> String {
        (0..self.len() as u64)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    /// `n=<n>` header line followed by hex digits; each digit packs four
    /// consecutive entries, the first entry in the most significant position.
    pub fn to_hex(&self) -> String {
        let len = self.len() as u64;
        let digits: String = (0..len.div_ceil(4))
            .map(|d| {
                let v = (0..4).fold(0u32, |acc, j| {
                    let i = d * 4 + j;
                    (acc << 1) | (i < len && self.get(i)) as u32
                });
                char::from_digit(v, 16).unwrap()
            })
            .collect();
        format!("n={}\n{}\n", self.n, digits)
    }

    pub fn from_hex(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let bad = |line, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let n: usize = lines
            .next()
            .and_then(|h| h.strip_prefix("n="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad(1, "expected `n=<n>` header"))?;
        if n > 32 {
            return Err(bad(1, "n too large"));
        }
        let digits = lines.next().unwrap_or("");
        let len = 1u64 << n;
        if digits.len() as u64 != len.div_ceil(4) {
            return Err(bad(2, "wrong number of hex digits"));
        }
        let mut words = vec![0u64; len.div_ceil(64) as usize];
        for (d, c) in digits.chars().enumerate() {
            let v = c.to_digit(16).ok_or_else(|| bad(2, "invalid hex digit"))?;
            for j in 0..4u64 {
                let i = d as u64 * 4 + j;
                let on = (v >> (3 - j)) & 1 == 1;
                if i >= len {
                    if on {
                        return Err(bad(2, "nonzero padding bits"));
                    }
                } else if on {
                    words[(i / 64) as usize] |= 1 << (i % 64);
                }
            }
        }
        Ok(TruthTable { n, words })
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 6 {
            write!(f, "TruthTable(n={}, {})", self.n, self.to_bit_string())
        } else {
            write!(f, "TruthTable(n={}, ones={})", self.n, self.count_ones())
        }
    }
}
