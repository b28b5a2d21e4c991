//! Input encodings.
//!
//! Inputs are bit vectors `x_1 … x_n` stored 0-based (`bits[j - 1]` is `x_j`).
//! The integer encoding used by exhaustive enumeration and truth tables is
//! big-endian: `x_1` is the most significant bit of the index.

use crate::error::{Error, Result};

/// Decode index `i` into an `n`-bit big-endian input.
pub fn index_to_bits(i: u64, n: usize) -> Vec<bool> {
    (0..n).map(|j| (i >> (n - 1 - j)) & 1 == 1).collect()
}

/// Inverse of [`index_to_bits`].
pub fn bits_to_index(bits: &[bool]) -> u64 {
    bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

/// Parse a string of `0`/`1` characters.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Param(format!("invalid bit character {other:?}"))),
        })
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Iterator over all `2^n` inputs in index order.
pub fn all_inputs(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u64 << n).map(move |i| index_to_bits(i, n))
}

/// `ceil(log2(x))` for `x >= 1`; zero for `x == 1`.
pub fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_endian_roundtrip() {
        assert_eq!(index_to_bits(2, 2), vec![true, false]);
        assert_eq!(bits_to_index(&[true, false, true]), 5);
        for i in 0..64 {
            assert_eq!(bits_to_index(&index_to_bits(i, 6)), i);
        }
    }

    #[test]
    fn ceil_log2_small() {
        let got: Vec<_> = (1..=9).map(ceil_log2).collect();
        assert_eq!(got, vec![0, 1, 2, 2, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_bits("01x").is_err());
        assert_eq!(format_bits(&parse_bits("0110").unwrap()), "0110");
    }
}
