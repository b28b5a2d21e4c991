use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

/// `a ~β b`: both zero, or both positive with `a <= β·b` and `b <= β·a`.
pub fn beta_close(a: &Rational, b: &Rational, beta: &Rational) -> Result<bool> {
    if *beta < Rational::one() {
        return Err(Error::BetaBelowOne);
    }
    if a.is_negative() || b.is_negative() {
        return Err(Error::Param("closeness is defined for non-negative values".into()));
    }
    Ok(match (a.is_zero(), b.is_zero()) {
        (true, true) => true,
        (false, false) => *a <= beta * b && *b <= beta * a,
        _ => false,
    })
}

pub fn beta_close_vec(a: &[Rational], b: &[Rational], beta: &Rational) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "vectors of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    for (x, y) in a.iter().zip(b) {
        if !beta_close(x, y, beta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn beta_close_matrix(a: &super::RatMatrix, b: &super::RatMatrix, beta: &Rational) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Dimension(format!(
            "{}x{} against {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    beta_close_vec(a.entries(), b.entries(), beta)
}

/// `β^{2k-1} = (1/2 + δ) / (1/2 + δ/2)`, the largest total distortion that
/// keeps a `δ`-error protocol correct with margin `δ/2`.
pub fn transfer_beta_power(delta: &Rational) -> Rational {
    let half = ratio(1, 2);
    (&half + delta) / (&half + delta / Rational::from_integer(2.into()))
}

/// The literal `(1/2 - δ/2) / (1/2 + δ/2)`, which is below 1 for `δ > 0`.
pub fn stated_transfer_beta_power(delta: &Rational) -> Rational {
    let half = ratio(1, 2);
    let d2 = delta / Rational::from_integer(2.into());
    (&half - &d2) / (&half + &d2)
}

/// Largest `y = N / 2^bits` with `y^r <= x`, for `x >= 1` and `r >= 1`.
pub fn rational_root_below(x: &Rational, r: u32, bits: u32) -> Result<Rational> {
    if *x < Rational::one() || r == 0 {
        return Err(Error::Param("root needs x >= 1 and r >= 1".into()));
    }
    let scale = BigInt::one() << bits;
    let fits = |n: &BigInt| -> bool {
        let y = Rational::new(n.clone(), scale.clone());
        num_traits::pow(y, r as usize) <= *x
    };
    let mut lo = scale.clone();
    let mut hi = (x.ceil().to_integer() + 1u32) * &scale;
    // Invariant: fits(lo), !fits(hi).
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1u32;
        if fits(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Rational::new(lo, scale))
}

/// Per-entry closeness for the transfer between `k`-layer protocols.
pub fn transfer_beta(delta: &Rational, k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Param("k must be positive".into()));
    }
    rational_root_below(&transfer_beta_power(delta), 2 * k as u32 - 1, 32)
}
