//! Rigorous rational bounds on binary logarithms.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// `(lo, hi)` with `lo <= log2(x) <= hi` and `hi - lo <= 2^-frac_bits`.
///
/// Uses repeated squaring on fixed-point values rounded down for the lower
/// bound and up for the upper bound. Panics if `x <= 0`.
pub fn log2_bounds(x: &Rational, frac_bits: u32) -> (Rational, Rational) {
    assert!(x.is_positive(), "log2 of a non-positive number");
    let num = x.numer().magnitude().clone();
    let den = x.denom().magnitude().clone();
    // Normalize to y = x / 2^e in [1, 2).
    let mut e = num.bits() as i64 - den.bits() as i64;
    let (mut yn, mut yd) = shift(&num, &den, e);
    if yn < yd {
        e -= 1;
        (yn, yd) = shift(&num, &den, e);
    }
    let p = frac_bits as u64 + 16;
    let one = BigUint::one() << p;
    let two = &one << 1u32;
    let scaled = &yn << p;
    let (q, r) = scaled.div_rem(&yd);
    let mut lo_y = q.clone();
    let mut hi_y = if r.is_zero() { q } else { q + 1u32 };

    let mut lo_bits = BigUint::zero();
    let mut hi_bits = BigUint::zero();
    for _ in 0..frac_bits {
        lo_bits <<= 1u32;
        hi_bits <<= 1u32;
        lo_y = (&lo_y * &lo_y) >> p;
        if lo_y >= two {
            lo_y >>= 1u32;
            lo_bits += 1u32;
        }
        hi_y = ceil_shift(&(&hi_y * &hi_y), p);
        if hi_y >= two {
            hi_y = ceil_shift(&hi_y, 1);
            hi_bits += 1u32;
        }
    }
    let denom = BigInt::one() << frac_bits;
    let base = Rational::from_integer(BigInt::from(e));
    let lo = &base + Rational::new(BigInt::from(lo_bits), denom.clone());
    let hi = base + Rational::new(BigInt::from(hi_bits) + 1, denom);
    (lo, hi)
}

/// `num / den / 2^e` as a fraction.
fn shift(num: &BigUint, den: &BigUint, e: i64) -> (BigUint, BigUint) {
    if e >= 0 {
        (num.clone(), den << e as u64)
    } else {
        (num << (-e) as u64, den.clone())
    }
}

fn ceil_shift(x: &BigUint, s: u64) -> BigUint {
    let q = x >> s;
    if (&q << s) == *x {
        q
    } else {
        q + 1u32
    }
}
