//! Exact rational helpers shared by programs and protocols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// `p/q` with both parts printed, e.g. `1/1`, `0/1`.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `p/q`. The fraction must already be in lowest terms with a positive
/// denominator.
pub fn parse_ratio_strict(s: &str) -> Result<Rational, String> {
    let (p, q) = s.split_once('/').ok_or_else(|| format!("expected p/q, got {s:?}"))?;
    let p: BigInt = p.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let q: BigInt = q.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if !q.is_positive() {
        return Err(format!("denominator must be positive in {s:?}"));
    }
    if !p.gcd(&q).is_one() {
        return Err(format!("{s:?} is not in lowest terms"));
    }
    Ok(BigRational::new_raw(p, q))
}
