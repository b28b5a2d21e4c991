use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::AutomataProtocol;
use crate::bp::Mode;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `δ/16 · k^{-4} · 2^{-5l}`.
pub fn weak_threshold(delta: &Rational, k: usize, l: usize) -> Rational {
    let den = BigInt::from(16) * BigInt::from(k).pow(4) * (BigInt::from(1) << (5 * l));
    delta / Rational::from_integer(den)
}

/// Zero every transition probability below the weak threshold.
///
/// Round-1 probabilities and decision probabilities are left as they are.
pub fn weaken_protocol(r: &AutomataProtocol, delta: &Rational) -> Result<AutomataProtocol> {
    if r.mode != Mode::Probabilistic {
        return Err(Error::UnsupportedMode(r.mode.tag()));
    }
    if !delta.is_positive() {
        return Err(Error::Param("δ must be positive".into()));
    }
    r.validate()?;
    let threshold = weak_threshold(delta, r.k(), r.l);
    let mut out = r.clone();
    for round in &mut out.rounds {
        for w in round.table.iter_mut().flatten().flatten() {
            if !w.is_zero() && *w < threshold {
                *w = Rational::zero();
            }
        }
    }
    Ok(out)
}
