use num_traits::{One, Zero};
use rand::Rng;

use super::AutomataProtocol;
use crate::bp::Mode;
use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

fn perturb_row<R: Rng + ?Sized>(row: &mut [Rational], beta: &Rational, rng: &mut R) {
    let total: Rational = row.iter().sum();
    if total.is_zero() {
        return;
    }
    let spread = beta - Rational::one();
    for w in row.iter_mut().filter(|w| !w.is_zero()) {
        let f = Rational::one() + &spread * ratio(rng.gen_range(0..=256), 256);
        *w *= f;
    }
    let scaled: Rational = row.iter().sum();
    let factor = total / scaled;
    for w in row.iter_mut() {
        *w *= &factor;
    }
}

/// A probabilistic protocol whose round-1 and transition probabilities are
/// each within ratio `β` of those of `r`, with the same row sums and support.
pub fn perturb_protocol<R: Rng + ?Sized>(
    r: &AutomataProtocol,
    beta: &Rational,
    rng: &mut R,
) -> Result<AutomataProtocol> {
    if r.mode != Mode::Probabilistic {
        return Err(Error::UnsupportedMode(r.mode.tag()));
    }
    if *beta < Rational::one() {
        return Err(Error::BetaBelowOne);
    }
    r.validate()?;
    let mut out = r.clone();
    for row in &mut out.init {
        perturb_row(row, beta, rng);
    }
    for round in &mut out.rounds {
        for row in round.table.iter_mut().flatten() {
            perturb_row(row, beta, rng);
        }
    }
    Ok(out)
}
