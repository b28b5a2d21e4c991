use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::log2::log2_bounds;
use crate::error::{param, Result};
use crate::rational::{ratio, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub count: BigUint,
    pub bound: BigUint,
    pub holds: bool,
}

/// `w^{(k-1)w+1}`.
pub fn det_bound(k: usize, w: usize) -> BigUint {
    BigUint::from(w).pow(((k.max(1) - 1) * w + 1) as u32)
}

/// `2^{w((k-1)w+1)}`.
pub fn nondet_bound(k: usize, w: usize) -> BigUint {
    BigUint::one() << (w * ((k.max(1) - 1) * w + 1))
}

pub fn check_bound_det(count: impl Into<BigUint>, k: usize, w: usize) -> BoundCheck {
    compare(count.into(), det_bound(k, w))
}

pub fn check_bound_nondet(count: impl Into<BigUint>, k: usize, w: usize) -> BoundCheck {
    compare(count.into(), nondet_bound(k, w))
}

fn compare(count: BigUint, bound: BigUint) -> BoundCheck {
    BoundCheck {
        holds: count <= bound,
        count,
        bound,
    }
}

/// Exponent `2^l((t+1)2^{l-1} + l)` of the nondeterministic protocol count.
pub fn nd_protocol_exponent(t: usize, l: u32) -> BigUint {
    assert!(l >= 1);
    let inner = BigUint::from(t + 1) * (BigUint::one() << (l - 1)) + BigUint::from(l);
    inner << l
}

/// Exponent `(t+3) 2^{2l-1}` of the probabilistic protocol count.
pub fn prob_protocol_exponent(t: usize, l: u32) -> BigUint {
    assert!(l >= 1);
    BigUint::from(t + 3) << (2 * l - 1)
}

/// `(t+3) 2^{2l-1}` with `t = 2k - 1` and `2^l = w`, that is `(k+1) w²`.
pub fn prob_exponent(k: usize, w: usize) -> BigUint {
    BigUint::from(k + 1) * BigUint::from(w) * BigUint::from(w)
}

/// Constants of the probabilistic bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbConstants {
    /// `base = 5t / log2((1/2 - δ/2)/(1/2 - δ)) · (log2 w + log2(t+1) - log2(δ)/5)`.
    Explicit,
    /// `base = C₁ k (C₂ + log2 w + log2 k)`.
    User { c1: Rational, c2: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbBoundCheck {
    pub count: BigUint,
    pub exponent: BigUint,
    /// Enclosure of `log2(base)`.
    pub log2_base: (Rational, Rational),
    /// Enclosure of `log2(bound) = exponent · log2(base)`.
    pub log2_bound: (Rational, Rational),
    pub verdict: Verdict,
    /// Fractional bits used by the last (decisive or final) evaluation.
    pub precision: u32,
}

impl ProbBoundCheck {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// Midpoint of the `log2(bound)` enclosure.
    pub fn log2_bound_approx(&self) -> f64 {
        ((&self.log2_bound.0 + &self.log2_bound.1) / ratio(2, 1))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

const PRECISIONS: [u32; 7] = [16, 32, 64, 128, 256, 512, 1024];

/// Compare `count` with `base^{(k+1)w²}`, widening precision until the
/// comparison is decided.
pub fn check_bound_prob(
    count: impl Into<BigUint>,
    k: usize,
    w: usize,
    delta: &Rational,
    constants: &ProbConstants,
) -> Result<ProbBoundCheck> {
    let count = count.into();
    if k == 0 || w == 0 {
        return param("k and w must be positive");
    }
    if !delta.is_positive() || *delta >= ratio(1, 2) {
        return param("δ must lie in (0, 1/2)");
    }
    if count.is_zero() {
        return param("subfunction counts are at least 1");
    }
    let exponent = prob_exponent(k, w);
    let e = Rational::from_integer(BigInt::from(exponent.clone()));
    let count_r = Rational::from_integer(BigInt::from(count.clone()));
    let mut last = None;
    for &prec in &PRECISIONS {
        let Some((b_lo, b_hi)) = base_bounds(k, w, delta, constants, prec) else {
            continue;
        };
        let lb = (log2_bounds(&b_lo, prec).0, log2_bounds(&b_hi, prec).1);
        let bound = (&e * &lb.0, &e * &lb.1);
        let (c_lo, c_hi) = log2_bounds(&count_r, prec);
        let verdict = if c_hi <= bound.0 {
            Verdict::Holds
        } else if c_lo > bound.1 {
            Verdict::Violated
        } else {
            Verdict::Indeterminate
        };
        let check = ProbBoundCheck {
            count: count.clone(),
            exponent: exponent.clone(),
            log2_base: lb,
            log2_bound: bound,
            verdict,
            precision: prec,
        };
        if verdict != Verdict::Indeterminate {
            return Ok(check);
        }
        last = Some(check);
    }
    last.map_or_else(|| param("the bound's base is not positive for these constants"), Ok)
}

/// Enclosure of the base; `None` if it cannot be shown positive at `prec`.
fn base_bounds(
    k: usize,
    w: usize,
    delta: &Rational,
    constants: &ProbConstants,
    prec: u32,
) -> Option<(Rational, Rational)> {
    let lw = log2_bounds(&Rational::from_integer(w.into()), prec);
    let (lo, hi) = match constants {
        ProbConstants::Explicit => {
            let t = 2 * k - 1;
            let one = Rational::one();
            let q = (&one - delta) / (&one - delta * ratio(2, 1));
            let l1 = log2_bounds(&q, prec);
            if !l1.0.is_positive() {
                return None;
            }
            let lt = log2_bounds(&Rational::from_integer((t + 1).into()), prec);
            let ld = log2_bounds(delta, prec);
            let fifth = ratio(1, 5);
            let f_lo = &lw.0 + &lt.0 - &ld.1 * &fifth;
            let f_hi = &lw.1 + &lt.1 - &ld.0 * &fifth;
            let c = Rational::from_integer((5 * t).into());
            (&c / &l1.1 * f_lo, &c / &l1.0 * f_hi)
        }
        ProbConstants::User { c1, c2 } => {
            let lk = log2_bounds(&Rational::from_integer(k.into()), prec);
            let ck = c1 * Rational::from_integer(k.into());
            if !c1.is_positive() {
                return None;
            }
            (&ck * (c2 + &lw.0 + &lk.0), &ck * (c2 + &lw.1 + &lk.1))
        }
    };
    lo.is_positive().then_some((lo, hi))
}
