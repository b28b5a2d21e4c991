//! Shuffled address function SAF_{k,w}.
//!
//! The input is split into `2kw` blocks of `a = ⌈n/2kw⌉` bits; bits past `n`
//! read as zero. Each block starts with `⌈log k⌉` AdrK bits and `⌈log 2w⌉`
//! AdrW bits (both little-endian), followed by `b` value bits.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::ceil_log2;
use crate::error::{param, Error, Result};

/// How Step₁ treats a failed lookup (`Val = -1`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StepMode {
    /// `Step₁ = Val + w` even for `Val = -1`, giving `w - 1`.
    #[default]
    Literal,
    /// A failed lookup makes Step₁ equal to `-1`.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SafParameters {
    k: usize,
    w: usize,
    n: usize,
    mode: StepMode,
}

impl SafParameters {
    /// Checked constructor: `2kw(2w + ⌈log k⌉ + ⌈log 2w⌉) < n` and `b >= 1`.
    pub fn new(k: usize, w: usize, n: usize) -> Result<Self> {
        let p = Self::relaxed(k, w, n)?;
        let need = 2 * k * w * (2 * w + p.k_bits() + p.w_bits());
        if need >= n {
            return param(format!("2kw(2w + ⌈log k⌉ + ⌈log 2w⌉) = {need} must be below n = {n}"));
        }
        Ok(p)
    }

    /// Only requires `k, w >= 1` and at least one value bit per block.
    pub fn relaxed(k: usize, w: usize, n: usize) -> Result<Self> {
        if k == 0 || w == 0 {
            return param("k and w must be positive");
        }
        let p = SafParameters {
            k,
            w,
            n,
            mode: StepMode::Literal,
        };
        if p.block_len() <= p.address_len() {
            return param(format!(
                "block length {} leaves no value bits after {} address bits",
                p.block_len(),
                p.address_len()
            ));
        }
        Ok(p)
    }

    pub fn with_mode(mut self, mode: StepMode) -> Self {
        self.mode = mode;
        self
    }

    /// Smallest `n` accepted by [`SafParameters::new`] for `(k, w)`.
    pub fn min_n(k: usize, w: usize) -> usize {
        let bits = ceil_log2(k.max(1)) + ceil_log2(2 * w.max(1));
        2 * k * w * (2 * w + bits) + 1
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> StepMode {
        self.mode
    }

    pub fn blocks(&self) -> usize {
        2 * self.k * self.w
    }

    /// `a = ⌈n / 2kw⌉`.
    pub fn block_len(&self) -> usize {
        self.n.div_ceil(self.blocks())
    }

    pub fn k_bits(&self) -> usize {
        ceil_log2(self.k)
    }

    pub fn w_bits(&self) -> usize {
        ceil_log2(2 * self.w)
    }

    pub fn address_len(&self) -> usize {
        self.k_bits() + self.w_bits()
    }

    /// `b = a - ⌈log k⌉ - ⌈log 2w⌉`.
    pub fn value_len(&self) -> usize {
        self.block_len() - self.address_len()
    }

    /// Length of the zero-padded input, `2kw · a`.
    pub fn padded_len(&self) -> usize {
        self.blocks() * self.block_len()
    }

    fn check_len(&self, x: &[bool]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Bit at 0-based position `pos` of the padded input.
    fn bit(x: &[bool], pos: usize) -> bool {
        x.get(pos).copied().unwrap_or(false)
    }

    fn field(&self, x: &[bool], start: usize, len: usize) -> usize {
        (0..len).fold(0, |acc, j| acc | (Self::bit(x, start + j) as usize) << j)
    }

    pub fn adr_k(&self, x: &[bool], p: usize) -> usize {
        self.field(x, p * self.block_len(), self.k_bits()) % self.k
    }

    pub fn adr_w(&self, x: &[bool], p: usize) -> usize {
        self.field(x, p * self.block_len() + self.k_bits(), self.w_bits()) % (2 * self.w)
    }

    /// Value bits of block `p` summed mod `w`.
    pub fn block_value(&self, x: &[bool], p: usize) -> usize {
        let start = p * self.block_len() + self.address_len();
        (0..self.value_len()).filter(|&j| Self::bit(x, start + j)).count() % self.w
    }

    /// Minimal block with address `(t, i)`.
    pub fn ind(&self, x: &[bool], i: usize, t: usize) -> Option<usize> {
        (0..self.blocks()).find(|&p| self.adr_k(x, p) == t && self.adr_w(x, p) == i)
    }

    /// Value of the block addressed `(t, i)`, `-1` if there is none.
    pub fn val(&self, x: &[bool], i: usize, t: usize) -> i64 {
        self.ind(x, i, t).map_or(-1, |p| self.block_value(x, p) as i64)
    }

    pub fn eval(&self, x: &[bool]) -> Result<bool> {
        Ok(self.trace(x)?.output)
    }

    pub fn trace(&self, x: &[bool]) -> Result<SafTraceRecord> {
        self.check_len(x)?;
        let w = self.w as i64;
        let mut steps = Vec::with_capacity(self.k);
        let mut prev = 0i64;
        for t in 0..self.k {
            let mut s = SafStep {
                step1: -1,
                step2: -1,
                ind1: None,
                val1: None,
                ind2: None,
                val2: None,
            };
            if prev != -1 {
                let i = prev as usize;
                let v = self.val(x, i, t);
                s.ind1 = self.ind(x, i, t);
                s.val1 = Some(v);
                s.step1 = match self.mode {
                    StepMode::Strict if v < 0 => -1,
                    _ => v + w,
                };
            }
            if s.step1 != -1 {
                let i = s.step1 as usize;
                let v = self.val(x, i, t);
                s.ind2 = self.ind(x, i, t);
                s.val2 = Some(v);
                s.step2 = v;
            }
            prev = s.step2;
            steps.push(s);
        }
        Ok(SafTraceRecord {
            output: prev > 0,
            steps,
        })
    }

    /// Random input whose pointer chain is fully present; see [`PlantedChain`].
    /// `final_value` fixes the value of the last looked-up block.
    pub fn planted_chain<R: Rng + ?Sized>(&self, rng: &mut R, final_value: Option<usize>) -> Result<PlantedChain> {
        planted_chain_input(self, rng, final_value)
    }
}

/// One iteration of the Step₁/Step₂ recursion. Lookups that were not
/// performed because an earlier step failed are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafStep {
    pub step1: i64,
    pub step2: i64,
    pub ind1: Option<usize>,
    pub val1: Option<i64>,
    pub ind2: Option<usize>,
    pub val2: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafTraceRecord {
    pub steps: Vec<SafStep>,
    pub output: bool,
}

impl SafTraceRecord {
    /// Block indices found along the chain, in lookup order.
    pub fn blocks(&self) -> Vec<usize> {
        self.steps.iter().flat_map(|s| [s.ind1, s.ind2]).flatten().collect()
    }
}

/// An input with `2k` planted blocks along the pointer chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedChain {
    pub input: Vec<bool>,
    /// Planted block indices: Step₁ block of step 0, Step₂ block of step 0, …
    pub blocks: Vec<usize>,
    /// Planted block values in the same order.
    pub values: Vec<usize>,
}

pub fn planted_chain_input<R: Rng + ?Sized>(
    params: &SafParameters,
    rng: &mut R,
    final_value: Option<usize>,
) -> Result<PlantedChain> {
    let (k, w) = (params.k, params.w);
    if w < 2 {
        return param("planted chains need w >= 2");
    }
    if let Some(v) = final_value {
        if v >= w {
            return param(format!("final value {v} must be below w = {w}"));
        }
    }
    let a = params.block_len();
    let b = params.value_len();
    let full_blocks = params.n / a;
    if full_blocks < 2 * k {
        return param("not enough complete blocks to plant a chain");
    }

    // Chain addresses and values.
    let mut addrs = Vec::with_capacity(2 * k);
    let mut values = Vec::with_capacity(2 * k);
    let mut prev = 0usize;
    for t in 0..k {
        let v1 = rng.gen_range(0..w);
        let mut v2 = rng.gen_range(0..w);
        if t == k - 1 {
            if let Some(v) = final_value {
                v2 = v;
            }
        }
        addrs.push((t, prev));
        values.push(v1);
        addrs.push((t, v1 + w));
        values.push(v2);
        prev = v2;
    }
    for &v in &values {
        if v > b {
            return param(format!("value {v} does not fit in {b} value bits"));
        }
    }

    let mut positions: Vec<usize> = (0..full_blocks).collect();
    positions.shuffle(rng);
    let planted: Vec<usize> = positions[..2 * k].to_vec();

    let mut x = vec![false; params.n];
    let write_block = |x: &mut Vec<bool>, p: usize, t: usize, i: usize, ones: usize, rng: &mut R| {
        let start = p * a;
        for j in 0..params.k_bits() {
            x[start + j] = (t >> j) & 1 == 1;
        }
        for j in 0..params.w_bits() {
            x[start + params.k_bits() + j] = (i >> j) & 1 == 1;
        }
        let mut slots: Vec<usize> = (0..b).collect();
        slots.shuffle(rng);
        let vstart = start + params.address_len();
        for j in 0..b {
            x[vstart + j] = false;
        }
        for &j in &slots[..ones] {
            x[vstart + j] = true;
        }
    };

    for (idx, &p) in planted.iter().enumerate() {
        let (t, i) = addrs[idx];
        let v = values[idx];
        let choices: Vec<usize> = (v..=b).step_by(w).collect();
        let ones = choices[rng.gen_range(0..choices.len())];
        write_block(&mut x, p, t, i, ones, rng);
    }

    // Remaining blocks get random bits, re-drawn while their address would
    // shadow a planted block further right.
    let shadows = |x: &[bool], p: usize| {
        let key = (params.adr_k(x, p), params.adr_w(x, p));
        addrs.iter().zip(&planted).any(|(&ad, &q)| ad == key && q > p)
    };
    for p in 0..params.blocks() {
        if planted.contains(&p) {
            continue;
        }
        let start = p * a;
        let end = ((p + 1) * a).min(params.n);
        if start >= params.n {
            if shadows(&x, p) {
                return param("zero padding block shadows a planted block");
            }
            continue;
        }
        let mut ok = false;
        for _ in 0..64 {
            for bit in &mut x[start..end] {
                *bit = rng.gen();
            }
            if !shadows(&x, p) {
                ok = true;
                break;
            }
        }
        if !ok {
            // Only complete blocks can shadow a planted block.
            let free = (0..k)
                .flat_map(|t| (0..2 * w).map(move |i| (t, i)))
                .find(|ad| !addrs.contains(ad))
                .expect("w >= 2 leaves unplanted addresses");
            write_block(&mut x, p, free.0, free.1, 0, rng);
        }
    }

    Ok(PlantedChain {
        input: x,
        blocks: planted,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn derived_sizes() {
        let p = SafParameters::new(2, 2, 64).unwrap();
        assert_eq!(
            (p.blocks(), p.block_len(), p.address_len(), p.value_len()),
            (8, 8, 3, 5)
        );
        assert_eq!(SafParameters::min_n(1, 1), 7);
        assert_eq!(SafParameters::min_n(2, 1), 17);
        assert!(SafParameters::new(1, 1, 6).is_err());
        assert!(SafParameters::new(1, 1, 7).is_ok());
        assert!(SafParameters::relaxed(1, 2, 12).is_ok());
        assert!(SafParameters::relaxed(2, 2, 20).is_err());
    }

    #[test]
    fn all_zero_input() {
        let p = SafParameters::new(2, 2, 64).unwrap();
        let rec = p.trace(&[false; 64]).unwrap();
        assert_eq!(rec.steps[0].ind1, Some(0));
        assert_eq!(rec.steps[0].step1, 2);
        assert_eq!(rec.steps[0].ind2, None);
        assert_eq!(rec.steps[0].step2, -1);
        assert!(rec.steps[1..].iter().all(|s| s.step1 == -1 && s.step2 == -1));
        assert!(!rec.output);
    }

    #[test]
    fn single_step_record() {
        let p = SafParameters::relaxed(1, 2, 12).unwrap();
        let rec = p.trace(&[false; 12]).unwrap();
        assert_eq!(rec.steps.len(), 1);
    }

    #[test]
    fn literal_and_strict_differ_on_missing_block() {
        // k = 1, w = 2, blocks of 3 bits: [w-addr (2 bits), value].
        // No block has address 0, block 1 has address 1 (= w - 1) with value 1.
        let p = SafParameters::relaxed(1, 2, 12).unwrap();
        let x: Vec<bool> = [[1, 1, 0], [1, 0, 1], [1, 1, 0], [1, 1, 0]]
            .iter()
            .flatten()
            .map(|&b| b == 1)
            .collect();
        let lit = p.trace(&x).unwrap();
        assert_eq!(lit.steps[0].val1, Some(-1));
        assert_eq!(lit.steps[0].step1, 1);
        assert_eq!(lit.steps[0].step2, 1);
        assert!(lit.output);
        let strict = p.with_mode(StepMode::Strict).trace(&x).unwrap();
        assert_eq!(strict.steps[0].step1, -1);
        assert!(!strict.output);
    }

    #[test]
    fn planted_chains_follow_the_plan() {
        let p = SafParameters::new(2, 2, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..200 {
            let fv = [None, Some(0), Some(1)][i % 3];
            let c = p.planted_chain(&mut rng, fv).unwrap();
            let rec = p.trace(&c.input).unwrap();
            assert_eq!(rec.blocks(), c.blocks);
            assert_eq!(rec.output, c.values[3] > 0);
            if let Some(v) = fv {
                assert_eq!(c.values[3], v);
            }
        }
    }

    #[test]
    fn ind_prefers_the_smallest_block() {
        let p = SafParameters::new(2, 2, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = p.planted_chain(&mut rng, Some(1)).unwrap();
        let first = c.blocks[0];
        let a = p.block_len();
        // Copy the first planted block's address into some later block and
        // its address into an earlier one; the lookup must follow the minimum.
        let mut x = c.input.clone();
        let other = (0..p.blocks()).find(|q| !c.blocks.contains(q) && *q != first).unwrap();
        for j in 0..p.address_len() {
            x[other * a + j] = x[first * a + j];
        }
        let expect = first.min(other);
        assert_eq!(p.ind(&x, 0, 0), Some(expect));
    }
}
