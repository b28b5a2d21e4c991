use num_traits::{One, Zero};

use super::protocol::{restriction_index, AutomataProtocol, Player};
use crate::bp::{EvalResult, Mode};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense square or rectangular matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, z: u32) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut result = RatMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = z;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of {} times {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, a) in v.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in self.row(i).iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[j] += a * b;
            }
        }
        Ok(out)
    }
}

/// `(p⁰, M, q)` of a protocol on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtocolMatrices {
    pub mode: Mode,
    pub t: usize,
    pub l: usize,
    pub p0: Vec<Rational>,
    pub m: RatMatrix,
    pub q: Vec<Rational>,
    pub delta: Option<Rational>,
}

/// Position of message `m` of round `j` in the global `t·2^l` index space.
///
/// Even rounds `2, 4, …, 2k-2` occupy the first `(k-1)` blocks, odd rounds
/// `1, 3, …, 2k-1` the following `k` blocks.
pub fn message_index(t: usize, l: usize, j: usize, m: usize) -> usize {
    let size = 1 << l;
    let k = t.div_ceil(2);
    if j.is_multiple_of(2) {
        (j / 2 - 1) * size + m
    } else {
        (k - 1) * size + (j - 1) / 2 * size + m
    }
}

pub fn protocol_matrices(r: &AutomataProtocol, input: &[bool]) -> Result<ProtocolMatrices> {
    r.validate()?;
    if input.len() != r.partition.n() {
        return Err(Error::LengthMismatch {
            expected: r.partition.n(),
            got: input.len(),
        });
    }
    let sigma = restriction_index(input, r.partition.alice());
    let gamma = restriction_index(input, r.partition.bob());
    let size = r.messages();
    let dim = r.t * size;
    let mut p0 = vec![Rational::zero(); dim];
    for (m, w) in r.init[sigma].iter().enumerate() {
        p0[message_index(r.t, r.l, 1, m)] = w.clone();
    }
    let mut m = RatMatrix::zeros(dim, dim);
    for (idx, round) in r.rounds.iter().enumerate() {
        let j = idx + 2;
        let x = if round.owner == Player::A { sigma } else { gamma };
        for (from, row) in round.table[x].iter().enumerate() {
            for (to, w) in row.iter().enumerate() {
                m.set(
                    message_index(r.t, r.l, j - 1, from),
                    message_index(r.t, r.l, j, to),
                    w.clone(),
                );
            }
        }
    }
    let mut q = vec![Rational::zero(); dim];
    for (mm, w) in r.decide[gamma].iter().enumerate() {
        q[message_index(r.t, r.l, r.t, mm)] = w.clone();
    }
    Ok(ProtocolMatrices {
        mode: r.mode,
        t: r.t,
        l: r.l,
        p0,
        m,
        q,
        delta: r.delta.clone(),
    })
}

/// `p⁰ · M^{t-1} · qᵀ`, as a bit (nonzero) or a classified probability.
pub fn matrix_accept(pm: &ProtocolMatrices) -> Result<EvalResult> {
    let dim = pm.p0.len();
    if pm.m.rows() != dim || pm.m.cols() != dim || pm.q.len() != dim {
        return Err(Error::Dimension(format!(
            "p0 has {dim} entries, M is {}x{}, q has {}",
            pm.m.rows(),
            pm.m.cols(),
            pm.q.len()
        )));
    }
    let mut v = pm.p0.clone();
    for _ in 1..pm.t {
        v = pm.m.left_mul(&v)?;
    }
    let value: Rational = v.iter().zip(&pm.q).map(|(a, b)| a * b).sum();
    Ok(match pm.mode {
        Mode::Probabilistic => {
            let delta = pm
                .delta
                .as_ref()
                .ok_or_else(|| Error::InvalidProtocol("probabilistic matrices without δ".into()))?;
            EvalResult::probabilistic(value, delta)
        }
        _ => EvalResult::Bit(!value.is_zero()),
    })
}
