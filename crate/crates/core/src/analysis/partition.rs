use crate::error::{param, Error, Result};

/// Split of the variables `1..=n` between player A and player B.
///
/// When built from an order, `alice` is the order's prefix of length `cut`
/// and both lists follow the order; otherwise both lists are ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    alice: Vec<usize>,
    bob: Vec<usize>,
    witness: Option<(Vec<usize>, usize)>,
}

impl Partition {
    /// `X_A = order[..cut]`, `1 <= cut <= n - 1`.
    pub fn from_order(order: &[usize], cut: usize) -> Result<Self> {
        let n = order.len();
        check_permutation(order)?;
        if cut == 0 || cut >= n {
            return param(format!("cut {cut} must lie in 1..{n}"));
        }
        Ok(Partition {
            n,
            alice: order[..cut].to_vec(),
            bob: order[cut..].to_vec(),
            witness: Some((order.to_vec(), cut)),
        })
    }

    /// Arbitrary split; `alice` must be a nonempty proper subset of `1..=n`.
    pub fn from_alice(n: usize, alice: &[usize]) -> Result<Self> {
        let mut a = alice.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != alice.len() || a.iter().any(|&v| v == 0 || v > n) {
            return param("alice variables must be distinct and within 1..=n");
        }
        if a.is_empty() || a.len() >= n {
            return param("both players need at least one variable");
        }
        let bob = (1..=n).filter(|v| a.binary_search(v).is_err()).collect();
        Ok(Partition {
            n,
            alice: a,
            bob,
            witness: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alice(&self) -> &[usize] {
        &self.alice
    }

    pub fn bob(&self) -> &[usize] {
        &self.bob
    }

    /// `(order, cut)` this partition was built from, if any.
    pub fn witness(&self) -> Option<(&[usize], usize)> {
        self.witness.as_ref().map(|(o, u)| (o.as_slice(), *u))
    }

    /// Bitmask of the alice variables (bit `v - 1` for variable `v`).
    pub fn alice_mask(&self) -> u64 {
        self.alice.iter().fold(0, |m, &v| m | 1 << (v - 1))
    }

    /// Whether `X_A` is exactly the prefix of `order` of length `|X_A|`.
    pub fn agrees_with(&self, order: &[usize]) -> bool {
        order.len() == self.n && {
            let mut prefix = order[..self.alice.len()].to_vec();
            let mut a = self.alice.clone();
            prefix.sort_unstable();
            a.sort_unstable();
            prefix == a
        }
    }

    /// This partition with both lists rearranged to follow `order`.
    pub fn aligned_to(&self, order: &[usize]) -> Result<Self> {
        if !self.agrees_with(order) {
            return Err(Error::PartitionNotAgreed);
        }
        Partition::from_order(order, self.alice.len())
    }
}

pub(crate) fn check_permutation(order: &[usize]) -> Result<()> {
    let n = order.len();
    let mut seen = vec![false; n + 1];
    for &v in order {
        if v == 0 || v > n || seen[v] {
            return param(format!("{order:?} is not a permutation of 1..={n}"));
        }
        seen[v] = true;
    }
    Ok(())
}
