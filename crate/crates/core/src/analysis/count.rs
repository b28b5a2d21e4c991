use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::partition::{check_permutation, Partition};
use crate::error::{param, Error, Result};
use crate::functions::TruthTable;
use crate::generate::random_order;

/// Largest `|X_B|` for which subfunction tables are materialized.
pub const MAX_B_VARS: usize = 20;

/// Largest `n` for exact minimization over all `n!` orders.
pub const EXACT_ORDER_LIMIT: usize = 8;

/// Which prefix cuts `u` of an order are examined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CutRange {
    /// `1 <= u <= n - 1`.
    #[default]
    All,
    /// `2 <= u <= n - 1`.
    Strict,
}

impl CutRange {
    fn cuts(self, n: usize) -> std::ops::Range<usize> {
        match self {
            CutRange::All => 1..n.max(1),
            CutRange::Strict => 2..n.max(2),
        }
    }
}

/// Number of distinct subfunctions over the variables outside `alice_mask`.
fn count_by_mask(tt: &TruthTable, alice_mask: u64) -> Result<u64> {
    let n = tt.n();
    let a_vars: Vec<usize> = (1..=n).filter(|v| alice_mask >> (v - 1) & 1 == 1).collect();
    let b_vars: Vec<usize> = (1..=n).filter(|v| alice_mask >> (v - 1) & 1 == 0).collect();
    if b_vars.len() > MAX_B_VARS {
        return Err(Error::LimitExceeded {
            what: "|X_B|",
            value: b_vars.len(),
            limit: MAX_B_VARS,
        });
    }
    // Index contribution of an assignment, big-endian within each group.
    let spread = |vars: &[usize], assignment: u64| -> u64 {
        vars.iter().enumerate().fold(0, |acc, (j, &v)| {
            let bit = assignment >> (vars.len() - 1 - j) & 1;
            acc | bit << (n - v)
        })
    };
    let b_offsets: Vec<u64> = (0..1u64 << b_vars.len()).map(|g| spread(&b_vars, g)).collect();
    let mut tables: Vec<Vec<u64>> = (0..1u64 << a_vars.len())
        .into_par_iter()
        .map(|s| {
            let base = spread(&a_vars, s);
            let mut words = vec![0u64; b_offsets.len().div_ceil(64)];
            for (g, off) in b_offsets.iter().enumerate() {
                if tt.get(base | off) {
                    words[g / 64] |= 1 << (g % 64);
                }
            }
            words
        })
        .collect();
    tables.par_sort_unstable();
    tables.dedup();
    Ok(tables.len() as u64)
}

/// `N^π(f)`: distinct restrictions of `f` to `X_B` over all assignments to
/// `X_A`. Restrictions are compared as tables over `X_B` in ascending order.
pub fn count_subfunctions_partition(tt: &TruthTable, partition: &Partition) -> Result<u64> {
    if partition.n() != tt.n() {
        return Err(Error::Dimension(format!(
            "partition over {} variables, function over {}",
            partition.n(),
            tt.n()
        )));
    }
    count_by_mask(tt, partition.alice_mask())
}

/// Per-cut counts of one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCount {
    pub order: Vec<usize>,
    /// `(u, N^π)` for every examined cut `u`.
    pub cuts: Vec<(usize, u64)>,
    /// `N^θ`; 1 when no cut is examined.
    pub max: u64,
}

fn prefix_mask(order: &[usize], u: usize) -> u64 {
    order[..u].iter().fold(0, |m, &v| m | 1 << (v - 1))
}

/// `N^θ(f)`: the maximum of `N^π` over the prefix cuts of `order`.
pub fn count_subfunctions_order(tt: &TruthTable, order: &[usize], range: CutRange) -> Result<OrderCount> {
    if order.len() != tt.n() {
        return Err(Error::Dimension("order length differs from n".into()));
    }
    check_permutation(order)?;
    let cuts = range
        .cuts(order.len())
        .map(|u| Ok((u, count_by_mask(tt, prefix_mask(order, u))?)))
        .collect::<Result<Vec<_>>>()?;
    let max = cuts.iter().map(|c| c.1).max().unwrap_or(1);
    Ok(OrderCount {
        order: order.to_vec(),
        cuts,
        max,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    /// All `n!` orders (with pruning); `n <= 8`.
    Exact,
    /// Natural order, reverse order and `samples` seeded random orders.
    Sampled { samples: usize, seed: u64 },
}

/// One `(order, cut)` line of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub order: Vec<usize>,
    pub cut: usize,
    pub n_pi: u64,
    pub n_theta: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfunctionCountReport {
    pub n: usize,
    /// Cut rows of every fully evaluated order (sampled mode) or of the
    /// minimizing order (exact mode).
    pub rows: Vec<ReportRow>,
    /// `N(f)` over the examined orders.
    pub min: u64,
    pub argmin: Vec<usize>,
    pub orders_examined: usize,
    /// Set iff every order was covered.
    pub exact: bool,
}

/// `N(f)`: the minimum of `N^θ` over orders.
pub fn count_subfunctions_min(tt: &TruthTable, mode: CountMode, range: CutRange) -> Result<SubfunctionCountReport> {
    let n = tt.n();
    if n == 0 {
        return param("n must be positive");
    }
    match mode {
        CountMode::Exact => exact_min(tt, range),
        CountMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut orders: Vec<Vec<usize>> = vec![(1..=n).collect(), (1..=n).rev().collect()];
            orders.extend((0..samples).map(|_| random_order(&mut rng, n)));
            let counts = orders
                .iter()
                .map(|o| count_subfunctions_order(tt, o, range))
                .collect::<Result<Vec<_>>>()?;
            let best = counts.iter().min_by_key(|c| c.max).expect("at least two orders");
            let rows = counts.iter().flat_map(rows_of).collect();
            Ok(SubfunctionCountReport {
                n,
                rows,
                min: best.max,
                argmin: best.order.clone(),
                orders_examined: orders.len(),
                exact: false,
            })
        }
    }
}

fn rows_of(c: &OrderCount) -> Vec<ReportRow> {
    c.cuts
        .iter()
        .map(|&(cut, n_pi)| ReportRow {
            order: c.order.clone(),
            cut,
            n_pi,
            n_theta: c.max,
        })
        .collect()
}

struct ExactSearch<'a> {
    tt: &'a TruthTable,
    n: usize,
    range: std::ops::Range<usize>,
    memo: HashMap<u64, u64>,
    best: u64,
    argmin: Vec<usize>,
}

impl ExactSearch<'_> {
    fn count(&mut self, mask: u64) -> Result<u64> {
        if let Some(&c) = self.memo.get(&mask) {
            return Ok(c);
        }
        let c = count_by_mask(self.tt, mask)?;
        self.memo.insert(mask, c);
        Ok(c)
    }

    /// Extend `prefix`; `running` is the max over the cuts already closed.
    fn dfs(&mut self, prefix: &mut Vec<usize>, mask: u64, running: u64) -> Result<()> {
        if running >= self.best {
            return Ok(());
        }
        if prefix.len() == self.n {
            self.best = running;
            self.argmin = prefix.clone();
            return Ok(());
        }
        for v in 1..=self.n {
            if mask >> (v - 1) & 1 == 1 {
                continue;
            }
            let m = mask | 1 << (v - 1);
            let u = prefix.len() + 1;
            let r = if self.range.contains(&u) {
                running.max(self.count(m)?)
            } else {
                running
            };
            prefix.push(v);
            self.dfs(prefix, m, r)?;
            prefix.pop();
        }
        Ok(())
    }
}

fn exact_min(tt: &TruthTable, range: CutRange) -> Result<SubfunctionCountReport> {
    let n = tt.n();
    if n > EXACT_ORDER_LIMIT {
        return Err(Error::LimitExceeded {
            what: "n (exact order enumeration)",
            value: n,
            limit: EXACT_ORDER_LIMIT,
        });
    }
    let mut search = ExactSearch {
        tt,
        n,
        range: range.cuts(n),
        memo: HashMap::new(),
        best: u64::MAX,
        argmin: Vec::new(),
    };
    // Bound just above the natural order, so at least that order is recorded.
    let natural: Vec<usize> = (1..=n).collect();
    let nat = count_subfunctions_order(tt, &natural, range)?;
    search.best = nat.max + 1;
    search.dfs(&mut Vec::with_capacity(n), 0, 1)?;
    let best = count_subfunctions_order(tt, &search.argmin, range)?;
    debug_assert_eq!(best.max, search.best);
    Ok(SubfunctionCountReport {
        n,
        rows: rows_of(&best),
        min: best.max,
        argmin: best.order.clone(),
        orders_examined: (1..=n).product(),
        exact: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tt(n: usize, f: impl Fn(&[bool]) -> bool + Sync) -> TruthTable {
        TruthTable::from_fn(n, f).unwrap()
    }

    fn brute_min(t: &TruthTable, range: CutRange) -> u64 {
        // Heap's algorithm over all orders, no pruning.
        fn permute(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == 1 {
                out.push(a.clone());
                return;
            }
            for i in 0..k {
                permute(k - 1, a, out);
                let j = if k.is_multiple_of(2) { i } else { 0 };
                a.swap(j, k - 1);
            }
        }
        let mut all = Vec::new();
        permute(t.n(), &mut (1..=t.n()).collect(), &mut all);
        all.iter()
            .map(|o| count_subfunctions_order(t, o, range).unwrap().max)
            .min()
            .unwrap()
    }

    #[test]
    fn partition_examples() {
        let pi = Partition::from_order(&[1, 2], 1).unwrap();
        assert_eq!(count_subfunctions_partition(&tt(2, |x| x[0] && x[1]), &pi).unwrap(), 2);
        assert_eq!(count_subfunctions_partition(&tt(2, |_| false), &pi).unwrap(), 1);
        assert_eq!(count_subfunctions_partition(&tt(2, |x| x[0] ^ x[1]), &pi).unwrap(), 2);
    }

    #[test]
    fn order_examples() {
        let parity = tt(3, |x| x[0] ^ x[1] ^ x[2]);
        for o in [[1, 2, 3], [3, 1, 2], [2, 3, 1]] {
            assert_eq!(count_subfunctions_order(&parity, &o, CutRange::All).unwrap().max, 2);
        }
        assert_eq!(
            count_subfunctions_order(&tt(3, |_| true), &[1, 2, 3], CutRange::All)
                .unwrap()
                .max,
            1
        );
        let c = count_subfunctions_order(&tt(2, |x| x[0]), &[1, 2], CutRange::Strict).unwrap();
        assert!(c.cuts.is_empty());
        assert_eq!(c.max, 1);
    }

    #[test]
    fn exact_min_examples() {
        // A projection has one subfunction when x1 is on B's side and two
        // constant ones when it is on A's side.
        let proj = tt(3, |x| x[0]);
        let r = count_subfunctions_min(&proj, CountMode::Exact, CutRange::All).unwrap();
        assert_eq!(r.min, 1);
        assert!(r.exact);
        let first = count_subfunctions_order(&proj, &[1, 2, 3], CutRange::All).unwrap();
        assert_eq!(first.cuts, vec![(1, 2), (2, 2)]);
        let parity = tt(4, |x| x.iter().fold(false, |a, &b| a ^ b));
        assert_eq!(
            count_subfunctions_min(&parity, CountMode::Exact, CutRange::All)
                .unwrap()
                .min,
            2
        );
        assert_eq!(
            count_subfunctions_min(&tt(4, |_| false), CountMode::Exact, CutRange::All)
                .unwrap()
                .min,
            1
        );
        assert!(count_subfunctions_min(&tt(9, |_| false), CountMode::Exact, CutRange::All).is_err());
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        // x1 x2 + x3 x4 + x5 x6 style functions depend strongly on the order.
        let fs: Vec<TruthTable> = vec![
            tt(6, |x| (x[0] && x[3]) || (x[1] && x[4]) || (x[2] && x[5])),
            tt(5, |x| x[0] == x[4] && x[1] != x[3]),
            tt(5, |x| (x.iter().filter(|&&b| b).count() % 3 == 0) ^ x[2]),
        ];
        for f in &fs {
            for range in [CutRange::All, CutRange::Strict] {
                let r = count_subfunctions_min(f, CountMode::Exact, range).unwrap();
                assert_eq!(r.min, brute_min(f, range));
                assert_eq!(count_subfunctions_order(f, &r.argmin, range).unwrap().max, r.min);
            }
        }
    }

    #[test]
    fn sampled_is_seeded_upper_bound() {
        let f = tt(6, |x| (x[0] && x[3]) || (x[1] && x[4]) || (x[2] && x[5]));
        let a = count_subfunctions_min(&f, CountMode::Sampled { samples: 5, seed: 1 }, CutRange::All).unwrap();
        let b = count_subfunctions_min(&f, CountMode::Sampled { samples: 5, seed: 1 }, CutRange::All).unwrap();
        assert_eq!(a, b);
        assert!(!a.exact);
        assert_eq!(a.orders_examined, 7);
        let exact = count_subfunctions_min(&f, CountMode::Exact, CutRange::All).unwrap();
        assert!(exact.min <= a.min);
    }
}
