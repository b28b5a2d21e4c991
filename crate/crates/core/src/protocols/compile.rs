use num_traits::{One, Zero};

use super::protocol::{AutomataProtocol, Player, Round};
use crate::analysis::Partition;
use crate::bits::{ceil_log2, index_to_bits};
use crate::bp::{BranchingProgram, Mode};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `l = max(1, ⌈log₂ w⌉)`.
pub fn message_bits(width: usize) -> usize {
    ceil_log2(width.max(1)).max(1)
}

/// The `(π, 2k-1, l)` protocol of `p` for a partition agreeing with its order.
///
/// Round 1: A runs layer 1 up to the cut. Round `2i`: B finishes layer `i`.
/// Round `2i + 1`: A runs layer `i + 1` up to the cut. B then finishes
/// layer `k` and accepts with the weight that reaches the 1-sink.
pub fn compile_protocol(p: &BranchingProgram, partition: &Partition) -> Result<AutomataProtocol> {
    p.ensure_valid()?;
    if partition.n() != p.n() {
        return Err(Error::Dimension("partition and program disagree on n".into()));
    }
    let partition = partition.aligned_to(p.order())?;
    let n = p.n();
    let k = p.k();
    let u = partition.alice().len();
    let l = message_bits(p.width());
    let msgs = 1usize << l;
    let t = 2 * k - 1;

    let assignment = |vars: &[usize], idx: usize| -> Vec<Option<bool>> {
        let mut x = vec![None; n + 1];
        for (v, b) in vars.iter().zip(index_to_bits(idx as u64, vars.len())) {
            x[*v] = Some(b);
        }
        x
    };
    let finish = |v: Vec<Rational>| -> Vec<Rational> {
        let mut v: Vec<Rational> = if p.mode() == Mode::Probabilistic {
            v
        } else {
            v.into_iter()
                .map(|w| if w.is_zero() { w } else { Rational::one() })
                .collect()
        };
        v.resize(msgs, Rational::zero());
        v
    };
    // Transition rows from every node of level `from` to level `to`.
    let rows = |x: &[Option<bool>], from: usize, to: usize| -> Vec<Vec<Rational>> {
        (0..msgs)
            .map(|m| {
                if m >= p.level_size(from) {
                    return vec![Rational::zero(); msgs];
                }
                let mut start = vec![Rational::zero(); p.level_size(from)];
                start[m] = Rational::one();
                finish(p.propagate(from, start, to, |v| x[v].expect("variable owned by the round's player")))
            })
            .collect()
    };

    let a_inputs = 1usize << u;
    let b_inputs = 1usize << (n - u);
    let a_assign: Vec<_> = (0..a_inputs).map(|s| assignment(partition.alice(), s)).collect();
    let b_assign: Vec<_> = (0..b_inputs).map(|g| assignment(partition.bob(), g)).collect();

    let init = a_assign
        .iter()
        .map(|x| finish(p.propagate(1, vec![Rational::one()], u + 1, |v| x[v].expect("alice variable"))))
        .collect();
    let mut rounds = Vec::with_capacity(t - 1);
    for j in 2..=t {
        let owner = Player::of_round(j);
        let (from, to, inputs) = if owner == Player::B {
            let i = j / 2;
            ((i - 1) * n + u + 1, i * n + 1, &b_assign)
        } else {
            let i = (j - 1) / 2;
            (i * n + 1, i * n + u + 1, &a_assign)
        };
        rounds.push(Round {
            owner,
            table: inputs.iter().map(|x| rows(x, from, to)).collect(),
        });
    }
    let last = (k - 1) * n + u + 1;
    let one = p.sinks().one.index;
    let decide = b_assign
        .iter()
        .map(|x| {
            rows(x, last, p.sink_level())
                .into_iter()
                .map(|r| r[one].clone())
                .collect()
        })
        .collect();

    let protocol = AutomataProtocol {
        mode: p.mode(),
        partition,
        t,
        l,
        init,
        rounds,
        decide,
        delta: p.delta().cloned(),
    };
    protocol.validate()?;
    Ok(protocol)
}
