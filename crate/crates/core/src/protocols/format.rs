//! The line-oriented `CPv1` protocol format.
//!
//! ```text
//! CPv1 mode=<det|nd|prob> t=<t> l=<l> n=<n> cut=<|X_A|> [delta=<p>/<q>]
//! alice <x> …
//! bob <x> …
//! init <σ> <w_0> … <w_{2^l-1}>
//! round <j> owner=<A|B>
//! row <x> <m> <w_0> … <w_{2^l-1}>
//! decide <γ> <w_0> … <w_{2^l-1}>
//! ```
//!
//! Player inputs are indexed big-endian over the `alice` and `bob` lists in
//! the order given. Every weight is written as `p/q` in lowest terms.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{AutomataProtocol, Player, Round};
use crate::analysis::Partition;
use crate::bp::Mode;
use crate::error::{Error, Result};
use crate::rational::{format_ratio, parse_ratio_strict, Rational};

fn write_weights(out: &mut String, row: &[Rational]) {
    for w in row {
        write!(out, " {}", format_ratio(w)).unwrap();
    }
    out.push('\n');
}

impl AutomataProtocol {
    /// Canonical `CPv1` text.
    pub fn to_cpv1(&self) -> String {
        let mut out = String::new();
        write!(
            out,
            "CPv1 mode={} t={} l={} n={} cut={}",
            self.mode.tag(),
            self.t,
            self.l,
            self.partition.n(),
            self.partition.alice().len()
        )
        .unwrap();
        if let Some(d) = &self.delta {
            write!(out, " delta={}", format_ratio(d)).unwrap();
        }
        out.push('\n');
        for (name, vars) in [("alice", self.partition.alice()), ("bob", self.partition.bob())] {
            out.push_str(name);
            for v in vars {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        for (sigma, row) in self.init.iter().enumerate() {
            write!(out, "init {sigma}").unwrap();
            write_weights(&mut out, row);
        }
        for (idx, round) in self.rounds.iter().enumerate() {
            writeln!(out, "round {} owner={}", idx + 2, round.owner.name()).unwrap();
            for (x, rows) in round.table.iter().enumerate() {
                for (m, row) in rows.iter().enumerate() {
                    write!(out, "row {x} {m}").unwrap();
                    write_weights(&mut out, row);
                }
            }
        }
        for (gamma, row) in self.decide.iter().enumerate() {
            write!(out, "decide {gamma}").unwrap();
            write_weights(&mut out, row);
        }
        out
    }

    /// Parse and validate `CPv1` text.
    pub fn from_cpv1(text: &str) -> Result<Self> {
        parse(text)
    }
}

impl FromStr for AutomataProtocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_cpv1(s)
    }
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn field<'a>(line: usize, token: Option<&'a str>, key: &str) -> Result<&'a str> {
    match token.and_then(|t| t.split_once('=')) {
        Some((k, v)) if k == key => Ok(v),
        _ => err(line, format!("expected {key}=…")),
    }
}

fn number(line: usize, token: Option<&str>) -> Result<usize> {
    match token.map(str::parse) {
        Some(Ok(v)) => Ok(v),
        _ => err(line, format!("expected a number, found {token:?}")),
    }
}

fn weights<'a>(line: usize, tokens: impl Iterator<Item = &'a str>, len: usize) -> Result<Vec<Rational>> {
    let row = tokens
        .map(|t| parse_ratio_strict(t).or_else(|m| err(line, m)))
        .collect::<Result<Vec<_>>>()?;
    if row.len() != len {
        return err(line, format!("expected {len} weights, found {}", row.len()));
    }
    Ok(row)
}

/// Checks that the next index equals `expected`.
fn expect_index(line: usize, got: usize, expected: usize, what: &str) -> Result<()> {
    if got != expected {
        return err(line, format!("expected {what} {expected}, found {got}"));
    }
    Ok(())
}

fn parse(text: &str) -> Result<AutomataProtocol> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    let (ln, header) = lines.next().map_or_else(|| err(1, "empty input"), Ok)?;
    let mut h = header.split_whitespace();
    if h.next() != Some("CPv1") {
        return err(ln, "missing CPv1 header");
    }
    let mode_tag = field(ln, h.next(), "mode")?;
    let mode = Mode::from_tag(mode_tag).map_or_else(|| err(ln, format!("unknown mode {mode_tag:?}")), Ok)?;
    let t = number(ln, Some(field(ln, h.next(), "t")?))?;
    let l = number(ln, Some(field(ln, h.next(), "l")?))?;
    let n = number(ln, Some(field(ln, h.next(), "n")?))?;
    let cut = number(ln, Some(field(ln, h.next(), "cut")?))?;
    let delta = match h.next() {
        Some(tok) => Some(parse_ratio_strict(field(ln, Some(tok), "delta")?).or_else(|m| err(ln, m))?),
        None => None,
    };
    if h.next().is_some() {
        return err(ln, "trailing tokens in header");
    }
    if l == 0 || l > 16 || t == 0 || t % 2 == 0 {
        return err(ln, "need odd t >= 1 and 1 <= l <= 16");
    }
    if n > 24 {
        return err(ln, "at most 24 variables are supported");
    }

    let mut vars = |name: &str| -> Result<Vec<usize>> {
        let (ln, line) = lines
            .next()
            .map_or_else(|| err(0, format!("missing {name} line")), Ok)?;
        let mut toks = line.split_whitespace();
        if toks.next() != Some(name) {
            return err(ln, format!("expected {name} line"));
        }
        toks.map(|t| number(ln, Some(t))).collect()
    };
    let alice = vars("alice")?;
    let bob = vars("bob")?;
    if alice.len() != cut || alice.len() + bob.len() != n {
        return err(ln, "player variable lists do not match n and cut");
    }
    let order: Vec<usize> = alice.iter().chain(&bob).copied().collect();
    let partition = Partition::from_order(&order, cut)?;

    let size = 1usize << l;
    let a_inputs = 1usize << alice.len();
    let b_inputs = 1usize << bob.len();
    let row_line =
        |lines: &mut dyn Iterator<Item = (usize, &str)>, tag: &str, indices: &[usize]| -> Result<Vec<Rational>> {
            let (ln, line) = lines.next().map_or_else(|| err(0, format!("missing {tag} line")), Ok)?;
            let mut toks = line.split_whitespace();
            if toks.next() != Some(tag) {
                return err(ln, format!("expected {tag} line, found {line:?}"));
            }
            for (i, &expected) in indices.iter().enumerate() {
                expect_index(
                    ln,
                    number(ln, toks.next())?,
                    expected,
                    if i == 0 { "index" } else { "message" },
                )?;
            }
            weights(ln, toks, size)
        };
    let init = (0..a_inputs)
        .map(|s| row_line(&mut lines, "init", &[s]))
        .collect::<Result<Vec<_>>>()?;
    let mut rounds = Vec::with_capacity(t - 1);
    for j in 2..=t {
        let (ln, line) = lines.next().map_or_else(|| err(0, format!("missing round {j}")), Ok)?;
        let mut toks = line.split_whitespace();
        if toks.next() != Some("round") {
            return err(ln, format!("expected round {j}"));
        }
        expect_index(ln, number(ln, toks.next())?, j, "round")?;
        let owner = match field(ln, toks.next(), "owner")? {
            "A" => Player::A,
            "B" => Player::B,
            o => return err(ln, format!("unknown owner {o:?}")),
        };
        if toks.next().is_some() {
            return err(ln, "trailing tokens after owner");
        }
        let inputs = if owner == Player::A { a_inputs } else { b_inputs };
        let table = (0..inputs)
            .map(|x| {
                (0..size)
                    .map(|m| row_line(&mut lines, "row", &[x, m]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        rounds.push(Round { owner, table });
    }
    let decide = (0..b_inputs)
        .map(|g| row_line(&mut lines, "decide", &[g]))
        .collect::<Result<Vec<_>>>()?;
    if let Some((ln, _)) = lines.next() {
        return err(ln, "unexpected content after decide lines");
    }
    let protocol = AutomataProtocol {
        mode,
        partition,
        t,
        l,
        init,
        rounds,
        decide,
        delta,
    };
    protocol.validate()?;
    Ok(protocol)
}
