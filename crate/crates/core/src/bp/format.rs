//! The line-oriented `BPv1` program format.
//!
//! ```text
//! BPv1 mode=<det|nd|prob> n=<n> k=<k> [delta=<p>/<q>]
//! order <j1> … <jn>
//! level <L> var <x> nodes <m>
//! node <i> 0:(<L+1>,<i'>)[*<p>/<q>],… 1:(<L+1>,<i''>)[*<p>/<q>],…
//! …
//! sinks zero=(<L>,<i>) one=(<L>,<i>)
//! ```
//!
//! Node ordinals are 0-based and must be listed in increasing order. Blank
//! lines are ignored. Probabilities must be written in lowest terms.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{BranchingProgram, Edge, Level, Mode, Node, NodeId, Sinks};
use crate::error::{Error, Result};
use crate::rational::{format_ratio, parse_ratio_strict};

impl BranchingProgram {
    /// Serialize to `BPv1`. The output is canonical: parsing it back and
    /// serializing again yields identical bytes.
    pub fn to_bpv1(&self) -> String {
        let mut out = String::new();
        write!(out, "BPv1 mode={} n={} k={}", self.mode.tag(), self.n, self.k).unwrap();
        if let Some(d) = &self.delta {
            write!(out, " delta={}", format_ratio(d)).unwrap();
        }
        out.push('\n');
        out.push_str("order");
        for v in &self.order {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
        for (li, level) in self.levels.iter().enumerate() {
            writeln!(out, "level {} var {} nodes {}", li + 1, level.var, level.nodes.len()).unwrap();
            for (ni, node) in level.nodes.iter().enumerate() {
                write!(out, "node {ni}").unwrap();
                for bit in 0..2 {
                    write!(out, " {bit}:").unwrap();
                    for (ei, e) in node.edges[bit].iter().enumerate() {
                        if ei > 0 {
                            out.push(',');
                        }
                        write!(out, "{}", e.target).unwrap();
                        if let Some(p) = &e.prob {
                            write!(out, "*{}", format_ratio(p)).unwrap();
                        }
                    }
                }
                out.push('\n');
            }
        }
        writeln!(out, "sinks zero={} one={}", self.sinks.zero, self.sinks.one).unwrap();
        out
    }

    /// Parse `BPv1` text. Syntax errors fail; semantic invariants are left to
    /// [`BranchingProgram::validate`].
    pub fn from_bpv1(text: &str) -> Result<Self> {
        Parser::new(text).program()
    }
}

impl FromStr for BranchingProgram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_bpv1(s)
    }
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn key_value<'a>(line: usize, token: &'a str, key: &str) -> Result<&'a str> {
    match token.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => err(line, format!("expected {key}=…, found {token:?}")),
    }
}

fn number(line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .or_else(|_| err(line, format!("expected a number, found {token:?}")))
}

pub(crate) fn parse_node_id(line: usize, s: &str) -> Result<NodeId> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .map_or_else(|| err(line, format!("expected (L,i), found {s:?}")), Ok)?;
    let (l, i) = inner
        .split_once(',')
        .map_or_else(|| err(line, format!("expected (L,i), found {s:?}")), Ok)?;
    Ok(NodeId::new(number(line, l)?, number(line, i)?))
}

/// Parse the edge list after `0:` / `1:`.
fn parse_edges(line: usize, s: &str) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let close = rest
            .find(')')
            .map_or_else(|| err(line, format!("unterminated edge in {s:?}")), Ok)?;
        let target = parse_node_id(line, &rest[..=close])?;
        rest = &rest[close + 1..];
        let prob = if let Some(r) = rest.strip_prefix('*') {
            let end = r.find(',').unwrap_or(r.len());
            let p = parse_ratio_strict(&r[..end]).or_else(|m| err(line, m))?;
            rest = &r[end..];
            Some(p)
        } else {
            None
        };
        edges.push(Edge { target, prob });
        if let Some(r) = rest.strip_prefix(',') {
            if r.is_empty() {
                return err(line, "trailing comma in edge list");
            }
            rest = r;
        } else if !rest.is_empty() {
            return err(line, format!("unexpected {rest:?} in edge list"));
        }
    }
    Ok(edges)
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Parser { lines, pos: 0 }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let last = self.lines.last().map_or(0, |l| l.0);
        let &(num, text) = self.lines.get(self.pos).map_or_else(
            || err(last + 1, format!("unexpected end of input, expected {what}")),
            Ok,
        )?;
        self.pos += 1;
        Ok((num, text.split_whitespace().collect()))
    }

    fn program(mut self) -> Result<BranchingProgram> {
        let (ln, head) = self.next_line("header")?;
        if head.first() != Some(&"BPv1") || !(4..=5).contains(&head.len()) {
            return err(ln, "expected `BPv1 mode=… n=… k=… [delta=…]`");
        }
        let mode_tag = key_value(ln, head[1], "mode")?;
        let mode = Mode::from_tag(mode_tag).map_or_else(|| err(ln, format!("unknown mode {mode_tag:?}")), Ok)?;
        let n = number(ln, key_value(ln, head[2], "n")?)?;
        let k = number(ln, key_value(ln, head[3], "k")?)?;
        let delta = match head.get(4) {
            Some(tok) => Some(parse_ratio_strict(key_value(ln, tok, "delta")?).or_else(|m| err(ln, m))?),
            None => None,
        };

        let (ln, order_line) = self.next_line("order line")?;
        if order_line.first() != Some(&"order") {
            return err(ln, "expected `order …`");
        }
        let order = order_line[1..]
            .iter()
            .map(|t| number(ln, t))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = vec![false; n + 1];
        if order.len() != n
            || order.iter().any(|&v| {
                let bad = v == 0 || v > n || seen[v];
                if !bad {
                    seen[v] = true;
                }
                bad
            })
        {
            return err(ln, format!("order must be a permutation of 1..{n}"));
        }

        let mut levels = Vec::new();
        loop {
            let (ln, toks) = self.next_line("level or sinks line")?;
            match toks.first().copied() {
                Some("level") => {
                    if toks.len() != 6 || toks[2] != "var" || toks[4] != "nodes" {
                        return err(ln, "expected `level <L> var <x> nodes <m>`");
                    }
                    let lnum = number(ln, toks[1])?;
                    if lnum != levels.len() + 1 {
                        return err(ln, format!("expected level {}, found {lnum}", levels.len() + 1));
                    }
                    let var = number(ln, toks[3])?;
                    let count = number(ln, toks[5])?;
                    let mut nodes = Vec::with_capacity(count);
                    for expected in 0..count {
                        let (ln, toks) = self.next_line("node line")?;
                        if toks.len() != 4 || toks[0] != "node" {
                            return err(ln, "expected `node <i> 0:… 1:…`");
                        }
                        let id = number(ln, toks[1])?;
                        if id < expected {
                            return err(ln, format!("duplicate node id {id}"));
                        }
                        if id != expected {
                            return err(ln, format!("expected node {expected}, found {id}"));
                        }
                        let zero = toks[2]
                            .strip_prefix("0:")
                            .map_or_else(|| err(ln, "expected `0:` edge list"), Ok)?;
                        let one = toks[3]
                            .strip_prefix("1:")
                            .map_or_else(|| err(ln, "expected `1:` edge list"), Ok)?;
                        nodes.push(Node::new(parse_edges(ln, zero)?, parse_edges(ln, one)?));
                    }
                    levels.push(Level { var, nodes });
                }
                Some("node") => return err(ln, "more node lines than declared"),
                Some("sinks") => {
                    if toks.len() != 3 {
                        return err(ln, "expected `sinks zero=(L,i) one=(L,i)`");
                    }
                    let zero = parse_node_id(ln, key_value(ln, toks[1], "zero")?)?;
                    let one = parse_node_id(ln, key_value(ln, toks[2], "one")?)?;
                    if let Some(&(extra, _)) = self.lines.get(self.pos) {
                        return err(extra, "content after sinks line");
                    }
                    return Ok(BranchingProgram::from_parts(
                        n,
                        k,
                        mode,
                        order,
                        levels,
                        Sinks { zero, one },
                        delta,
                    ));
                }
                _ => return err(ln, "expected `level …` or `sinks …`"),
            }
        }
    }
}
