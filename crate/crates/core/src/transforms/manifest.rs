//! `DECv1` manifests: a decomposition stored as one BPv1 file per factor.
//!
//! ```text
//! DECv1 n=<n> k=<k> traces=<count>
//! trace <j> (L,i) … (L,i)
//! term <j> <layer> <file>
//! ```

use std::fmt::Write as _;

use super::decompose::Decomposition;
use super::traces::Trace;
use crate::bp::format::parse_node_id;
use crate::bp::BranchingProgram;
use crate::error::{Error, Result};

/// A manifest plus the files it references.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub text: String,
    /// `(file name, BPv1 text)` for every factor.
    pub files: Vec<(String, String)>,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

impl Decomposition {
    /// Serialize; `name(j, i)` names the file of layer `i` (1-based) of trace `j`.
    pub fn to_manifest(&self, name: impl Fn(usize, usize) -> String) -> Manifest {
        let mut text = String::new();
        let mut files = Vec::new();
        writeln!(text, "DECv1 n={} k={} traces={}", self.n, self.k, self.traces.len()).unwrap();
        for (j, (trace, term)) in self.traces.iter().zip(&self.terms).enumerate() {
            write!(text, "trace {j}").unwrap();
            for m in &trace.nodes {
                write!(text, " {m}").unwrap();
            }
            text.push('\n');
            for (i, prog) in term.iter().enumerate() {
                let file = name(j, i + 1);
                writeln!(text, "term {j} {} {file}", i + 1).unwrap();
                files.push((file, prog.to_bpv1()));
            }
        }
        Manifest { text, files }
    }

    /// Parse a manifest, loading factor programs through `load`.
    pub fn from_manifest(text: &str, mut load: impl FnMut(&str) -> Result<BranchingProgram>) -> Result<Decomposition> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, head) = lines.next().map_or_else(|| err(1, "empty manifest"), Ok)?;
        let fields: Vec<&str> = head.split_whitespace().collect();
        let num = |tok: Option<&&str>, key: &str| -> Result<usize> {
            tok.and_then(|t| t.strip_prefix(key))
                .and_then(|v| v.parse().ok())
                .map_or_else(|| err(ln, format!("expected {key}<number>")), Ok)
        };
        if fields.first() != Some(&"DECv1") || fields.len() != 4 {
            return err(ln, "expected `DECv1 n=… k=… traces=…`");
        }
        let n = num(fields.get(1), "n=")?;
        let k = num(fields.get(2), "k=")?;
        let count = num(fields.get(3), "traces=")?;
        let mut traces: Vec<Trace> = Vec::new();
        let mut terms: Vec<Vec<BranchingProgram>> = Vec::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.first().copied() {
                Some("trace") => {
                    if toks.get(1).and_then(|t| t.parse::<usize>().ok()) != Some(traces.len()) {
                        return err(ln, "traces must be numbered consecutively from 0");
                    }
                    let nodes = toks[2..]
                        .iter()
                        .map(|t| parse_node_id(ln, t))
                        .collect::<Result<Vec<_>>>()?;
                    if nodes.len() != k + 1 {
                        return err(ln, format!("trace needs {} nodes", k + 1));
                    }
                    traces.push(Trace { nodes });
                    terms.push(Vec::new());
                }
                Some("term") if toks.len() == 4 => {
                    let j: Option<usize> = toks[1].parse().ok();
                    let i: Option<usize> = toks[2].parse().ok();
                    let cur = traces.len().checked_sub(1);
                    if j != cur || i != Some(terms.last().map_or(0, Vec::len) + 1) {
                        return err(ln, "term out of sequence");
                    }
                    let prog = load(toks[3])?;
                    if prog.n() != n || prog.k() != 1 {
                        return err(ln, "factor must be a one-layer program over n variables");
                    }
                    terms.last_mut().unwrap().push(prog);
                }
                _ => return err(ln, "expected `trace …` or `term …`"),
            }
        }
        if traces.len() != count || terms.iter().any(|t| t.len() != k) {
            return err(0, "manifest is incomplete");
        }
        Ok(Decomposition { n, k, traces, terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_eqs_kobdd;
    use crate::transforms::decompose;
    use std::collections::HashMap;

    #[test]
    fn roundtrip() {
        let d = decompose(&build_eqs_kobdd(4, 8).unwrap()).unwrap();
        let m = d.to_manifest(|j, i| format!("t{j}_l{i}.bp"));
        let files: HashMap<_, _> = m.files.iter().cloned().collect();
        let back = Decomposition::from_manifest(&m.text, |f| BranchingProgram::from_bpv1(&files[f])).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_manifest(|j, i| format!("t{j}_l{i}.bp")), m);
    }
}
