use anyhow::Result;
use kobdd::analysis::{
    check_bound_det, check_bound_nondet, check_bound_prob, ProbConstants, ReportRow, SubfunctionCountReport, Verdict,
};
use kobdd::Rational;

use crate::{BoundClass, Format};

/// Bound column of a count report.
pub struct BoundColumn {
    class: BoundClass,
    k: usize,
    w: usize,
    delta: Option<Rational>,
}

impl BoundColumn {
    pub fn new(class: BoundClass, k: usize, w: usize, delta: Option<Rational>) -> Result<Self> {
        if class == BoundClass::Prob && delta.is_none() {
            anyhow::bail!("the probabilistic bound needs --delta");
        }
        Ok(BoundColumn { class, k, w, delta })
    }

    /// Printed bound and whether `count` respects it.
    pub fn judge(&self, count: u64) -> Result<(String, bool)> {
        Ok(match self.class {
            BoundClass::Det => {
                let c = check_bound_det(count, self.k, self.w);
                (c.bound.to_string(), c.holds)
            }
            BoundClass::Nd => {
                let c = check_bound_nondet(count, self.k, self.w);
                (c.bound.to_string(), c.holds)
            }
            BoundClass::Prob => {
                let delta = self.delta.as_ref().expect("checked in new");
                let c = check_bound_prob(count, self.k, self.w, delta, &ProbConstants::Explicit)?;
                (format!("2^{:.4}", c.log2_bound_approx()), c.holds())
            }
        })
    }
}

pub fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "violated",
        Verdict::Indeterminate => "indeterminate",
    }
}

fn join(order: &[usize]) -> String {
    order.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn print_count(format: Format, report: &SubfunctionCountReport, rows: &[(&ReportRow, Option<(String, bool)>)]) {
    let cells = |cell: &Option<(String, bool)>| match cell {
        Some((b, h)) => (b.clone(), h.to_string()),
        None => ("-".to_string(), "-".to_string()),
    };
    match format {
        Format::Csv => {
            println!("order,cut,n_pi,n_theta,bound,holds");
            for (r, cell) in rows {
                let (b, h) = cells(cell);
                println!("{},{},{},{},{b},{h}", join(&r.order), r.cut, r.n_pi, r.n_theta);
            }
        }
        Format::Text => {
            let table: Vec<[String; 6]> = rows
                .iter()
                .map(|(r, cell)| {
                    let (b, h) = cells(cell);
                    [
                        join(&r.order),
                        r.cut.to_string(),
                        r.n_pi.to_string(),
                        r.n_theta.to_string(),
                        b,
                        h,
                    ]
                })
                .collect();
            let header = ["order", "cut", "N^pi", "N^theta", "bound", "holds"].map(String::from);
            let mut widths = header.clone().map(|h| h.chars().count());
            for row in &table {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            for row in std::iter::once(&header).chain(&table) {
                let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                println!("{}", line.join("  ").trim_end());
            }
            println!(
                "N={} ({}, {} orders examined, argmin {})",
                report.min,
                if report.exact { "exact" } else { "sampled" },
                report.orders_examined,
                join(&report.argmin)
            );
        }
    }
}
