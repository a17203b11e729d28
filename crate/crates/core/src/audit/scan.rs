use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{run_full_audit, Conclusion};
use crate::error::Result;
use crate::params::{scan_points, Case, PremiseSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanLine {
    pub q: u64,
    pub p: u64,
    pub e: u64,
    pub k: u32,
    pub g: u64,
    pub case: Case,
    pub conclusion: Conclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub q_max: u64,
    pub count: usize,
    pub min_q: Option<u64>,
    pub min_square_q: Option<u64>,
    pub all_concluded: bool,
    pub points: Vec<ScanLine>,
}

/// Audits every admissible point with `q <= q_max`. Lines are sorted by
/// `(q, e)` whatever the size of the surrounding thread pool.
pub fn run_scan(q_max: u64, premises: &PremiseSet) -> Result<ScanSummary> {
    let points = scan_points(q_max)?;
    let mut lines: Vec<ScanLine> = points
        .par_iter()
        .map(|pt| ScanLine {
            q: pt.q(),
            p: pt.p,
            e: pt.e,
            k: pt.k,
            g: pt.g(),
            case: pt.case,
            conclusion: run_full_audit(pt, premises).conclusion,
        })
        .collect();
    lines.sort_by_key(|l| (l.q, l.e));
    Ok(ScanSummary {
        q_max,
        count: lines.len(),
        min_q: lines.first().map(|l| l.q),
        min_square_q: lines.iter().find(|l| l.k % 2 == 0).map(|l| l.q),
        all_concluded: lines.iter().all(|l| l.conclusion.is_concluded()),
        points: lines,
    })
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

impl ScanSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan summaries always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scan q <= {}: {} admissible points", self.q_max, self.count);
        if !self.points.is_empty() {
            let _ = writeln!(out, "{:>10} {:>6} {:>10} {:>3} {:>6}  conclusion", "q", "p", "e", "k", "case");
        }
        for l in &self.points {
            let verdict = match &l.conclusion {
                Conclusion::Concluded { group } => format!("concluded {group}"),
                Conclusion::Inconclusive { gaps } => format!("INCONCLUSIVE ({} gaps)", gaps.len()),
            };
            let _ = writeln!(out, "{:>10} {:>6} {:>10} {:>3} {:>6}  {verdict}", l.q, l.p, l.e, l.k, l.case.to_string());
        }
        let _ = writeln!(out, "minimal q: {}", opt(self.min_q));
        let _ = writeln!(out, "minimal square q: {}", opt(self.min_square_q));
        let inconclusive = self.points.iter().filter(|l| !l.conclusion.is_concluded()).count();
        if self.all_concluded {
            let _ = writeln!(out, "conclusion: all {} points CONCLUDED", self.count);
        } else {
            let _ = writeln!(out, "conclusion: {inconclusive} of {} points INCONCLUSIVE", self.count);
        }
        out
    }
}
