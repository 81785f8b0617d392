use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::rees::ReesParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyKind {
    Paper,
    Corrected,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartResult {
    pub r: usize,
    pub equal: bool,
    pub ms: u64,
}

/// Parameters as they appear in a report. Kept separate from
/// [`ReesParams`] so skipped rows can echo unvalidated input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub p: u64,
    pub n: usize,
    pub s: usize,
    pub l: usize,
    pub v: Vec<u32>,
}

impl From<&ReesParams> for ReportParams {
    fn from(p: &ReesParams) -> Self {
        ReportParams { p: p.p, n: p.n, s: p.s, l: p.l, v: p.v.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: Option<ReportParams>,
    pub index_used: i64,
    pub policy: PolicyKind,
    pub charts: Vec<ChartResult>,
    pub micali_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corollary_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub image_ok: Option<bool>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

impl VerificationReport {
    /// Recomputes `status` from the recorded results: pass exactly when
    /// every chart is equal and every check that ran succeeded.
    pub fn settle(&mut self) {
        if self.status == Status::Skipped {
            return;
        }
        let ok = self.charts.iter().all(|c| c.equal)
            && self.micali_ok
            && self.corollary_ok.unwrap_or(true)
            && self.image_ok.unwrap_or(true);
        self.status = if ok { Status::Pass } else { Status::Fail };
    }

    pub fn skipped(params: Option<ReportParams>, policy: PolicyKind, reason: String) -> Self {
        VerificationReport {
            params,
            index_used: 0,
            policy,
            charts: Vec::new(),
            micali_ok: false,
            corollary_ok: None,
            image_ok: None,
            status: Status::Skipped,
            reason: Some(reason),
        }
    }

    /// Zeroes every timing, for byte-stable output.
    pub fn strip_timing(&mut self) {
        for c in &mut self.charts {
            c.ms = 0;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "-",
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
    }
}

/// Fixed-width table, one row per report.
pub fn summary_table(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<28} {:>5} {:<10} {:<16} {:<6} {:<6} {:<6} status",
        "params", "index", "policy", "charts", "micali", "cor", "image"
    );
    for rep in reports {
        let params = rep
            .params
            .as_ref()
            .map(|p| {
                let v: Vec<String> = p.v.iter().map(u32::to_string).collect();
                format!("p={} n={} s={} l={} v={}", p.p, p.n, p.s, p.l, v.join(","))
            })
            .unwrap_or_else(|| "?".into());
        let charts: String = rep.charts.iter().map(|c| if c.equal { '=' } else { 'x' }).collect();
        let policy = serde_json::to_value(rep.policy).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ = write!(
            out,
            "{:<28} {:>5} {:<10} {:<16} {:<6} {:<6} {:<6} {}",
            params,
            rep.index_used,
            policy,
            charts,
            if rep.status == Status::Skipped { "-" } else { yes_no(Some(rep.micali_ok)) },
            yes_no(rep.corollary_ok),
            yes_no(rep.image_ok),
            status_word(rep.status)
        );
        if let Some(reason) = &rep.reason {
            let _ = write!(out, " ({reason})");
        }
        out.push('\n');
    }
    out
}
