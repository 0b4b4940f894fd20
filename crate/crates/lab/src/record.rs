use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::config::SuiteConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One executed case. Field order is the line-format order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub suite: String,
    pub case: String,
    /// The identity or inequality being checked.
    pub anchor: String,
    #[serde(serialize_with = "full_precision")]
    pub residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationRecord {
    pub fn new(suite: &str, case: &str, anchor: &str, residual: f64, tolerance: f64, seed: u64) -> Self {
        let verdict = if residual <= tolerance { Verdict::Pass } else { Verdict::Fail };
        Self {
            suite: suite.into(),
            case: case.into(),
            anchor: anchor.into(),
            residual,
            tolerance,
            verdict,
            seed,
            error: None,
        }
    }

    pub fn failed(suite: &str, case: &str, anchor: &str, tolerance: f64, seed: u64, error: String) -> Self {
        Self {
            suite: suite.into(),
            case: case.into(),
            anchor: anchor.into(),
            residual: f64::INFINITY,
            tolerance,
            verdict: Verdict::Fail,
            seed,
            error: Some(error),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Finite values as JSON numbers (shortest round-trip form), others as strings.
fn full_precision<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(&x.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Lines,
    Table,
}

/// Renders records with the config echoed as a `#`-prefixed header.
pub fn emit_report(cfg: &SuiteConfig, records: &[VerificationRecord], format: ReportFormat) -> String {
    let mut out = String::new();
    for line in cfg.to_toml().lines() {
        let _ = writeln!(out, "# {line}");
    }
    match format {
        ReportFormat::Lines => {
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("record serializes"));
                out.push('\n');
            }
        }
        ReportFormat::Table => {
            let mut suites: Vec<&str> = Vec::new();
            for r in records {
                if !suites.contains(&r.suite.as_str()) {
                    suites.push(&r.suite);
                }
            }
            let _ = writeln!(out, "{:<12} {:>6} {:>6}", "suite", "pass", "fail");
            for suite in &suites {
                let (pass, fail) = records
                    .iter()
                    .filter(|r| r.suite == *suite)
                    .fold((0, 0), |(p, f), r| if r.passed() { (p + 1, f) } else { (p, f + 1) });
                let _ = writeln!(out, "{suite:<12} {pass:>6} {fail:>6}");
            }
            let total_pass = records.iter().filter(|r| r.passed()).count();
            let _ = writeln!(out, "{:<12} {:>6} {:>6}", "total", total_pass, records.len() - total_pass);
            for r in records.iter().filter(|r| !r.passed()) {
                let _ = write!(out, "FAIL {}/{}: residual {} > tolerance {}", r.suite, r.case, r.residual, r.tolerance);
                if let Some(e) = &r.error {
                    let _ = write!(out, " ({e})");
                }
                out.push('\n');
            }
        }
    }
    out
}
