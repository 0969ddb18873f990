use std::fmt::Write;

use chrono::{DateTime, SecondsFormat, Utc};
use monotone_kernel::verify::{CheckEntry, CheckReport, GridSpec, SuiteId};
use serde::Serialize;

use crate::Format;

/// One suite's report in the JSON layout.
#[derive(Debug, Serialize)]
pub struct ReportDocument<'a> {
    pub suite: SuiteId,
    pub tol: f64,
    pub grid: GridSpec,
    pub k_max: Option<u32>,
    pub entries: &'a [CheckEntry],
    pub min_margin: f64,
    pub pass: bool,
    pub elapsed_seconds: f64,
    pub timestamp: String,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    pub failures: &'a [String],
}

impl<'a> ReportDocument<'a> {
    pub fn new(report: &'a CheckReport, timestamp: &DateTime<Utc>) -> Self {
        ReportDocument {
            suite: report.suite,
            tol: report.tol,
            grid: report.grid,
            k_max: report.k_max,
            entries: &report.entries,
            min_margin: report.min_margin,
            pass: report.pass,
            elapsed_seconds: report.elapsed_seconds,
            timestamp: timestamp.to_rfc3339_opts(SecondsFormat::Millis, true),
            failures: &report.failures,
        }
    }
}

pub fn render(reports: &[CheckReport], format: Format, timestamp: &DateTime<Utc>) -> String {
    match format {
        Format::Json => {
            let docs: Vec<_> = reports
                .iter()
                .map(|r| ReportDocument::new(r, timestamp))
                .collect();
            let mut s = serde_json::to_string_pretty(&docs).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("t,k,lhs,rhs,margin\n");
            for r in reports {
                let _ = writeln!(s, "# suite: {}", r.suite);
                for e in &r.entries {
                    let k = e.k.map(|k| k.to_string()).unwrap_or_default();
                    let _ = writeln!(s, "{},{},{},{},{}", e.t, k, e.lhs, e.rhs, e.margin);
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(
                    s,
                    "{:<16} {}  min_margin={:e}  points={}  elapsed={:.3}s",
                    r.suite.as_str(),
                    if r.pass { "PASS" } else { "FAIL" },
                    r.min_margin,
                    r.entries.len(),
                    r.elapsed_seconds
                );
                for f in &r.failures {
                    let _ = writeln!(s, "    {f}");
                }
            }
            s
        }
    }
}
