//! Machine-readable results of the verification suites.
//!
//! Rationals appear as `"num/den"` strings, series as coefficient arrays with
//! an explicit `order`. Field order is fixed, so JSON key order is stable.

use serde::{Deserialize, Serialize};

use crate::ring::Ring;
use crate::series::PowerSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diff {
    pub at: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Trend checks are reported but do not decide the exit status.
    pub exact: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diffs: Vec<Diff>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            exact: true,
            detail: String::new(),
            diffs: Vec::new(),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        let mut c = Check::pass(name);
        if !ok {
            c.status = Status::Fail;
        }
        c
    }

    pub fn error(name: impl Into<String>, err: impl ToString) -> Self {
        Check {
            status: Status::Error,
            detail: err.to_string(),
            ..Check::pass(name)
        }
    }

    pub fn trend(mut self) -> Self {
        self.exact = false;
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn with_diffs(mut self, diffs: Vec<Diff>) -> Self {
        if !diffs.is_empty() && self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self.diffs = diffs;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed_us: u64,
}

impl SuiteReport {
    pub fn exact_passed(&self) -> bool {
        self.checks.iter().filter(|c| c.exact).all(Check::passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::exact_passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!("[{}] {:.3}s\n", s.suite, s.elapsed_us as f64 / 1e6));
            for c in &s.checks {
                let tag = match (c.status, c.exact) {
                    (Status::Pass, _) => "PASS",
                    (Status::Fail, true) => "FAIL",
                    (Status::Fail, false) => "WARN",
                    (Status::Error, _) => "ERROR",
                };
                out.push_str(&format!("  {tag:5} {}", c.name));
                if !c.detail.is_empty() {
                    out.push_str(&format!("  ({})", c.detail));
                }
                out.push('\n');
                for d in c.diffs.iter().take(5) {
                    out.push_str(&format!("        {}: expected {} got {}\n", d.at, d.expected, d.actual));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub var: String,
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl<C: Ring + std::fmt::Display> From<&PowerSeries<C>> for SeriesJson {
    fn from(s: &PowerSeries<C>) -> Self {
        SeriesJson {
            var: s.var().to_string(),
            order: s.prec(),
            coeffs: s.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

/// Entrywise comparison of string renderings.
pub fn diff_lists(label: &str, expected: &[String], actual: &[String]) -> Vec<Diff> {
    let n = expected.len().max(actual.len());
    (0..n)
        .filter_map(|i| {
            let e = expected.get(i).map_or("-", String::as_str);
            let a = actual.get(i).map_or("-", String::as_str);
            (e != a).then(|| Diff {
                at: format!("{label}[{i}]"),
                expected: e.to_string(),
                actual: a.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{RatSeries, Var};

    #[test]
    fn round_trip() {
        let r = Report {
            suites: vec![SuiteReport {
                suite: "demo".into(),
                checks: vec![
                    Check::pass("a"),
                    Check::from_bool("b", false).with_diffs(diff_lists("c", &["1/2".into()], &["1/3".into()])),
                    Check::error("c", "boom").trend(),
                ],
                elapsed_us: 12,
            }],
        };
        let text = r.to_json();
        assert_eq!(Report::from_json(&text).unwrap(), r);
        assert!(!r.passed());
        assert!(text.find("\"suite\"").unwrap() < text.find("\"checks\"").unwrap());
        let s = SeriesJson::from(&RatSeries::from_ints(Var::X, &[0, 1, -2]));
        assert_eq!(s.coeffs, vec!["0", "1", "-2"]);
        assert_eq!(s.order, 3);
    }
}
