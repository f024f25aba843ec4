//! Verification records and their text / JSON-lines rendering.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Computed and recorded, not asserted.
    Reported,
}

impl Status {
    pub fn from_zero(residual_is_zero: bool) -> Status {
        if residual_is_zero {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Reported => "reported",
        }
    }
}

/// Result of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: String,
    /// Short tag such as `1.25`, or `derived-convention`.
    pub tag: String,
    pub status: Status,
    /// Rendering of the residual (`0` when it vanishes) or a short note.
    pub residual: String,
}

impl Outcome {
    pub fn new(id: impl Into<String>, tag: impl Into<String>, status: Status, residual: impl Into<String>) -> Self {
        Outcome { id: id.into(), tag: tag.into(), status, residual: residual.into() }
    }

    /// Pass iff `residual` renders as `0`.
    pub fn zero_check(id: impl Into<String>, tag: impl Into<String>, residual: impl ToString) -> Self {
        let r = residual.to_string();
        let status = Status::from_zero(r == "0");
        Outcome::new(id, tag, status, r)
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// One row of a [`VerificationReport`].
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub records: Vec<Record>,
}

#[derive(Serialize)]
struct JsonLine<'a> {
    suite: &'a str,
    #[serde(flatten)]
    outcome: &'a Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<f64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport { suite: suite.into(), records: Vec::new() }
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.outcome.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn get(&self, id: &str) -> Option<&Outcome> {
        self.records.iter().map(|r| &r.outcome).find(|o| o.id == id)
    }

    /// One JSON object per identity. Timings are only included on request so
    /// that the default output is reproducible byte for byte.
    pub fn to_json_lines(&self, with_timings: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            let line = JsonLine {
                suite: &self.suite,
                outcome: &r.outcome,
                wall_ms: with_timings.then(|| r.wall_time.as_secs_f64() * 1e3),
            };
            out.push_str(&serde_json::to_string(&line).expect("report serializes"));
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self, residual_width: usize) -> String {
        let id_w = self.records.iter().map(|r| r.outcome.id.len()).max().unwrap_or(2).max(8);
        let tag_w = self.records.iter().map(|r| r.outcome.tag.len()).max().unwrap_or(3).max(3);
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        let _ = writeln!(out, "{:id_w$}  {:tag_w$}  {:8}  {:>9}  residual", "identity", "eq", "status", "ms");
        for r in &self.records {
            let o = &r.outcome;
            let mut residual = o.residual.replace('\n', " ");
            if residual.chars().count() > residual_width {
                residual = residual.chars().take(residual_width).collect::<String>() + "...";
            }
            let _ = writeln!(
                out,
                "{:id_w$}  {:tag_w$}  {:8}  {:>9.1}  {}",
                o.id,
                o.tag,
                o.status.label(),
                r.wall_time.as_secs_f64() * 1e3,
                residual
            );
        }
        let _ = writeln!(
            out,
            "{} identities, {} failed",
            self.records.len(),
            self.failures()
        );
        out
    }
}
