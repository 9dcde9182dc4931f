//! Verification and grading reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::ToolError;

/// Bumped whenever the report layout changes; the schema lives in `schema/report.schema.json`.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the source tables.
    Paper,
    /// Computed by an independent route.
    Derived,
    /// Holds by definition.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub criterion: u8,
    pub location: String,
    pub provenance: Provenance,
    pub expected: String,
    pub computed: String,
    #[serde(flatten)]
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str, checks: Vec<CheckRecord>) -> VerificationReport {
        let mut summary = Summary { total: checks.len(), ..Summary::default() };
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped { .. } => summary.skipped += 1,
            }
        }
        VerificationReport { schema_version: REPORT_SCHEMA_VERSION, suite: suite.into(), checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match &c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped { .. } => "SKIP",
            };
            let _ = write!(out, "{status}  {:<44} expected {:<28} computed {}", c.id, c.expected, c.computed);
            if let Status::Skipped { reason } = &c.status {
                let _ = write!(out, "  [{reason}]");
            }
            if let Some(ms) = c.runtime_ms {
                let _ = write!(out, "  ({ms} ms)");
            }
            out.push('\n');
        }
        let s = self.summary;
        let _ = writeln!(out, "{} checks: {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, s.skipped);
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# Verification report: {}\n\n", self.suite);
        out.push_str("| id | criterion | location | expected | computed | status |\n|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let status = match &c.status {
                Status::Pass => "pass".to_string(),
                Status::Fail => "fail".to_string(),
                Status::Skipped { reason } => format!("skipped: {reason}"),
            };
            let _ = writeln!(out, "| {} | {} | {} | {} | {} | {} |", c.id, c.criterion, c.location, c.expected, c.computed, status);
        }
        let s = self.summary;
        let _ = writeln!(out, "\n{} checks: {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, s.skipped);
        out
    }
}

/// One homogeneous component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRow {
    pub degree: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRow {
    pub name: String,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingReport {
    pub model: String,
    pub generators: Vec<GeneratorRow>,
    pub torus_rank: usize,
    #[serde(rename = "type")]
    pub grading_type: String,
    pub counts: Vec<usize>,
    pub identity_dim: usize,
    pub universal_group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universal_group_note: Option<String>,
    pub census: Option<String>,
    pub components: Vec<ComponentRow>,
}

impl GradingReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// The components as `degree,dim` rows.
    pub fn to_csv(&self) -> Result<String, ToolError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for row in &self.components {
            writer.serialize(row).map_err(|e| ToolError::Computation(e.to_string()))?;
        }
        let bytes = writer.into_inner().map_err(|e| ToolError::Computation(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# Grading on the {} model\n\n", self.model);
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{} (order {})", g.name, g.order)).collect();
        let _ = writeln!(out, "- generators: {}", if gens.is_empty() { "none".into() } else { gens.join(", ") });
        let _ = writeln!(out, "- torus rank: {}", self.torus_rank);
        let _ = writeln!(out, "- type: {}", self.grading_type);
        let _ = writeln!(out, "- identity component: {}", self.identity_dim);
        match (&self.universal_group, &self.universal_group_note) {
            (Some(g), _) => {
                let _ = writeln!(out, "- universal group: {g}");
            }
            (None, Some(note)) => {
                let _ = writeln!(out, "- universal group: not computed ({note})");
            }
            (None, None) => {}
        }
        if let Some(c) = &self.census {
            let _ = writeln!(out, "- census: {c}");
        }
        out.push_str("\n| degree | dim |\n|---|---|\n");
        for c in &self.components {
            let _ = writeln!(out, "| {} | {} |", c.degree, c.dim);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, status: Status) -> CheckRecord {
        CheckRecord {
            id: id.into(),
            criterion: 1,
            location: "class table".into(),
            provenance: Provenance::Paper,
            expected: "1".into(),
            computed: "1".into(),
            status,
            detail: None,
            runtime_ms: None,
        }
    }

    #[test]
    fn summary_counts_each_status() {
        let report = VerificationReport::new(
            "tables",
            vec![record("a", Status::Pass), record("b", Status::Fail), record("c", Status::Skipped { reason: "open".into() })],
        );
        assert_eq!(report.summary, Summary { total: 3, passed: 1, failed: 1, skipped: 1 });
        assert!(!report.all_passed());
    }

    #[test]
    fn json_round_trips_and_flattens_the_status() {
        let report = VerificationReport::new("tables", vec![record("a", Status::Skipped { reason: "open".into() })]);
        let json = report.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["checks"][0]["status"], "skipped");
        assert_eq!(value["checks"][0]["reason"], "open");
        assert!(value["checks"][0].get("runtime_ms").is_none());
        assert_eq!(serde_json::from_str::<VerificationReport>(&json).unwrap(), report);
    }

    #[test]
    fn csv_has_one_row_per_component() {
        let report = GradingReport {
            model: "q14".into(),
            generators: vec![],
            torus_rank: 0,
            grading_type: "(1)/0".into(),
            counts: vec![1],
            identity_dim: 0,
            universal_group: None,
            universal_group_note: None,
            census: None,
            components: vec![ComponentRow { degree: "(1,0)".into(), dim: 1 }, ComponentRow { degree: "(0,1)".into(), dim: 3 }],
        };
        assert_eq!(report.to_csv().unwrap(), "degree,dim\n\"(1,0)\",1\n\"(0,1)\",3\n");
    }
}
