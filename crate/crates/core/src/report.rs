use std::fmt;

use serde::Serialize;

/// One line of a pass/fail report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub label: String,
    pub passed: bool,
    /// Reported but not counted toward the verdict.
    pub informational: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.rows.push(CheckRow {
            label: label.into(),
            passed,
            informational: false,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, label: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.rows.push(CheckRow {
            label: label.into(),
            passed: holds,
            informational: true,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: CheckReport) {
        for mut r in other.rows {
            r.label = format!("{}: {}", other.name, r.label);
            self.rows.push(r);
        }
    }

    /// True when every counted row passed (vacuously true when empty).
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.informational || r.passed)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "check": self.name,
            "passed": self.passed(),
            "rows": self.rows,
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, if self.passed() { "PASS" } else { "FAIL" })?;
        for r in &self.rows {
            let tag = match (r.informational, r.passed) {
                (true, true) => "holds",
                (true, false) => "differs",
                (false, true) => "pass",
                (false, false) => "FAIL",
            };
            write!(f, "  [{tag:>7}] {}", r.label)?;
            if !r.detail.is_empty() {
                write!(f, "  {}", r.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Human-readable list of disagreements from `ComputedBetti::diff`.
pub(crate) fn describe_diff(diff: &[(i64, Option<u32>, usize, usize)]) -> String {
    diff.iter()
        .map(|(d, w, x, y)| match w {
            Some(w) => format!("({d},{w}): {x} vs {y}"),
            None => format!("{d}: {x} vs {y}"),
        })
        .collect::<Vec<_>>()
        .join("; ")
}
