//! Structured pass/fail reports for the verification suites.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub pass: bool,
    /// Number of basis words / cases examined.
    pub checked: usize,
    /// First counterexample, rendered, when the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn record(
        &mut self,
        name: &str,
        degree: Option<usize>,
        checked: usize,
        witness: Option<String>,
    ) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            degree,
            pass: witness.is_none(),
            checked,
            witness,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn render_text(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                let status = if c.pass { "PASS" } else { "FAIL" };
                let degree = c.degree.map(|d| format!(" degree={d}")).unwrap_or_default();
                let witness = c
                    .witness
                    .as_ref()
                    .map(|w| format!(" witness: {w}"))
                    .unwrap_or_default();
                format!("[{status}] {}{degree} ({} cases){witness}", c.name, c.checked)
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}
