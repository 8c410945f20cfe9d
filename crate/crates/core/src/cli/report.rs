//! Check reports with a stable JSON layout.

use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportCheck {
    pub id: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub checks: Vec<ReportCheck>,
    pub passed: usize,
    pub failed: usize,
    pub exit: i32,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA,
            suite: suite.into(),
            checks: Vec::new(),
            passed: 0,
            failed: 0,
            exit: 0,
        }
    }

    pub fn push(&mut self, id: impl Into<String>, ok: bool, witness: Option<String>) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.exit = 1;
        }
        self.checks.push(ReportCheck {
            id: id.into(),
            status: if ok { "pass" } else { "fail" },
            witness,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Summary line plus one line per failure.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {} checks, {} passed, {} failed\n",
            self.suite,
            self.checks.len(),
            self.passed,
            self.failed
        );
        for c in self.checks.iter().filter(|c| c.status == "fail") {
            out.push_str(&format!("FAIL {}", c.id));
            if let Some(w) = &c.witness {
                out.push_str(&format!(": {w}"));
            }
            out.push('\n');
        }
        out
    }
}
