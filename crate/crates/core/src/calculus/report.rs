use serde::Serialize;
use serde_json::Value;

use super::RealizationContext;

/// Violations beyond this many are counted but not listed.
pub const MAX_LISTED: usize = 25;

/// Outcome of one checker.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub algebra: String,
    pub ordering: String,
    #[serde(rename = "N")]
    pub trunc: u32,
    #[serde(rename = "D")]
    pub degree: u32,
    pub pass: bool,
    pub violations: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// `PASS name` or `FAIL name (k violations)`.
    pub fn summary(&self) -> String {
        if self.pass {
            format!("PASS {}", self.check)
        } else {
            format!("FAIL {} ({} violations)", self.check, self.violations.len())
        }
    }
}

impl RealizationContext {
    pub(crate) fn report(&self, check: &str, violations: Vec<Option<Value>>, mut notes: Vec<String>) -> CheckReport {
        let mut listed: Vec<Value> = violations.into_iter().flatten().collect();
        let total = listed.len();
        if total > MAX_LISTED {
            listed.truncate(MAX_LISTED);
            notes.push(format!("{} violations, first {MAX_LISTED} listed", total));
        }
        CheckReport {
            check: check.to_string(),
            algebra: self.lie().name().to_string(),
            ordering: self.ordering().to_string(),
            trunc: self.trunc(),
            degree: self.degree(),
            pass: total == 0,
            violations: listed,
            notes,
        }
    }
}
