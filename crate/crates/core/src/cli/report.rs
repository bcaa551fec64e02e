use std::fmt;

use serde::Serialize;

use super::checks::CheckOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
}

/// Summary of a `verify` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub version: String,
    pub command: String,
    pub checks: Vec<CheckOutcome>,
    pub overall: Overall,
}

impl RunReport {
    pub fn new(command: String, checks: Vec<CheckOutcome>) -> Self {
        let overall = if checks.iter().all(|c| c.passed) { Overall::Pass } else { Overall::Fail };
        RunReport { version: env!("CARGO_PKG_VERSION").to_string(), command, checks, overall }
    }

    pub fn passed(&self) -> bool {
        self.overall == Overall::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "schett {} :: {}", self.version, self.command)?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "[{status}] {} ({}): {}", c.name, params.join(", "), c.detail)?;
            if let Some(ms) = c.timing_ms {
                write!(f, " [{ms} ms]")?;
            }
            writeln!(f)?;
        }
        let overall = match self.overall {
            Overall::Pass => "PASS",
            Overall::Fail => "FAIL",
        };
        write!(f, "overall: {overall}")
    }
}
