//! Machine-readable verification reports shared by the CLI and the batch
//! verifiers.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational output that is not a gated check.
    Diagnostic,
}

/// Envelope for one command or one verification run.  `verdict` is `fail`
/// iff at least one gated check failed; wall time is reported but never part
/// of equality comparisons.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub verdict: Verdict,
    pub details: serde_json::Value,
    pub wall_ms: f64,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>, verdict: Verdict, details: serde_json::Value) -> Self {
        Self {
            command: command.into(),
            verdict,
            details,
            wall_ms: 0.0,
        }
    }

    pub fn with_wall(mut self, wall: std::time::Duration) -> Self {
        self.wall_ms = wall.as_secs_f64() * 1e3;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_serialization() {
        let r = VerificationReport::new("x", Verdict::Pass, serde_json::json!({"n": 1}));
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"verdict\":\"pass\""));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert!(back.passed());
    }
}
