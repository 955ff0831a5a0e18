//! Machine-readable run reports. Identical inputs give identical bytes; the
//! wall time is only recorded on request.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::rational::{serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub status: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCounts {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 of the input bytes, hex encoded.
    pub instance_digest: String,
    pub rows: Vec<ReportRow>,
    pub suite: SuiteCounts,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunReport {
    pub fn new(command: Vec<String>, input: &[u8]) -> Self {
        RunReport {
            command,
            instance_digest: digest(input),
            rows: Vec::new(),
            suite: SuiteCounts::default(),
            notes: Vec::new(),
            wall_time_ms: None,
        }
    }

    pub fn row(&mut self, label: impl Into<String>, value: Rational, status: impl Into<String>) {
        self.rows.push(ReportRow { label: label.into(), value, status: status.into() });
    }

    /// Record a check; failing checks count against the suite.
    pub fn check(&mut self, label: impl Into<String>, value: Rational, ok: bool, pass: &str, fail: &str) {
        if ok {
            self.suite.passed += 1;
        } else {
            self.suite.failed += 1;
        }
        self.row(label, value, if ok { pass } else { fail });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialises");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rows_round_trip_through_text() {
        let mut r = RunReport::new(vec!["solve".into()], b"{}");
        r.check("value", rat(-7, 3), true, "PASS", "FAIL");
        let text = r.to_json();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"-7/3\""));
        assert!(!text.contains("wall_time_ms"));
        assert_eq!(r.instance_digest, "44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a");
    }
}
