//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

/// One check record: either a passing group with its comparison count, or a
/// single failing comparison with the data that disagreed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub got: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    pub ok: bool,
}

impl CheckRecord {
    pub fn group(id: &str, count: usize, ok: bool) -> CheckRecord {
        CheckRecord {
            id: id.to_string(),
            indices: None,
            expected: None,
            got: None,
            count: Some(count),
            ok,
        }
    }

    pub fn failure(id: &str, indices: String, expected: String, got: String) -> CheckRecord {
        CheckRecord {
            id: id.to_string(),
            indices: Some(indices),
            expected: Some(expected),
            got: Some(got),
            count: None,
            ok: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceReport {
    pub family: Option<String>,
    pub params: Vec<(String, i64)>,
    pub checks: Vec<CheckRecord>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    pub instances: Vec<InstanceReport>,
    /// Grid points whose parameters were invalid for the family.
    pub skipped_invalid: usize,
    pub ok: bool,
    pub timing_ms: u128,
}

impl VerificationReport {
    pub fn finalize(&mut self) {
        self.ok = self.instances.iter().all(|i| i.ok);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let report = VerificationReport {
            suite: "krein".into(),
            order: Some("grlex".into()),
            grid: Some("n=3..4,k=1..n-1".into()),
            instances: vec![InstanceReport {
                family: Some("nbj".into()),
                params: vec![("r".into(), 3), ("n".into(), 3), ("k".into(), 1)],
                checks: vec![
                    CheckRecord::group("closed = spectral", 50, true),
                    CheckRecord::failure("support", "(0,1)".into(), "0".into(), "1/2".into()),
                ],
                ok: false,
            }],
            skipped_invalid: 2,
            ok: false,
            timing_ms: 12,
        };
        let text = serde_json::to_string(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
