//! Machine-readable check reports.

use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A bounded search ended without a certificate or a refutation.
    NotCertified,
}

/// One check outcome. A failing report always carries a `witness` detail.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub inputs: String,
    pub digest: String,
    pub status: Status,
    pub details: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

/// First 16 hex digits of the SHA-256 of the input description.
pub fn digest(inputs: &str) -> String {
    let h = Sha256::digest(inputs.as_bytes());
    h.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

impl CheckReport {
    pub fn new(check: &str, inputs: impl Into<String>) -> CheckReport {
        let inputs = inputs.into();
        CheckReport { check: check.to_string(), digest: digest(&inputs), inputs, status: Status::Pass, details: Map::new(), wall_time_ms: None }
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> CheckReport {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn fail(mut self, witness: impl Into<Value>) -> CheckReport {
        self.status = Status::Fail;
        self.detail("witness", witness)
    }

    /// Fail with `witness` unless `ok`.
    pub fn require(self, ok: bool, witness: impl FnOnce() -> Value) -> CheckReport {
        if ok || self.status == Status::Fail {
            self
        } else {
            self.fail(witness())
        }
    }

    pub fn not_certified(mut self, reason: &str) -> CheckReport {
        if self.status == Status::Pass {
            self.status = Status::NotCertified;
        }
        self.detail("reason", reason)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Run `f` and stamp every report with the total wall time when `timings` is set.
pub fn timed<E>(timings: bool, f: impl FnOnce() -> Result<Vec<CheckReport>, E>) -> Result<Vec<CheckReport>, E> {
    let t = Instant::now();
    let mut out = f()?;
    if timings {
        let ms = t.elapsed().as_millis() as u64;
        for r in &mut out {
            r.wall_time_ms = Some(ms);
        }
    }
    Ok(out)
}

/// 0 when no report failed, 1 otherwise.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    i32::from(reports.iter().any(|r| r.status == Status::Fail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fail_carries_witness() {
        let r = CheckReport::new("x", "n=1").require(false, || "w".into());
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.details["witness"], "w");
        assert_eq!(exit_code(&[r]), 1);
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest("abc"), "ba7816bf8f01cfea");
        let a = CheckReport::new("x", "n=1").detail("b", 1).detail("a", 2).to_json_line();
        assert!(a.find("\"a\"").unwrap() < a.find("\"b\"").unwrap());
    }

    #[test]
    fn not_certified_is_not_a_failure() {
        let r = CheckReport::new("x", "").not_certified("bound");
        assert_eq!(exit_code(std::slice::from_ref(&r)), 0);
        assert!(!r.passed());
    }
}
