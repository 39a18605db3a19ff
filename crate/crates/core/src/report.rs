//! Pass/fail verdicts shared by the verification suites.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
}

impl Verdict {
    pub fn pass(check: impl Into<String>) -> Verdict {
        Verdict { check: check.into(), verdict: "pass".into(), witness: None }
    }

    pub fn fail(check: impl Into<String>, witness: Value) -> Verdict {
        Verdict { check: check.into(), verdict: "fail".into(), witness: Some(witness) }
    }

    pub fn from_result(check: impl Into<String>, r: Result<(), Value>) -> Verdict {
        match r {
            Ok(()) => Verdict::pass(check),
            Err(w) => Verdict::fail(check, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

pub fn all_pass(vs: &[Verdict]) -> bool {
    vs.iter().all(Verdict::passed)
}

/// Fail verdicts among `vs`.
pub fn failures(vs: &[Verdict]) -> Vec<&Verdict> {
    vs.iter().filter(|v| !v.passed()).collect()
}
