use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

/// Outcome of one check. `claim` quotes the statement being tested.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: String,
    pub claim: String,
    pub params: Value,
    pub status: Status,
    pub max_defect: Option<f64>,
    pub evidence: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl Report {
    pub fn new(check: &str, claim: &str, params: Value, status: Status) -> Self {
        Self {
            check: check.into(),
            claim: claim.into(),
            params,
            status,
            max_defect: None,
            evidence: Vec::new(),
            details: Value::Null,
        }
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}
