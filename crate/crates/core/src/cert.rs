//! Structured verification certificates: one record per checked claim,
//! with the computed and expected values, pass/fail status, and timing.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::time::Instant;

pub const SCHEMA: &str = "ballq-cert/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: &'static str,
    /// stable claim identifier, e.g. "index.pi"
    pub id: String,
    /// human-readable statement of the claim
    pub description: String,
    pub computed: Value,
    pub expected: Value,
    pub status: Status,
    pub millis: u128,
}

impl Certificate {
    pub fn from_values<T, U>(id: &str, description: &str, computed: T, expected: U, t0: Instant) -> Self
    where
        T: Serialize,
        U: Serialize,
    {
        let computed = serde_json::to_value(computed).expect("serializable");
        let expected = serde_json::to_value(expected).expect("serializable");
        let status = if computed == expected {
            Status::Pass
        } else {
            Status::Fail
        };
        Certificate {
            schema: SCHEMA,
            id: id.to_string(),
            description: description.to_string(),
            computed,
            expected,
            status,
            millis: t0.elapsed().as_millis(),
        }
    }

    pub fn pass_if(id: &str, description: &str, ok: bool, detail: Value, t0: Instant) -> Self {
        Certificate {
            schema: SCHEMA,
            id: id.to_string(),
            description: description.to_string(),
            computed: detail,
            expected: Value::Bool(true),
            status: if ok { Status::Pass } else { Status::Fail },
            millis: t0.elapsed().as_millis(),
        }
    }

    pub fn skipped(id: &str, description: &str, reason: &str) -> Self {
        Certificate {
            schema: SCHEMA,
            id: id.to_string(),
            description: description.to_string(),
            computed: Value::String(reason.to_string()),
            expected: Value::Null,
            status: Status::Skipped,
            millis: 0,
        }
    }

    pub fn failed(id: &str, description: &str, error: &str) -> Self {
        Certificate {
            schema: SCHEMA,
            id: id.to_string(),
            description: description.to_string(),
            computed: Value::String(error.to_string()),
            expected: Value::Null,
            status: Status::Fail,
            millis: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Sort by claim id for a deterministic stream.
pub fn sort_certificates(certs: &mut [Certificate]) {
    certs.sort_by(|a, b| a.id.cmp(&b.id));
}

pub fn all_passed(certs: &[Certificate]) -> bool {
    certs.iter().all(|c| c.passed())
}
