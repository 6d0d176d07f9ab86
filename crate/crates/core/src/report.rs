//! Machine-readable results of verification runs.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

/// One named check with an optional replayable counterexample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            detail: detail.into(),
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, counterexample: Option<Value>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
            counterexample,
        }
    }

    pub fn unknown(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Unknown,
            detail: detail.into(),
            counterexample: None,
        }
    }

    /// Pass when `counterexample` is `None`, fail with it otherwise.
    pub fn from_outcome(name: impl Into<String>, detail: impl Into<String>, counterexample: Option<Value>) -> Self {
        match counterexample {
            None => Self::pass(name, detail),
            Some(c) => Self::fail(name, detail, Some(c)),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// The outcome of one command: what ran, over what, and every check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub ring: String,
    pub algebra: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: impl Into<String>, ring: impl Into<String>, algebra: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ring: ring.into(),
            algebra: algebra.into(),
            checks: Vec::new(),
            data: None,
            timing_ms: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// No check failed; unknown results do not count as failures.
    pub fn ok(&self) -> bool {
        self.failures().next().is_none()
    }
}
