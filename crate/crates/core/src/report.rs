//! Structured verification outcomes shared by every checker.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check ran but its hypothesis does not hold, so no outcome is expected.
    Informational,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Informational => "informational",
        })
    }
}

/// The result of one verification: a name, a status, the first
/// counterexample when there is one, and any integer matrices worth keeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            status: Status::Pass,
            witness: None,
            note: None,
            matrices: BTreeMap::new(),
        }
    }

    pub fn fail(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Self {
            status: Status::Fail,
            witness: Some(witness.into()),
            ..Self::pass(check)
        }
    }

    /// Pass when `witness` is `None`, fail with it otherwise.
    pub fn from_witness(check: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(check),
            Some(w) => Self::fail(check, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Downgrade to informational, keeping the observed outcome in the note.
    pub fn informational(mut self, reason: &str) -> Self {
        let observed = self.status;
        self.status = Status::Informational;
        let reason = format!("{reason}; observed outcome: {observed}");
        self.note = Some(match self.note.take() {
            Some(note) => format!("{note}; {reason}"),
            None => reason,
        });
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_matrix(mut self, name: impl Into<String>, m: Vec<Vec<i64>>) -> Self {
        self.matrices.insert(name.into(), m);
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.status)?;
        if let Some(w) = &self.witness {
            write!(f, " (witness: {w})")?;
        }
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// Combine sub-reports: fails if any failed, keeping the first witness.
pub fn combine(check: impl Into<String>, parts: &[CheckReport]) -> CheckReport {
    let check = check.into();
    match parts.iter().find(|r| r.status == Status::Fail) {
        Some(r) => CheckReport::fail(
            check,
            format!("{}: {}", r.check, r.witness.clone().unwrap_or_default()),
        ),
        None => CheckReport::pass(check),
    }
}
