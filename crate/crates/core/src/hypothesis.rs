//! Hypothesis ledgers attached to reports.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    /// Checked on a window truncated at the saturation point of the powers.
    Clipped,
    Unchecked,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub stage: String,
    pub hypothesis: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl Hypothesis {
    pub fn new(stage: &str, hypothesis: impl Into<String>, status: Status, witness: Option<String>) -> Self {
        Self { stage: stage.into(), hypothesis: hypothesis.into(), status, witness }
    }

    pub fn check(stage: &str, hypothesis: impl Into<String>, holds: bool, witness: Option<String>) -> Self {
        let status = if holds { Status::Holds } else { Status::Fails };
        Self::new(stage, hypothesis, status, if holds { None } else { witness })
    }
}

/// No entry is `fails`; `clipped` and `unchecked` entries do not block.
pub fn none_fail(ledger: &[Hypothesis]) -> bool {
    ledger.iter().all(|h| h.status != Status::Fails)
}

/// Outcome of an asserted inequality, `n/a` when its hypotheses fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "holds")]
    Holds,
    #[serde(rename = "fails")]
    Fails,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Verdict {
    pub fn gated(applicable: bool, holds: bool) -> Self {
        match (applicable, holds) {
            (false, _) => Verdict::NotApplicable,
            (true, true) => Verdict::Holds,
            (true, false) => Verdict::Fails,
        }
    }

    pub fn is_failure(self) -> bool {
        self == Verdict::Fails
    }
}
