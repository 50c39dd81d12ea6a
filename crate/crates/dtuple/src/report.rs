//! Bound reports: a computed quantity paired with the bound it is checked
//! against, plus the outcome of the comparison.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Quantity is within the bound.
    Holds,
    /// Quantity exceeds the bound.
    Fails,
    /// The bound's hypotheses are not met; no comparison was made.
    Inapplicable,
    /// The bound was evaluated but there was nothing to compare it against.
    Unchecked,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub label: String,
    pub quantity: f64,
    pub bound: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    /// Compare `quantity <= bound + tol` and record the outcome.
    pub fn checked(label: impl Into<String>, quantity: f64, bound: f64, tol: f64) -> Self {
        let verdict = if quantity <= bound + tol {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        BoundReport {
            label: label.into(),
            quantity,
            bound,
            verdict,
            note: None,
        }
    }

    pub fn inapplicable(label: impl Into<String>, note: impl Into<String>) -> Self {
        BoundReport {
            label: label.into(),
            quantity: f64::NAN,
            bound: f64::NAN,
            verdict: Verdict::Inapplicable,
            note: Some(note.into()),
        }
    }

    /// A bound evaluated with no concrete quantity to check it against.
    pub fn unchecked(label: impl Into<String>, quantity: f64, bound: f64) -> Self {
        BoundReport {
            label: label.into(),
            quantity,
            bound,
            verdict: Verdict::Unchecked,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}
