//! Structured pass/fail records emitted by every check.

use serde::{Deserialize, Serialize};

/// Outcome of one verification check.
///
/// `max_residual` is 0.0 and `tolerance` 0.0 for exact (rational) checks;
/// `samples`/`seed` are 0 for deterministic ones. `paper_section` carries
/// the catalog section tag the check belongs to (e.g. `"4.1"`, `"7"`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub context: String,
    pub check: String,
    pub samples: u64,
    pub seed: u64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub paper_section: String,
    /// Extra classification payload (angle invariants, solver output).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<String>,
    /// Human-readable witness/diagnostic lines.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub details: Vec<String>,
}

impl VerificationReport {
    pub fn exact(context: &str, check: &str, section: &str, pass: bool) -> Self {
        VerificationReport {
            context: context.into(),
            check: check.into(),
            samples: 0,
            seed: 0,
            max_residual: if pass { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass,
            paper_section: section.into(),
            invariant: None,
            details: Vec::new(),
        }
    }

    pub fn sampled(
        context: &str,
        check: &str,
        section: &str,
        samples: u64,
        seed: u64,
        max_residual: f64,
        tolerance: f64,
    ) -> Self {
        VerificationReport {
            context: context.into(),
            check: check.into(),
            samples,
            seed,
            max_residual,
            tolerance,
            pass: max_residual.is_finite() && max_residual <= tolerance,
            paper_section: section.into(),
            invariant: None,
            details: Vec::new(),
        }
    }

    pub fn with_detail(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }

    pub fn with_invariant(mut self, inv: impl Into<String>) -> Self {
        self.invariant = Some(inv.into());
        self
    }
}
