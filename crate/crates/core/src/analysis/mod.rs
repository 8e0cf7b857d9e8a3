//! Conjecture checks, fixture comparison and the check suite.

pub mod checks;
pub mod fixture;
pub mod suite;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use checks::{
    comparison_check, fixture_compare, positivity_check, pure_qb_truncation_check, reduction_check, sole_qf_vanishing_check,
    support_check, symmetry_check_tq,
};
pub use fixture::{load_fixtures, Expected, Fixture};
pub use suite::{Outcome, Suite, SuiteConfig, SuiteName, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Result of one check. A failing report always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn pass(id: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport { id: id.into(), verdict: Verdict::Pass, detail: detail.into(), witness: None }
    }

    pub fn fail(id: impl Into<String>, detail: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckReport { id: id.into(), verdict: Verdict::Fail, detail: detail.into(), witness: Some(witness.into()) }
    }

    pub fn inconclusive(id: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport { id: id.into(), verdict: Verdict::Inconclusive, detail: detail.into(), witness: None }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.verdict, self.id, self.detail)?;
        if let Some(w) = &self.witness {
            write!(f, " [witness: {w}]")?;
        }
        Ok(())
    }
}
