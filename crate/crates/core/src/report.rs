//! Machine-readable analysis reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// How much trust a computed number deserves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    /// A valid lower bound on the true value (search budget exhausted).
    LowerBound,
    /// Computed over a seeded random sample.
    Sampled,
}

impl Exactness {
    /// The weaker of two tags: anything sampled is sampled, then lower bounds.
    pub fn and(self, other: Exactness) -> Exactness {
        self.max(other)
    }
}

/// The envelope every analysis command emits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub command: String,
    /// SHA-256 of the canonical JSON form of the input complex.
    pub digest: String,
    pub seed: Option<u64>,
    pub results: Value,
    pub exactness: Exactness,
}

impl AnalysisReport {
    pub fn new(command: impl Into<String>, digest: impl Into<String>, results: Value) -> Self {
        AnalysisReport {
            command: command.into(),
            digest: digest.into(),
            seed: None,
            results,
            exactness: Exactness::Exact,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_exactness(mut self, exactness: Exactness) -> Self {
        self.exactness = exactness;
        self
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
        s.push('\n');
        s
    }
}
