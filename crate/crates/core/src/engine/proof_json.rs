use serde::{Deserialize, Serialize};

use super::ProofTree;

/// Proof exchange format: formulas are canonical printed strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofDocument {
    pub calculus: String,
    pub root: ProofTree,
}

impl ProofDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("proof serializes")
    }

    pub fn from_json(text: &str) -> Result<ProofDocument, serde_json::Error> {
        serde_json::from_str(text)
    }
}
