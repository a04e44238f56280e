//! The claim registry: which checks exist and what they stand for.

use serde::{Deserialize, Serialize};

use crate::report::Provenance;

const CLAIMS: &str = include_str!("../data/claims.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    /// Acceptance criteria this claim covers.
    pub criteria: Vec<u32>,
    /// Campaign parameters the claim reads.
    pub params: Vec<String>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    pub version: u32,
    pub claims: Vec<Claim>,
}

impl Registry {
    pub fn builtin() -> Self {
        serde_json::from_str(CLAIMS).expect("embedded claim registry parses")
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn ids(&self) -> Vec<&str> {
        self.claims.iter().map(|c| c.id.as_str()).collect()
    }
}
