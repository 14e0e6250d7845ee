//! Generators for the hardness-reduction instances, each with a verifier
//! that checks the instance's claimed structure against the oracles.

mod diamond;
mod minplus;
mod sets;

pub use diamond::{gen_diamond, verify_diamond, DiamondInstance, DiamondMeta};
pub use minplus::{
    gen_minplus, gen_minplus_with, has_witness, verify_minplus, MinPlusInstance, MinPlusMeta,
    BETA_FACTOR, SAFE_BETA_FACTOR,
};
pub use sets::{gen_sets, verify_sets, SetsInstance, SetsMeta, SetsOptions, SetsVariant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of a verifier: every check with its evidence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(kind: &str) -> Report {
        Report {
            kind: kind.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// `Err(ClaimViolated)` naming the first failed check.
    pub fn into_result(self) -> Result<Report> {
        match self.checks.iter().find(|c| !c.pass) {
            Some(c) => Err(Error::ClaimViolated(format!("{}: {}", c.name, c.detail))),
            None => Ok(self),
        }
    }
}

/// Which kind of instance a meta file describes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Meta {
    Minplus(MinPlusMeta),
    Diamond(DiamondMeta),
    Sets(SetsMeta),
}
