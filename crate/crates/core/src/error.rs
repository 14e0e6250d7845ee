use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rotation system is not planar: V - E + F = {euler} (expected 2)")]
    NonPlanarEmbedding { euler: i64 },
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("edge {edge} has non-positive cost {cost}")]
    NonpositiveCost { edge: usize, cost: i64 },
    #[error("negative weight {weight} on vertex {vertex}")]
    NegativeWeight { vertex: usize, weight: i64 },
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("dart {0} belongs to the spanning tree")]
    DartInTree(usize),
    #[error("cycle crosses itself in the embedding")]
    SelfCrossingCycle,
    #[error("graph admits no cut with positive weight on both sides")]
    NoCut,
    #[error("total weight {0} is odd")]
    OddTotalWeight(i64),
    #[error("no perfectly balanced cut exists")]
    NoBalancedCut,
    #[error("input of size {size} exceeds oracle budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("sequences have different lengths")]
    LengthMismatch,
    #[error("weight reduction found no positive dart while enclosed weight exceeds the bound")]
    NoPositiveDart,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("claim violated: {0}")]
    ClaimViolated(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
