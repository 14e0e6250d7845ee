//! Sparsest and minimum quotient cuts in planar graphs: exact and
//! approximate solvers, hardness-gadget generators and brute-force oracles.

pub mod approx;
pub mod cut;
pub mod error;
pub mod exact;
pub mod frac;
pub mod hardness;
pub mod oracle;
pub mod planar;

pub use cut::{CutResult, Objective};
pub use error::{Error, Result};
pub use frac::Frac;
pub use planar::Embedding;
