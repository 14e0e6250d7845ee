//! Constant-factor approximation of the minimum quotient cut.

mod annuli;
mod cluster;
mod negcycle;
mod params;
mod rooted;
mod search;

pub use annuli::{path_costs, tau_net, Annuli};
pub use cluster::{best_leaf_cycle, Cluster, ClusterOptions, ClusterStats, ClusterTree, Scar};
pub use negcycle::find_negative_cycle;
pub use params::{ApproxParams, TauGrid};
pub use rooted::{
    attach_root, meets_target, simple_parts, weight_reduction, Candidate, Lambda, Prepared,
    ReductionStep, ReductionTrace, RootedStats,
};
pub use search::{approx_min_quotient, ApproxResult, ApproxTrace, LambdaStep};
