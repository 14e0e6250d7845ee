//! Embedded planar graphs and the primitives every solver builds on.

pub mod cycle;
pub mod embedding;
pub mod gen;
pub mod plg;
pub mod tree;

pub use cycle::{balanced_infinite_face, pp_dart_weights, Cycle, Sides, TransferWeights};
pub use embedding::{edge_of, rev, Dsu, Embedding, Restriction, INF_COST};
pub use tree::{bfs_tree, shortest_path_tree, shortest_path_tree_by, Tree, UNREACHED};
