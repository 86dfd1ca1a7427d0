//! Treelike network models.
//!
//! Deterministic growth of subdivision, star-fractal, T-graph, Cayley and
//! exponential trees; exact Wiener indices by breadth-first search and by
//! closed form; mean first-passage times of unbiased random walks; fractal
//! and spectral dimensions; and an audit harness that checks every closed
//! form against the brute-force oracle.

pub mod analysis;
pub mod cli;
pub mod closed_forms;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod growth;
pub mod random_walk;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use tree::{diameter, wiener_edge_cut, wiener_oracle, Tree, VertexId};
