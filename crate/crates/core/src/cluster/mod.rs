//! Quivers with doubled exchange matrices, cluster K2 seeds, mutation and
//! marked-point reduction.

mod quiver;
mod reduction;
mod render;
mod seed;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use quiver::{initial_quiver, Arrow, Quiver, Vertex};
pub use reduction::{marker_components, reduce_marked_points, Reduction, ReductionSpec};
pub use render::{quiver_dot, seed_from_json, seed_to_json, SeedJson, VertexJson};
pub use seed::{initial_seed, seeds_equal, Seed};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("vertex {0} is inactive")]
    InactiveVertex(usize),
    #[error("no vertex with id {0}")]
    UnknownVertex(usize),
    #[error("malformed seed: {0}")]
    Malformed(String),
    #[error("invalid reduction: {0}")]
    InvalidReduction(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
