//! Admissible fillings: plans, mutation sequences, cobordism maps on chords
//! and the torus chart cut out by the curve variables.

mod census;
mod ledger;
mod maps;
mod pipeline;
mod plan;
mod scan;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::braid::BraidError;
use crate::cluster::ClusterError;
use crate::ncalg::NcError;

pub use census::{all_pinch_orders, distinct_seeds};
pub use ledger::{compile_mutation_sequence, compile_steps, stack_cancel, Compiler, Ledger};
pub use maps::{braid_move_map, rotation_map};
pub use pipeline::{final_seed, run_filling, FillingResult, Item, LinkState, TorusChart};
pub use plan::{Move, Plan};
pub use scan::{d_matrix, marker_push, pinch_scan, scan_with, MarkerPush, Scan};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FillingError {
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("no unfrozen vertex <{level},{index}> in the ledger")]
    LedgerUnderflow { level: usize, index: usize },
    #[error("backward rotation has no chord map")]
    BackwardUnsupported,
    #[error("final variable is not a monomial: {0}")]
    NonMonomial(String),
    #[error("cannot solve marker relations: {0}")]
    UnsolvableRelations(String),
    #[error("plan leaves {0} crossings unpinched")]
    IncompletePlan(usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Nc(#[from] NcError),
}
