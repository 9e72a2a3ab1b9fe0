//! Reference solvers: one bag-local dynamic program per supported property.
//!
//! Each solver packs its per-bag profile into a `u64` key over bag
//! *positions* (indices into the sorted bag), re-indexing on introduce and
//! forget so that equal profiles always encode to equal keys.

mod cluster;
mod cograph;
mod connected;
mod dominating;

pub use cluster::MaximalClusterSolver;
pub use cograph::CographSolver;
pub use connected::ConnectedAtLeastSolver;
pub use dominating::DominatingSetSolver;

use crate::engine::SolverCallbacks;

/// Registry ids of every shipped solver.
pub const SOLVER_IDS: &[&str] = &[
    "dominating-set",
    "connected-ge-k",
    "cograph",
    "bipartite-cograph",
    "maximal-cluster-graph",
];

/// Looks a solver up by its registry id. `connected-ge-k` uses the default
/// threshold of 4.
pub fn solver_by_id(id: &str) -> Option<Box<dyn SolverCallbacks>> {
    match id {
        "dominating-set" => Some(Box::new(DominatingSetSolver::new())),
        "connected-ge-k" => Some(Box::new(ConnectedAtLeastSolver::new(4))),
        "cograph" => Some(Box::new(CographSolver::new())),
        "bipartite-cograph" => Some(Box::new(CographSolver::bipartite())),
        "maximal-cluster-graph" => Some(Box::new(MaximalClusterSolver::new())),
        _ => None,
    }
}
