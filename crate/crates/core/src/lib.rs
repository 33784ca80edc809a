pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod ratio;
pub mod reconstruct;
pub mod search;
pub mod solver;
pub mod tree;

pub use error::{Error, Result};
pub use graph::WeightedGraph;
pub use reconstruct::{expansion, reconstruct_subpartition, validate_subpartition, Subpartition, Violation};
pub use search::{
    decide_forest, decide_semisupervised, k_max, k_max_for, k_max_forest, min_xi, min_xi_forest, min_xi_semisupervised,
    Forest, ForestDecision, OptimizationResult, SearchMode,
};
pub use solver::{decide, decide_cmsc, epsilon, root_feasibility, solve, Choice, DpTables, ProblemSpec, RootFeasibility};
pub use tree::{scale_instance, EdgeSpec, RootedTree, ScaledInstance, ScaledValue, TreeBuilder, VertexSpec};
