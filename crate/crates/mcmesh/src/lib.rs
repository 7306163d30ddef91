//! Deterministic toolkit for multicast in multi-radio multi-channel
//! wireless mesh networks: topology generation, multicast tree
//! construction, channel assignment, interference-aware slotted
//! simulation, and autowave shortest paths.

pub mod assignment;
pub mod dspcnn;
pub mod error;
pub mod fixtures;
pub mod interference;
pub mod io;
pub mod lca;
pub mod mcm;
pub mod sim;
pub mod topology;
pub mod tree;

pub use assignment::ChannelAssignment;
pub use dspcnn::{
    dijkstra_oracle, dspcnn_shortest_path, dspcnn_with_state, mesh_to_weighted,
    pcnn_shortest_path, EdgeWeightMode, Meeting, PathResult, Solver, WaveState, WaveTag,
    WeightedGraph,
};
pub use error::{MeshError, Result};
pub use interference::{
    interference_range, links_conflict, objective_for_channel, pairwise_objective,
    InterferenceParams,
};
pub use lca::{lca_assign_channels, lca_build_tree};
pub use mcm::{
    ascending_assignment, heuristic_assignment, heuristic_assignment_traced, mcm_build_tree,
    mcm_build_tree_traced, min_relay_cover, AssignmentStep, CoverInstance, LevelCover,
};
pub use sim::{simulate_multicast, SimConfig, SimMetrics, METRICS_CSV_HEADER};
pub use topology::{
    bfs_levels, build_tree_mesh, LevelDecomposition, MeshNetwork, NodeId, Position, TreeMesh,
};
pub use tree::MulticastTree;
