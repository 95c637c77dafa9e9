//! Minimum-cost temporal walks under per-node waiting constraints.
//!
//! A graph comes with two orderings of its edges, by arrival and by
//! departure within each node. From these a single scan computes, for a
//! source `s` and every edge `e`, the minimum cost of a walk from `s`
//! ending with `e`. Costs are pluggable through [`CostStructure`].

pub mod batch;
pub mod benchharness;
pub mod cli;
pub mod cost;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod mincost;
pub mod oracle;
pub mod reachability;
pub mod representation;
pub mod zerocycle;

pub use cost::{CostStructure, FewestEdges, LinComb, LinCombParams, LinCost, SfCost, ShortestFastest};
pub use error::{CostError, GraphError, RepError, SolveError};
pub use graph::{EdgeId, MaxWait, NodeId, TemporalEdge, TemporalGraph, Time, WaitingBounds, Walk, WalkMetrics};
pub use mincost::{
    min_cost_walks, min_cost_walks_with, reconstruct_min_walk, solve_fewest_edges, solve_lincomb,
    solve_min_waiting, solve_profile, solve_profile_bounded_source, solve_shortest_fastest, MinCostResult,
    ProfileSegment, SolveOptions, WorkCounters,
};
pub use reachability::{earliest_arrival, reachable_edges, reconstruct_reach_walk, ReachabilityResult};
pub use representation::{
    build_half_extend_respecting, check_doubly_sorted, from_space_time, is_zero_acyclic, to_space_time,
    DoublySortedRep, SortCheck, SpaceTimeGraph,
};
pub use zerocycle::{min_cost_walks_zero, min_cost_walks_zero_induced, min_cost_walks_zero_with};
