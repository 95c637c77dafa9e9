use thiserror::Error;

use crate::graph::{EdgeId, NodeId, Time};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {node}: negative minimum waiting time")]
    NegativeAlpha { node: NodeId },
    #[error("node {node}: alpha exceeds beta")]
    AlphaExceedsBeta { node: NodeId },
    #[error("edge {edge}: node id {node} out of range (n = {n})")]
    NodeOutOfRange { edge: EdgeId, node: NodeId, n: usize },
    #[error("edge {edge}: negative travel time")]
    NegativeTravel { edge: EdgeId },
    #[error("time value {value} exceeds the accepted magnitude 2^61")]
    TimeOutOfRange { value: Time },
    #[error("walk is empty")]
    EmptyWalk,
    #[error("edge id {edge} out of range")]
    EdgeOutOfRange { edge: EdgeId },
    #[error("walk violates the waiting constraints")]
    InvalidWalk,
}

/// Violated precondition on an edge ordering or a space-time graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("{list} is not a permutation of the {m} edge ids")]
    MalformedPermutation { list: &'static str, m: usize },
    #[error("edge {edge} has zero travel time; build a representation through the space-time converter or use the zero-cycle solver")]
    ZeroTravel { edge: EdgeId },
    #[error("graph is not zero-acyclic: node {node} lies on a zero-cycle at time {time}")]
    NotZeroAcyclic { node: NodeId, time: Time },
    #[error("edge order is not node-arrival sorted")]
    NotNodeArrivalSorted,
    #[error("edge order is not node-departure sorted")]
    NotNodeDepartureSorted,
    #[error("representation is not fully sorted")]
    NotFullySorted,
    #[error("space-time graph is malformed: {0}")]
    MalformedSpaceTime(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("source node {node} out of range (n = {n})")]
    SourceOutOfRange { node: NodeId, n: usize },
    #[error("absorption violated: zero-travel edge {edge} with zero minimum waiting has a cost that is not non-negative")]
    AbsorptionViolated { edge: EdgeId },
    #[error("edge {edge} is not reachable from the source")]
    NotReachable { edge: EdgeId },
    #[error("oracle supports at most 64 edges, got {m}")]
    TooManyEdges { m: usize },
    #[error("cost structure mismatch: {0}")]
    CostMismatch(String),
}

impl SolveError {
    /// `true` for failures caused by the cost structure rather than the input layout.
    pub fn is_cost_violation(&self) -> bool {
        matches!(self, SolveError::AbsorptionViolated { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("coefficient {value} exceeds the accepted magnitude 2^20")]
    CoefficientOutOfRange { value: i64 },
    #[error("edge cost of edge {edge} exceeds the accepted magnitude 2^20")]
    EdgeCostOutOfRange { edge: usize },
    #[error("expected {expected} edge costs, got {got}")]
    EdgeCostCount { expected: usize, got: usize },
}
