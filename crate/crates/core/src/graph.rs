//! Temporal graph model: edges, waiting bounds, walks and walk metrics.

use std::fmt;

use crate::error::GraphError;

/// Integer time unit. All solvers only compare and add times.
pub type Time = i64;
/// Dense node index in `[0, n)`.
pub type NodeId = usize;
/// Position of an edge in the canonical input edge array.
pub type EdgeId = usize;

/// Largest accepted magnitude for any time value in an input.
pub const MAX_TIME_MAGNITUDE: Time = 1 << 61;

/// Upper waiting bound at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MaxWait {
    Finite(Time),
    Infinite,
}

impl MaxWait {
    /// `true` iff `dep <= arr + self`; never adds the infinite sentinel.
    #[inline]
    pub fn allows(self, arr: Time, dep: Time) -> bool {
        match self {
            MaxWait::Finite(b) => dep <= arr + b,
            MaxWait::Infinite => true,
        }
    }
}

impl fmt::Display for MaxWait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxWait::Finite(b) => write!(f, "{b}"),
            MaxWait::Infinite => f.write_str("inf"),
        }
    }
}

/// Minimum and maximum pause between two consecutive edges at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WaitingBounds {
    pub alpha: Time,
    pub beta: MaxWait,
}

impl WaitingBounds {
    pub const UNRESTRICTED: WaitingBounds = WaitingBounds {
        alpha: 0,
        beta: MaxWait::Infinite,
    };

    pub fn new(alpha: Time, beta: MaxWait) -> Self {
        WaitingBounds { alpha, beta }
    }

    pub fn finite(alpha: Time, beta: Time) -> Self {
        WaitingBounds {
            alpha,
            beta: MaxWait::Finite(beta),
        }
    }

    /// Whether departing at `dep` is allowed after arriving at `arr`.
    #[inline]
    pub fn admits(&self, arr: Time, dep: Time) -> bool {
        arr + self.alpha <= dep && self.beta.allows(arr, dep)
    }
}

impl Default for WaitingBounds {
    fn default() -> Self {
        Self::UNRESTRICTED
    }
}

/// Traverse `tail -> head` departing exactly at `dep`, arriving at `dep + travel`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TemporalEdge {
    pub tail: NodeId,
    pub head: NodeId,
    pub dep: Time,
    pub travel: Time,
}

impl TemporalEdge {
    pub fn new(tail: NodeId, head: NodeId, dep: Time, travel: Time) -> Self {
        TemporalEdge {
            tail,
            head,
            dep,
            travel,
        }
    }

    #[inline]
    pub fn arr(&self) -> Time {
        self.dep + self.travel
    }
}

/// `G = (V, E, alpha, beta)`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    waiting: Vec<WaitingBounds>,
    edges: Vec<TemporalEdge>,
}

impl TemporalGraph {
    /// Validates ids, travel times, waiting bounds and time magnitudes.
    pub fn new(waiting: Vec<WaitingBounds>, edges: Vec<TemporalEdge>) -> Result<Self, GraphError> {
        let n = waiting.len();
        for (v, w) in waiting.iter().enumerate() {
            if w.alpha < 0 {
                return Err(GraphError::NegativeAlpha { node: v });
            }
            if w.alpha > MAX_TIME_MAGNITUDE {
                return Err(GraphError::TimeOutOfRange { value: w.alpha });
            }
            if let MaxWait::Finite(b) = w.beta {
                if b > MAX_TIME_MAGNITUDE {
                    return Err(GraphError::TimeOutOfRange { value: b });
                }
                if w.alpha > b {
                    return Err(GraphError::AlphaExceedsBeta { node: v });
                }
            }
        }
        for (id, e) in edges.iter().enumerate() {
            if e.tail >= n || e.head >= n {
                return Err(GraphError::NodeOutOfRange {
                    edge: id,
                    node: e.tail.max(e.head),
                    n,
                });
            }
            if e.travel < 0 {
                return Err(GraphError::NegativeTravel { edge: id });
            }
            for value in [e.dep, e.travel] {
                if value.abs() > MAX_TIME_MAGNITUDE {
                    return Err(GraphError::TimeOutOfRange { value });
                }
            }
        }
        Ok(TemporalGraph { waiting, edges })
    }

    /// Graph with unrestricted waiting at every node.
    pub fn unrestricted(n: usize, edges: Vec<TemporalEdge>) -> Result<Self, GraphError> {
        Self::new(vec![WaitingBounds::UNRESTRICTED; n], edges)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.waiting.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &TemporalEdge {
        &self.edges[e]
    }

    #[inline]
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    #[inline]
    pub fn waiting(&self, v: NodeId) -> WaitingBounds {
        self.waiting[v]
    }

    #[inline]
    pub fn waiting_bounds(&self) -> &[WaitingBounds] {
        &self.waiting
    }

    #[inline]
    pub fn alpha(&self, v: NodeId) -> Time {
        self.waiting[v].alpha
    }

    pub fn has_zero_travel(&self) -> bool {
        self.edges.iter().any(|e| e.travel == 0)
    }

    /// Copy of this graph with replaced waiting bounds.
    pub fn with_waiting(&self, waiting: Vec<WaitingBounds>) -> Result<Self, GraphError> {
        Self::new(waiting, self.edges.clone())
    }

    /// Time-reversed graph: `(u, v, t, l)` becomes `(v, u, -(t + l), l)`.
    ///
    /// Edge ids are preserved, so an answer on the reversed graph for edge
    /// `e` is about the original edge `e`.
    pub fn reversed(&self) -> TemporalGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| TemporalEdge::new(e.head, e.tail, -e.arr(), e.travel))
            .collect();
        TemporalGraph {
            waiting: self.waiting.clone(),
            edges,
        }
    }

    /// `f` extends `e`: `tail(f) = head(e)` and the pause fits the bounds at that node.
    #[inline]
    pub fn extends(&self, e: EdgeId, f: EdgeId) -> bool {
        let (e, f) = (&self.edges[e], &self.edges[f]);
        f.tail == e.head && self.waiting[f.tail].admits(e.arr(), f.dep)
    }

    /// Like [`extends`](Self::extends) without the upper bound.
    #[inline]
    pub fn half_extends(&self, e: EdgeId, f: EdgeId) -> bool {
        let (e, f) = (&self.edges[e], &self.edges[f]);
        f.tail == e.head && e.arr() + self.waiting[f.tail].alpha <= f.dep
    }

    pub fn validate_walk(&self, walk: &Walk) -> Result<bool, GraphError> {
        let ids = walk.edges();
        if ids.is_empty() {
            return Err(GraphError::EmptyWalk);
        }
        if let Some(&bad) = ids.iter().find(|&&e| e >= self.edges.len()) {
            return Err(GraphError::EdgeOutOfRange { edge: bad });
        }
        Ok(ids.windows(2).all(|w| self.extends(w[0], w[1])))
    }

    pub fn walk_metrics(&self, walk: &Walk) -> Result<WalkMetrics, GraphError> {
        if !self.validate_walk(walk)? {
            return Err(GraphError::InvalidWalk);
        }
        let ids = walk.edges();
        let first = self.edges[ids[0]];
        let last = self.edges[ids[ids.len() - 1]];
        let total_travel = ids.iter().map(|&e| self.edges[e].travel).sum();
        let total_waiting = ids
            .windows(2)
            .map(|w| self.edges[w[1]].dep - self.edges[w[0]].arr())
            .sum();
        Ok(WalkMetrics {
            departure: first.dep,
            arrival: last.arr(),
            duration: last.arr() - first.dep,
            edge_count: ids.len(),
            total_travel,
            total_waiting,
        })
    }
}

/// Ordered sequence of edge ids. Validity is checked against a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Walk {
    edges: Vec<EdgeId>,
}

impl Walk {
    pub fn new(edges: Vec<EdgeId>) -> Self {
        Walk { edges }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn last(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }
}

impl From<Vec<EdgeId>> for Walk {
    fn from(edges: Vec<EdgeId>) -> Self {
        Walk { edges }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkMetrics {
    pub departure: Time,
    pub arrival: Time,
    pub duration: Time,
    pub edge_count: usize,
    pub total_travel: Time,
    pub total_waiting: Time,
}
