//! Single linear scan computing every edge that ends a walk from the source.

use crate::error::{RepError, SolveError};
use crate::graph::{EdgeId, NodeId, TemporalGraph, Time, Walk};
use crate::representation::DoublySortedRep;

/// Operation counts of one reachability scan.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReachCounters {
    pub markings: usize,
    pub cursor_advances: usize,
}

#[derive(Debug, Clone)]
pub struct ReachabilityResult {
    start: Vec<usize>,
    lists: Vec<EdgeId>,
    parents: Vec<Option<EdgeId>>,
    reachable: Vec<bool>,
    arrivals: Vec<Option<Time>>,
    pub counters: ReachCounters,
}

impl ReachabilityResult {
    /// `A_v` in non-decreasing arrival order.
    pub fn reachable_at(&self, v: NodeId) -> &[EdgeId] {
        &self.lists[self.start[v]..self.start[v + 1]]
    }

    pub fn parent(&self, e: EdgeId) -> Option<EdgeId> {
        self.parents[e]
    }

    pub fn is_reachable(&self, e: EdgeId) -> bool {
        self.reachable[e]
    }

    pub fn node_count(&self) -> usize {
        self.start.len() - 1
    }

    /// Earliest arrival per node; `None` when unreachable.
    pub fn earliest_arrival(&self) -> &[Option<Time>] {
        &self.arrivals
    }
}

pub(crate) fn check_source(g: &TemporalGraph, rep: &DoublySortedRep, s: NodeId) -> Result<(), SolveError> {
    if !rep.matches(g) {
        return Err(RepError::MalformedPermutation {
            list: "arr",
            m: g.edge_count(),
        }
        .into());
    }
    if s >= g.node_count() {
        return Err(SolveError::SourceOutOfRange {
            node: s,
            n: g.node_count(),
        });
    }
    Ok(())
}

/// Stable bucket of scan-ordered items by head.
pub(crate) fn bucket_by_head<T: Copy>(
    n: usize,
    items: &[T],
    head_of: impl Fn(&T) -> NodeId,
) -> (Vec<usize>, Vec<T>) {
    let mut start = vec![0usize; n + 1];
    for it in items {
        start[head_of(it) + 1] += 1;
    }
    for v in 0..n {
        start[v + 1] += start[v];
    }
    let mut fill = start.clone();
    // every slot is overwritten below
    let mut out = items.to_vec();
    for it in items {
        let h = head_of(it);
        out[fill[h]] = *it;
        fill[h] += 1;
    }
    (start, out)
}

/// All edges ending some walk from `s`, with parent pointers.
///
/// Requires a fully sorted representation of a graph with positive travel times.
pub fn reachable_edges(g: &TemporalGraph, rep: &DoublySortedRep, s: NodeId) -> Result<ReachabilityResult, SolveError> {
    check_source(g, rep, s)?;
    if !rep.is_fully_sorted() {
        return Err(RepError::NotFullySorted.into());
    }
    if let Some(edge) = g.edges().iter().position(|e| e.travel == 0) {
        return Err(RepError::ZeroTravel { edge }.into());
    }
    let edges = g.edges();
    let m = edges.len();
    let mut marked = vec![false; m];
    let mut parents = vec![None; m];
    let mut cursor = vec![0usize; g.node_count()];
    let mut found = Vec::new();
    let mut counters = ReachCounters::default();

    for &e in rep.e_arr() {
        let edge = &edges[e];
        if edge.tail != s && !marked[e] {
            continue;
        }
        found.push(e);
        let v = edge.head;
        let a = edge.arr();
        let w = g.waiting(v);
        let bucket = rep.dep_bucket(v);
        let mut l = cursor[v];
        while l < bucket.len() && edges[bucket[l]].dep < a + w.alpha {
            l += 1;
        }
        let mut r = l;
        while r < bucket.len() && w.beta.allows(a, edges[bucket[r]].dep) {
            let f = bucket[r];
            marked[f] = true;
            parents[f] = Some(e);
            r += 1;
        }
        counters.cursor_advances += l - cursor[v];
        counters.markings += r - l;
        cursor[v] = r;
    }

    let mut reachable = vec![false; m];
    for &e in &found {
        reachable[e] = true;
    }
    let (start, lists) = bucket_by_head(g.node_count(), &found, |&e| g.edge(e).head);
    let arrivals = (0..g.node_count())
        .map(|v| lists[start[v]..start[v + 1]].first().map(|&e| edges[e].arr()))
        .collect();
    Ok(ReachabilityResult {
        start,
        lists,
        parents,
        reachable,
        arrivals,
        counters,
    })
}

pub fn earliest_arrival(res: &ReachabilityResult) -> Vec<Option<Time>> {
    res.earliest_arrival().to_vec()
}

/// Follow parent pointers back to an edge leaving the source.
pub fn reconstruct_reach_walk(res: &ReachabilityResult, e: EdgeId) -> Result<Walk, SolveError> {
    if e >= res.reachable.len() || !res.reachable[e] {
        return Err(SolveError::NotReachable { edge: e });
    }
    let mut walk = vec![e];
    let mut cur = e;
    while let Some(p) = res.parents[cur] {
        walk.push(p);
        cur = p;
        if walk.len() > res.reachable.len() {
            unreachable!("parent pointers of a positive-travel scan are acyclic");
        }
    }
    walk.reverse();
    Ok(Walk::new(walk))
}
