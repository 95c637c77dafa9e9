//! Single-source minimum-cost walks over interval lists of departure buckets.

use std::borrow::Cow;

use crate::cost::{lincomb_finalize, CostStructure, FewestEdges, LinComb, LinCost, SfCost, ShortestFastest};
use crate::error::SolveError;
use crate::graph::{EdgeId, MaxWait, NodeId, TemporalEdge, TemporalGraph, Time, Walk};
use crate::reachability::{bucket_by_head, check_source};
use crate::representation::DoublySortedRep;

pub(crate) const NONE: usize = usize::MAX;

/// Hint the cache about an upcoming read.
#[inline(always)]
fn prefetch<T>(r: &T) {
    #[cfg(target_arch = "x86_64")]
    // SAFETY: prefetching never faults and has no architectural effect
    unsafe {
        use std::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
        _mm_prefetch::<_MM_HINT_T0>(r as *const T as *const i8);
    }
    #[cfg(not(target_arch = "x86_64"))]
    let _ = r;
}

/// Operation counts of one scan; each is bounded by a small multiple of `M`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WorkCounters {
    pub interval_creations: usize,
    pub left_bound_updates: usize,
    pub cursor_advances: usize,
    pub finalizations: usize,
}

impl WorkCounters {
    pub fn total(&self) -> usize {
        self.interval_creations + self.left_bound_updates + self.cursor_advances + self.finalizations
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Assert the interval-list invariants after every scanned edge.
    pub check_invariants: bool,
}

/// `E_v^dep[l..r)` shares best extendable cost `cost` through `parent`.
#[derive(Debug, Clone, Copy)]
struct Interval<V> {
    l: usize,
    r: usize,
    cost: V,
    parent: EdgeId,
    prev: usize,
    next: usize,
}

/// Per-edge minima from one source.
#[derive(Debug, Clone)]
pub struct MinCostResult<V> {
    start: Vec<usize>,
    lists: Vec<(EdgeId, V)>,
    costs: Vec<Option<V>>,
    parents: Vec<usize>,
    pub counters: WorkCounters,
}

impl<V: Copy> MinCostResult<V> {
    /// `A'_v`: reachable edges into `v` with their minimum cost, in arrival order.
    pub fn list(&self, v: NodeId) -> &[(EdgeId, V)] {
        &self.lists[self.start[v]..self.start[v + 1]]
    }

    pub fn node_count(&self) -> usize {
        self.start.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.costs.len()
    }

    pub fn cost(&self, e: EdgeId) -> Option<V> {
        self.costs[e]
    }

    pub fn costs(&self) -> &[Option<V>] {
        &self.costs
    }

    /// Predecessor of `e` on its witness walk; `Some(e)` marks the first edge.
    pub fn parent(&self, e: EdgeId) -> Option<EdgeId> {
        (self.costs[e].is_some() && self.parents[e] != NONE).then_some(self.parents[e])
    }
}

/// Witness walk for `e`, ending at the self-parent edge.
pub fn reconstruct_min_walk<V: Copy>(res: &MinCostResult<V>, e: EdgeId) -> Result<Walk, SolveError> {
    if e >= res.costs.len() || res.costs[e].is_none() {
        return Err(SolveError::NotReachable { edge: e });
    }
    let mut walk = vec![e];
    let mut cur = e;
    loop {
        let p = res.parents[cur];
        if p == cur {
            break;
        }
        assert!(
            p != NONE && walk.len() <= res.costs.len(),
            "parent chain of edge {e} is broken"
        );
        walk.push(p);
        cur = p;
    }
    walk.reverse();
    Ok(Walk::new(walk))
}

/// Departure time plus finalized `B` and `P` of one slot, kept together
/// so a bucket cursor and a finalization touch the same lines.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Final<V> {
    pub(crate) time: Time,
    pub(crate) cost: Option<V>,
    parent: EdgeId,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Reached<V> {
    edge: EdgeId,
    head: NodeId,
    parent: EdgeId,
    cost: V,
}

/// Per-node scan state packed into one cache line.
///
/// Bucket positions are global slots into the departure array.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NodeState {
    pub(crate) end: usize,
    /// Left bound `l_v`: slots below are finalized.
    pub(crate) lv: usize,
    /// Right bound `r_v` (exclusive).
    rend: usize,
    first: usize,
    /// Left end of the first interval, `NONE` when the list is empty.
    first_l: usize,
    last: usize,
    alpha: Time,
    /// `Time::MAX` for an unbounded wait.
    beta: Time,
}

/// Scan state shared with the zero-cycle solver.
pub(crate) struct Scanner<'a, C: CostStructure> {
    pub(crate) g: &'a TemporalGraph,
    pub(crate) cs: &'a C,
    pub(crate) s: NodeId,
    /// Bucket starts, one past the end for the last node.
    pub(crate) starts: &'a [usize],
    pub(crate) dep_edges: Cow<'a, [EdgeId]>,
    /// Slot of each edge in `dep_edges`.
    pub(crate) slot: Cow<'a, [usize]>,
    /// `B` and `P`, indexed by slot.
    pub(crate) fin: Vec<Final<C::Value>>,
    pub(crate) nodes: Vec<NodeState>,
    arena: Vec<Interval<C::Value>>,
    /// Reached edges in scan order; a parent is final once its edge is scanned.
    pub(crate) out: Vec<Reached<C::Value>>,
    pub(crate) counters: WorkCounters,
    opts: SolveOptions,
}

impl<'a, C: CostStructure> Scanner<'a, C> {
    pub(crate) fn new(g: &'a TemporalGraph, rep: &'a DoublySortedRep, cs: &'a C, s: NodeId, opts: SolveOptions) -> Self {
        let starts = rep.dep_start();
        let nodes = g
            .waiting_bounds()
            .iter()
            .enumerate()
            .map(|(v, w)| NodeState {
                end: starts[v + 1],
                lv: starts[v],
                rend: starts[v],
                first: NONE,
                first_l: NONE,
                last: NONE,
                alpha: w.alpha,
                beta: match w.beta {
                    MaxWait::Finite(b) => b,
                    MaxWait::Infinite => Time::MAX,
                },
            })
            .collect();
        Scanner {
            g,
            cs,
            s,
            starts,
            dep_edges: Cow::Borrowed(rep.dep_edges()),
            slot: Cow::Borrowed(rep.dep_slots()),
            fin: rep
                .dep_times()
                .iter()
                .map(|&time| Final { time, cost: None, parent: NONE })
                .collect(),
            nodes,
            arena: Vec::new(),
            out: Vec::new(),
            counters: WorkCounters::default(),
            opts,
        }
    }

    /// Cost of the first interval of `v` if it covers slot `pos`.
    pub(crate) fn interval_cost_at(&self, v: NodeId, pos: usize) -> Option<C::Value> {
        let h = self.nodes[v].first;
        (h != NONE && self.arena[h].l <= pos && pos < self.arena[h].r).then(|| self.arena[h].cost)
    }

    /// Swap two slots of one departure bucket.
    pub(crate) fn swap_slots(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        debug_assert_eq!(self.fin[i].time, self.fin[j].time);
        let edges = self.dep_edges.to_mut();
        edges.swap(i, j);
        let (a, b) = (edges[i], edges[j]);
        let slot = self.slot.to_mut();
        slot[a] = i;
        slot[b] = j;
        self.fin.swap(i, j);
    }

    /// Finalize `B` and `P` for slots of `v` below `upto` (exclusive).
    pub(crate) fn process_costs(&mut self, v: NodeId, upto: usize) {
        let node = &mut self.nodes[v];
        // the cached left end spares an arena load when nothing is due
        while node.first_l < upto {
            let h = node.first;
            let Interval { l, r, cost, parent, next, .. } = self.arena[h];
            let end = r.min(upto);
            for f in &mut self.fin[l..end] {
                f.cost = Some(cost);
                f.parent = parent;
            }
            self.counters.finalizations += end - l;
            if end == r {
                node.first = next;
                if next == NONE {
                    node.last = NONE;
                    node.first_l = NONE;
                } else {
                    self.arena[next].prev = NONE;
                    node.first_l = self.arena[next].l;
                }
            } else {
                self.arena[h].l = upto;
                node.first_l = upto;
                self.counters.left_bound_updates += 1;
            }
        }
        // never move the left bound backwards
        if upto > node.lv {
            node.lv = upto;
        }
    }

    /// Process one edge of the arrival order.
    #[inline]
    pub(crate) fn scan_edge(&mut self, e: EdgeId) {
        let edge = *self.g.edge(e);
        let p = self.slot[e];
        self.scan_with(e, &edge, p);
    }

    /// [`scan_edge`](Self::scan_edge) with the edge and its slot prefetched.
    pub(crate) fn scan_with(&mut self, e: EdgeId, edge: &TemporalEdge, p: usize) {
        let (u, v) = (edge.tail, edge.head);
        self.process_costs(u, p + 1);
        let b = self.fin[p].cost;
        if u != self.s && b.is_none() {
            return;
        }
        let gamma = self.cs.gamma(e, edge);
        let c = match b {
            None => {
                self.fin[p].parent = e;
                gamma
            }
            Some(b) => {
                let via = self.cs.combine(b, gamma);
                if u == self.s && self.cs.less(&gamma, &via) {
                    self.fin[p].parent = e;
                    gamma
                } else {
                    via
                }
            }
        };
        self.out.push(Reached {
            edge: e,
            head: v,
            parent: self.fin[p].parent,
            cost: c,
        });

        let a = edge.arr();
        let NodeState {
            end,
            lv,
            rend: old_rend,
            alpha,
            beta,
            ..
        } = self.nodes[v];
        let fin = &self.fin;
        let lo = a + alpha;
        let mut l = lv;
        while l < end && fin[l].time < lo {
            l += 1;
        }
        let mut r = old_rend;
        if beta == Time::MAX {
            r = end;
        } else {
            let hi = a + beta;
            while r < end && fin[r].time <= hi {
                r += 1;
            }
        }
        self.counters.cursor_advances += (l - lv) + (r - old_rend);
        self.process_costs(v, l);
        let mut lc = l.max(old_rend);
        let node = &mut self.nodes[v];
        loop {
            let t = node.last;
            if t == NONE || !self.cs.less(&c, &self.arena[t].cost) {
                break;
            }
            lc = self.arena[t].l;
            let prev = self.arena[t].prev;
            node.last = prev;
            if prev == NONE {
                node.first = NONE;
                node.first_l = NONE;
            } else {
                self.arena[prev].next = NONE;
            }
        }
        if lc < r {
            let id = self.arena.len();
            let prev = node.last;
            self.arena.push(Interval {
                l: lc,
                r,
                cost: c,
                parent: e,
                prev,
                next: NONE,
            });
            if prev == NONE {
                node.first = id;
                node.first_l = lc;
            } else {
                self.arena[prev].next = id;
            }
            node.last = id;
            self.counters.interval_creations += 1;
        }
        node.rend = r;
        if self.opts.check_invariants {
            self.assert_intervals(v);
        }
    }

    /// Consecutive, cost-monotone, and spanning exactly `[lv, rend)` when non-empty.
    pub(crate) fn assert_intervals(&self, v: NodeId) {
        let node = &self.nodes[v];
        let mut h = node.first;
        if h == NONE {
            assert_eq!(node.last, NONE, "node {v}: dangling tail pointer");
            assert_eq!(node.first_l, NONE, "node {v}: stale cached left end");
            return;
        }
        assert_eq!(self.arena[h].l, node.lv, "node {v}: list does not start at the left bound");
        assert_eq!(self.arena[h].l, node.first_l, "node {v}: stale cached left end");
        let mut prev = NONE;
        while h != NONE {
            let it = &self.arena[h];
            assert!(it.l < it.r, "node {v}: empty interval");
            assert_eq!(it.prev, prev, "node {v}: broken back link");
            if prev != NONE {
                let p = &self.arena[prev];
                assert_eq!(p.r, it.l, "node {v}: intervals are not consecutive");
                assert!(self.cs.less_eq(&p.cost, &it.cost), "node {v}: costs decrease along the list");
            }
            prev = h;
            h = it.next;
        }
        assert_eq!(node.last, prev, "node {v}: tail pointer mismatch");
        assert_eq!(self.arena[prev].r, node.rend, "node {v}: list does not end at the right bound");
    }

    /// Scan edges in the given order.
    pub(crate) fn scan_all(&mut self, order: &[EdgeId]) {
        let slot = std::mem::take(&mut self.slot);
        self.scan_pipelined(order.len(), |i| {
            let e = order[i];
            (e, slot[e])
        });
        self.slot = slot;
    }

    /// Scan `(edge, slot)` pairs taken from the representation.
    pub(crate) fn scan_slots(&mut self, order: &[(EdgeId, usize)]) {
        self.scan_pipelined(order.len(), |i| order[i]);
    }

    /// The loop is bound by cache misses on edge and node records, interval
    /// heads and slot state, so those are prefetched a few edges ahead in
    /// stages: the edge record first, then what it points to.
    #[inline(always)]
    fn scan_pipelined(&mut self, n: usize, at: impl Fn(usize) -> (EdgeId, usize)) {
        const FAR: usize = 32;
        const NEAR: usize = 16;
        const SOON: usize = 8;
        let edges = self.g.edges();
        for i in 0..n {
            if i + FAR < n {
                let (e, p) = at(i + FAR);
                prefetch(&edges[e]);
                prefetch(&self.fin[p]);
            }
            if i + NEAR < n {
                let edge = &edges[at(i + NEAR).0];
                prefetch(&self.nodes[edge.tail]);
                prefetch(&self.nodes[edge.head]);
            }
            if i + SOON < n {
                let edge = &edges[at(i + SOON).0];
                let (nu, nv) = (&self.nodes[edge.tail], &self.nodes[edge.head]);
                if let Some(it) = self.arena.get(nu.first) {
                    prefetch(it);
                }
                if let Some(it) = self.arena.get(nv.last) {
                    prefetch(it);
                }
                if let Some(f) = self.fin.get(nv.lv) {
                    prefetch(f);
                }
            }
            let (e, p) = at(i);
            let edge = edges[e];
            self.scan_with(e, &edge, p);
        }
    }

    pub(crate) fn finish(self) -> MinCostResult<C::Value> {
        let g = self.g;
        let m = g.edge_count();
        let mut costs = vec![None; m];
        let mut parents = vec![NONE; m];
        for r in &self.out {
            costs[r.edge] = Some(r.cost);
            parents[r.edge] = r.parent;
        }
        let (start, reached) = bucket_by_head(g.node_count(), &self.out, |r| r.head);
        let lists = reached.into_iter().map(|r| (r.edge, r.cost)).collect();
        MinCostResult {
            start,
            lists,
            costs,
            parents,
            counters: self.counters,
        }
    }
}

/// Minimum cost of every walk from `s` respected by the two orders of `rep`.
///
/// A half-extend-respecting `rep` of a zero-acyclic graph covers all walks.
pub fn min_cost_walks<C: CostStructure>(
    g: &TemporalGraph,
    rep: &DoublySortedRep,
    cs: &C,
    s: NodeId,
) -> Result<MinCostResult<C::Value>, SolveError> {
    min_cost_walks_with(g, rep, cs, s, SolveOptions::default())
}

pub fn min_cost_walks_with<C: CostStructure>(
    g: &TemporalGraph,
    rep: &DoublySortedRep,
    cs: &C,
    s: NodeId,
    opts: SolveOptions,
) -> Result<MinCostResult<C::Value>, SolveError> {
    check_source(g, rep, s)?;
    let mut sc = Scanner::new(g, rep, cs, s, opts);
    sc.scan_slots(rep.arr_slots());
    Ok(sc.finish())
}

/// Best value per node with the edge achieving it.
fn per_node_min<V: Copy, K: Ord>(res: &MinCostResult<V>, key: impl Fn(EdgeId, &V) -> K) -> Vec<Option<(K, EdgeId)>> {
    (0..res.node_count())
        .map(|v| {
            let mut best: Option<(K, EdgeId)> = None;
            for &(e, ref c) in res.list(v) {
                let k = key(e, c);
                if best.as_ref().is_none_or(|(b, _)| k < *b) {
                    best = Some((k, e));
                }
            }
            best
        })
        .collect()
}

/// Fewest edges to each node, with the last edge of a witness.
pub fn solve_fewest_edges(g: &TemporalGraph, rep: &DoublySortedRep, s: NodeId) -> Result<Vec<Option<(u64, EdgeId)>>, SolveError> {
    let res = min_cost_walks(g, rep, &FewestEdges, s)?;
    Ok(per_node_min(&res, |_, &c| c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShortestFastestSummary {
    pub duration: Time,
    pub edges: u64,
    pub last_edge: EdgeId,
}

/// Shortest duration, then fewest edges among the shortest.
pub fn solve_shortest_fastest(
    g: &TemporalGraph,
    rep: &DoublySortedRep,
    s: NodeId,
) -> Result<Vec<Option<ShortestFastestSummary>>, SolveError> {
    let res = min_cost_walks(g, rep, &ShortestFastest, s)?;
    Ok(shortest_fastest_summary(g, &res))
}

pub fn shortest_fastest_summary(g: &TemporalGraph, res: &MinCostResult<SfCost>) -> Vec<Option<ShortestFastestSummary>> {
    per_node_min(res, |e, c| (g.edge(e).arr() - c.dep, c.edges))
        .into_iter()
        .map(|b| {
            b.map(|((duration, edges), last_edge)| ShortestFastestSummary {
                duration,
                edges,
                last_edge,
            })
        })
        .collect()
}

/// Minimum linear-combination value per node.
pub fn solve_lincomb(
    g: &TemporalGraph,
    rep: &DoublySortedRep,
    cs: &LinComb,
    s: NodeId,
) -> Result<Vec<Option<(i128, EdgeId)>>, SolveError> {
    let res = min_cost_walks(g, rep, cs, s)?;
    Ok(lincomb_summary(g, cs, &res))
}

pub fn lincomb_summary(g: &TemporalGraph, cs: &LinComb, res: &MinCostResult<LinCost>) -> Vec<Option<(i128, EdgeId)>> {
    (0..res.node_count()).map(|v| lincomb_finalize(cs, g, res.list(v))).collect()
}

/// Minimum overall waiting time per node.
pub fn solve_min_waiting(g: &TemporalGraph, rep: &DoublySortedRep, s: NodeId) -> Result<Vec<Option<(i128, EdgeId)>>, SolveError> {
    solve_lincomb(g, rep, &LinComb::min_waiting(), s)
}

/// Keep Pareto-maximal `(departure, arrival)` pairs of an arrival-ordered list.
pub fn pareto_profile(pairs: impl IntoIterator<Item = (Time, Time)>) -> Vec<(Time, Time)> {
    let mut out: Vec<(Time, Time)> = Vec::new();
    for (d, a) in pairs {
        match out.last().copied() {
            Some((td, ta)) if ta == a => {
                if d > td {
                    out.pop();
                    out.push((d, a));
                }
            }
            Some((td, _)) if d <= td => {}
            _ => out.push((d, a)),
        }
    }
    out
}

/// Profile per node: pairs `(d, a)` strictly increasing in both coordinates.
pub fn solve_profile(g: &TemporalGraph, rep: &DoublySortedRep, s: NodeId) -> Result<Vec<Vec<(Time, Time)>>, SolveError> {
    let res = min_cost_walks(g, rep, &LinComb::latest_departure(), s)?;
    Ok(profile_from(g, &res))
}

pub fn profile_from(g: &TemporalGraph, res: &MinCostResult<LinCost>) -> Vec<Vec<(Time, Time)>> {
    (0..res.node_count())
        .map(|v| pareto_profile(res.list(v).iter().map(|(e, c)| (c.tau, g.edge(*e).arr()))))
        .collect()
}

/// Start times `[start, end]` (`start = None` for unbounded) reaching the
/// destination by `arrival` at the earliest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileSegment {
    pub start: Option<Time>,
    pub end: Time,
    pub arrival: Time,
}

/// Single-destination profile with the waiting bounds of the start node
/// applied to the initial wait.
///
/// `g_rev` and `rep_rev` describe the time-reversed graph
/// ([`TemporalGraph::reversed`]); edge ids are shared with the original.
pub fn solve_profile_bounded_source(
    g_rev: &TemporalGraph,
    rep_rev: &DoublySortedRep,
    x: NodeId,
) -> Result<Vec<Vec<ProfileSegment>>, SolveError> {
    let res = min_cost_walks(g_rev, rep_rev, &LinComb::latest_departure(), x)?;
    Ok((0..g_rev.node_count())
        .map(|v| {
            // reversed arrival order is original departure order, backwards
            let mut groups: Vec<(Time, Time)> = Vec::new();
            for &(e, c) in res.list(v).iter().rev() {
                let d = -g_rev.edge(e).arr();
                let arrival = -c.tau;
                match groups.last_mut() {
                    Some(last) if last.0 == d => last.1 = last.1.min(arrival),
                    _ => groups.push((d, arrival)),
                }
            }
            sweep_windows(&groups, g_rev.waiting(v).alpha, g_rev.waiting(v).beta)
        })
        .collect())
}

/// Minimum arrival over overlapping windows `[d - beta, d - alpha]`.
///
/// Both window ends grow with `d`, so a monotone deque yields the minimum
/// of the open windows in amortized constant time per event.
fn sweep_windows(groups: &[(Time, Time)], alpha: Time, beta: MaxWait) -> Vec<ProfileSegment> {
    const NEG_INF: i128 = i128::MIN;
    let k = groups.len();
    let open_at = |i: usize| -> i128 {
        match beta {
            MaxWait::Finite(b) => (groups[i].0 - b) as i128,
            MaxWait::Infinite => NEG_INF,
        }
    };
    let close_at = |i: usize| -> i128 { (groups[i].0 - alpha) as i128 + 1 };
    let mut out: Vec<ProfileSegment> = Vec::new();
    let mut deque = std::collections::VecDeque::new();
    let (mut next_open, mut next_close) = (0usize, 0usize);
    while next_close < k {
        let t = if next_open < k {
            open_at(next_open).min(close_at(next_close))
        } else {
            close_at(next_close)
        };
        while next_close < next_open && close_at(next_close) == t {
            next_close += 1;
        }
        while next_open < k && open_at(next_open) == t {
            while deque.back().is_some_and(|&j: &usize| groups[j].1 >= groups[next_open].1) {
                deque.pop_back();
            }
            deque.push_back(next_open);
            next_open += 1;
        }
        while deque.front().is_some_and(|&j| j < next_close) {
            deque.pop_front();
        }
        let Some(&front) = deque.front() else { continue };
        let t_next = if next_open < k {
            open_at(next_open).min(close_at(next_close))
        } else {
            close_at(next_close)
        };
        let seg = ProfileSegment {
            start: (t != NEG_INF).then_some(t as Time),
            end: (t_next - 1) as Time,
            arrival: groups[front].1,
        };
        match out.last_mut() {
            Some(last) if last.arrival == seg.arrival && seg.start.is_some_and(|s| s == last.end + 1) => {
                last.end = seg.end;
            }
            _ => out.push(seg),
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::cost::fold_walk;
    use crate::graph::fixtures::{g1, g1_with_waiting};
    use crate::graph::{TemporalEdge, WaitingBounds};

    pub(crate) fn g3() -> TemporalGraph {
        TemporalGraph::unrestricted(
            4,
            vec![
                TemporalEdge::new(0, 1, 0, 1),
                TemporalEdge::new(1, 2, 1, 0),
                TemporalEdge::new(2, 3, 1, 0),
            ],
        )
        .unwrap()
    }

    fn sorted(g: &TemporalGraph) -> DoublySortedRep {
        crate::representation::build_half_extend_respecting(g).unwrap()
    }

    #[test]
    fn fewest_on_g1() {
        let g = g1();
        let rep = sorted(&g);
        let res = min_cost_walks(&g, &rep, &FewestEdges, 0).unwrap();
        assert_eq!(res.list(1), &[(0, 1)]);
        assert_eq!(res.list(2), &[(1, 2), (2, 1)]);
        let w = reconstruct_min_walk(&res, 1).unwrap();
        assert_eq!(w.edges(), &[0, 1]);
        assert_eq!(fold_walk(&FewestEdges, &g, &w), Some(2));
        assert_eq!(reconstruct_min_walk(&res, 2).unwrap().edges(), &[2]);
        let summary = solve_fewest_edges(&g, &rep, 0).unwrap();
        assert_eq!(summary, vec![None, Some((1, 0)), Some((1, 2))]);
    }

    #[test]
    fn min_waiting_on_g1() {
        let g = g1();
        let rep = sorted(&g);
        let res = min_cost_walks(&g, &rep, &LinComb::min_waiting(), 0).unwrap();
        assert_eq!(
            res.list(2),
            &[(1, LinCost { tau: 1, delta: -2 }), (2, LinCost { tau: 5, delta: -1 })]
        );
        assert_eq!(solve_min_waiting(&g, &rep, 0).unwrap()[2], Some((0, 2)));
        let ea = LinComb::new(crate::cost::LinCombParams::new([1, 0, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(solve_lincomb(&g, &rep, &ea, 0).unwrap()[2], Some((4, 1)));
    }

    #[test]
    fn single_edge() {
        let g = TemporalGraph::unrestricted(2, vec![TemporalEdge::new(0, 1, 7, 3)]).unwrap();
        let rep = sorted(&g);
        let res = min_cost_walks(&g, &rep, &ShortestFastest, 0).unwrap();
        assert_eq!(res.list(1), &[(0, SfCost { dep: 7, edges: 1 })]);
        assert_eq!(res.parent(0), Some(0));
    }

    #[test]
    fn shortest_fastest_on_g1() {
        let g = g1();
        let rep = sorted(&g);
        let s = solve_shortest_fastest(&g, &rep, 0).unwrap();
        assert_eq!(
            s[2],
            Some(ShortestFastestSummary {
                duration: 1,
                edges: 1,
                last_edge: 2
            })
        );
        assert_eq!(s[0], None);
    }

    #[test]
    fn g3_chain() {
        let g = g3();
        let rep = sorted(&g);
        let res = min_cost_walks(&g, &rep, &FewestEdges, 0).unwrap();
        assert_eq!(res.list(3), &[(2, 3)]);
        assert_eq!(reconstruct_min_walk(&res, 2).unwrap().edges(), &[0, 1, 2]);
    }

    #[test]
    fn profiles_on_g1() {
        let g = g1();
        let rep = sorted(&g);
        let p = solve_profile(&g, &rep, 0).unwrap();
        assert_eq!(p[2], vec![(1, 4), (5, 6)]);
        assert!(p[0].is_empty());
        let g = g1_with_waiting(1, WaitingBounds::finite(0, 0));
        let p = solve_profile(&g, &sorted(&g), 0).unwrap();
        assert_eq!(p[2], vec![(5, 6)]);
    }

    #[test]
    fn pareto_filter_cases() {
        assert_eq!(pareto_profile([(1, 4), (0, 4), (3, 4), (2, 5), (6, 7)]), vec![(3, 4), (6, 7)]);
        assert_eq!(pareto_profile([(2, 1), (2, 1)]), vec![(2, 1)]);
    }

    #[test]
    fn bounded_source_profile_on_g1() {
        let g = g1_with_waiting(0, WaitingBounds::finite(0, 1));
        let gr = g.reversed();
        let rep = sorted(&gr);
        let p = solve_profile_bounded_source(&gr, &rep, 2).unwrap();
        assert_eq!(
            p[0],
            vec![
                ProfileSegment { start: Some(0), end: 1, arrival: 4 },
                ProfileSegment { start: Some(4), end: 5, arrival: 6 },
            ]
        );
        // node b has no departures
        assert!(p[2].is_empty());

        let gr = g1().reversed();
        let p = solve_profile_bounded_source(&gr, &sorted(&gr), 2).unwrap();
        assert_eq!(
            p[0],
            vec![
                ProfileSegment { start: None, end: 1, arrival: 4 },
                ProfileSegment { start: Some(2), end: 5, arrival: 6 },
            ]
        );
    }

    #[test]
    fn sweep_merges_and_takes_minimum() {
        // windows [0,4]->9, [2,6]->3, [3,7]->5
        let segs = sweep_windows(&[(4, 9), (6, 3), (7, 5)], 0, MaxWait::Finite(4));
        assert_eq!(
            segs,
            vec![
                ProfileSegment { start: Some(0), end: 1, arrival: 9 },
                ProfileSegment { start: Some(2), end: 6, arrival: 3 },
                ProfileSegment { start: Some(7), end: 7, arrival: 5 },
            ]
        );
    }

    #[test]
    fn process_costs_examples() {
        // one tail with five out-edges, intervals built by hand
        let g = TemporalGraph::unrestricted(
            2,
            (0..5).map(|t| TemporalEdge::new(0, 1, t, 1)).collect(),
        )
        .unwrap();
        let rep = sorted(&g);
        let mut sc = Scanner::new(&g, &rep, &FewestEdges, 0, SolveOptions::default());
        sc.arena.push(Interval { l: 1, r: 3, cost: 7, parent: 4, prev: NONE, next: 1 });
        sc.arena.push(Interval { l: 3, r: 5, cost: 8, parent: 3, prev: 0, next: NONE });
        sc.nodes[0].first = 0;
        sc.nodes[0].first_l = 1;
        sc.nodes[0].last = 1;
        sc.nodes[0].lv = 1;
        sc.nodes[0].rend = 5;
        sc.process_costs(0, 2);
        assert_eq!(sc.fin[1].cost, Some(7));
        assert_eq!(sc.fin[2].cost, None);
        assert_eq!((sc.arena[0].l, sc.nodes[0].lv), (2, 2));
        sc.process_costs(0, 5);
        let got: Vec<(Option<u64>, usize)> = sc.fin[1..5].iter().map(|f| (f.cost, f.parent)).collect();
        assert_eq!(got, vec![(Some(7), 4), (Some(7), 4), (Some(8), 3), (Some(8), 3)]);
        assert_eq!((sc.nodes[0].first, sc.nodes[0].lv), (NONE, 5));
        sc.process_costs(0, 5);
        assert_eq!(sc.nodes[0].lv, 5);
    }

    #[test]
    fn invariant_checks_pass_on_g1() {
        let g = g1();
        let rep = sorted(&g);
        let opts = SolveOptions { check_invariants: true };
        assert!(min_cost_walks_with(&g, &rep, &LinComb::min_waiting(), 0, opts).is_ok());
    }
}
