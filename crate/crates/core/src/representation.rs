//! Doubly-sorted edge orderings, the space-time multigraph, and conversions
//! between them.

use crate::error::RepError;
use crate::graph::{EdgeId, NodeId, TemporalGraph, Time};

/// Two orderings of the edge set with cross-pointers and per-tail departure buckets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublySortedRep {
    e_arr: Vec<EdgeId>,
    e_dep: Vec<EdgeId>,
    arr_pos: Vec<usize>,
    dep_pos: Vec<usize>,
    dep_start: Vec<usize>,
    dep_edges: Vec<EdgeId>,
    // departure time of each `dep_edges` entry, so bucket scans stay sequential
    dep_time: Vec<Time>,
    dep_index: Vec<usize>,
    // position of each edge inside `dep_edges`
    dep_slot: Vec<usize>,
    // `e_arr` zipped with `dep_slot`, so the scan reads one stream
    arr_slot: Vec<(EdgeId, usize)>,
    half_extend_respecting: bool,
    fully_sorted: bool,
}

/// Result of [`check_doubly_sorted`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SortCheck {
    pub node_arrival_ok: bool,
    pub node_departure_ok: bool,
    pub half_extend_ok: bool,
}

impl SortCheck {
    pub fn all(&self) -> bool {
        self.node_arrival_ok && self.node_departure_ok && self.half_extend_ok
    }
}

fn inverse(order: &[EdgeId], list: &'static str) -> Result<Vec<usize>, RepError> {
    let m = order.len();
    let mut pos = vec![usize::MAX; m];
    for (i, &e) in order.iter().enumerate() {
        if e >= m || pos[e] != usize::MAX {
            return Err(RepError::MalformedPermutation { list, m });
        }
        pos[e] = i;
    }
    Ok(pos)
}

impl DoublySortedRep {
    /// Globally sorted by arrival and by departure; ties keep input order.
    pub fn build_fully_sorted(g: &TemporalGraph) -> Result<Self, RepError> {
        if let Some(edge) = g.edges().iter().position(|e| e.travel == 0) {
            return Err(RepError::ZeroTravel { edge });
        }
        Ok(Self::build_time_sorted(g))
    }

    /// Like [`build_fully_sorted`](Self::build_fully_sorted) but accepts
    /// zero-travel edges. The result is always a doubly-sorted
    /// representation; it is half-extend-respecting only without zero travel.
    pub fn build_time_sorted(g: &TemporalGraph) -> Self {
        let edges = g.edges();
        let mut e_arr: Vec<EdgeId> = (0..edges.len()).collect();
        e_arr.sort_by_key(|&e| edges[e].arr());
        let mut e_dep: Vec<EdgeId> = (0..edges.len()).collect();
        e_dep.sort_by_key(|&e| edges[e].dep);
        let mut rep = Self::assemble(g, e_arr, e_dep).expect("sorted orders are permutations");
        rep.fully_sorted = true;
        rep.half_extend_respecting = !g.has_zero_travel();
        rep
    }

    /// Take caller-supplied orderings. Both must be permutations and
    /// node-sorted; the half-extend flag is decided exactly.
    pub fn from_orders(
        g: &TemporalGraph,
        e_arr: Vec<EdgeId>,
        e_dep: Vec<EdgeId>,
    ) -> Result<Self, RepError> {
        if e_arr.len() != g.edge_count() {
            return Err(RepError::MalformedPermutation {
                list: "arr",
                m: g.edge_count(),
            });
        }
        if e_dep.len() != g.edge_count() {
            return Err(RepError::MalformedPermutation {
                list: "dep",
                m: g.edge_count(),
            });
        }
        let mut rep = Self::assemble(g, e_arr, e_dep)?;
        let check = check_doubly_sorted(g, &rep);
        if !check.node_arrival_ok {
            return Err(RepError::NotNodeArrivalSorted);
        }
        if !check.node_departure_ok {
            return Err(RepError::NotNodeDepartureSorted);
        }
        rep.half_extend_respecting = check.half_extend_ok;
        let edges = g.edges();
        rep.fully_sorted = rep.e_arr.windows(2).all(|w| edges[w[0]].arr() <= edges[w[1]].arr())
            && rep.e_dep.windows(2).all(|w| edges[w[0]].dep <= edges[w[1]].dep);
        Ok(rep)
    }

    /// Orders trusted to be node-sorted; flags are set by the caller.
    pub(crate) fn from_trusted_orders(
        g: &TemporalGraph,
        e_arr: Vec<EdgeId>,
        e_dep: Vec<EdgeId>,
        half_extend_respecting: bool,
    ) -> Result<Self, RepError> {
        let mut rep = Self::assemble(g, e_arr, e_dep)?;
        rep.half_extend_respecting = half_extend_respecting;
        Ok(rep)
    }

    fn assemble(g: &TemporalGraph, e_arr: Vec<EdgeId>, e_dep: Vec<EdgeId>) -> Result<Self, RepError> {
        let arr_pos = inverse(&e_arr, "arr")?;
        let dep_pos = inverse(&e_dep, "dep")?;
        let n = g.node_count();
        let mut dep_start = vec![0usize; n + 1];
        for e in g.edges() {
            dep_start[e.tail + 1] += 1;
        }
        for v in 0..n {
            dep_start[v + 1] += dep_start[v];
        }
        let mut fill = dep_start.clone();
        let mut dep_edges = vec![0; e_dep.len()];
        let mut dep_time = vec![0; e_dep.len()];
        let mut dep_index = vec![0; e_dep.len()];
        let mut dep_slot = vec![0; e_dep.len()];
        for &e in &e_dep {
            let edge = g.edge(e);
            let t = edge.tail;
            dep_edges[fill[t]] = e;
            dep_time[fill[t]] = edge.dep;
            dep_index[e] = fill[t] - dep_start[t];
            dep_slot[e] = fill[t];
            fill[t] += 1;
        }
        let arr_slot = e_arr.iter().map(|&e| (e, dep_slot[e])).collect();
        Ok(DoublySortedRep {
            e_arr,
            e_dep,
            arr_pos,
            dep_pos,
            dep_start,
            dep_edges,
            dep_time,
            dep_index,
            dep_slot,
            arr_slot,
            half_extend_respecting: false,
            fully_sorted: false,
        })
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.e_arr.len()
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.dep_start.len() - 1
    }

    pub fn e_arr(&self) -> &[EdgeId] {
        &self.e_arr
    }

    pub fn e_dep(&self) -> &[EdgeId] {
        &self.e_dep
    }

    pub fn arr_pos(&self, e: EdgeId) -> usize {
        self.arr_pos[e]
    }

    pub fn dep_pos(&self, e: EdgeId) -> usize {
        self.dep_pos[e]
    }

    /// `E_v^dep`: edges with tail `v` in departure order.
    #[inline]
    pub fn dep_bucket(&self, v: NodeId) -> &[EdgeId] {
        &self.dep_edges[self.dep_start[v]..self.dep_start[v + 1]]
    }

    /// Position of `e` inside the bucket of its tail.
    #[inline]
    pub fn dep_index(&self, e: EdgeId) -> usize {
        self.dep_index[e]
    }

    pub(crate) fn dep_start(&self) -> &[usize] {
        &self.dep_start
    }

    pub(crate) fn dep_edges(&self) -> &[EdgeId] {
        &self.dep_edges
    }

    pub(crate) fn dep_times(&self) -> &[Time] {
        &self.dep_time
    }

    pub(crate) fn dep_slots(&self) -> &[usize] {
        &self.dep_slot
    }

    /// `(edge, slot)` in arrival order.
    pub(crate) fn arr_slots(&self) -> &[(EdgeId, usize)] {
        &self.arr_slot
    }

    pub fn is_half_extend_respecting(&self) -> bool {
        self.half_extend_respecting
    }

    pub fn is_fully_sorted(&self) -> bool {
        self.fully_sorted
    }

    /// Must describe a graph with the same node and edge counts.
    pub fn matches(&self, g: &TemporalGraph) -> bool {
        self.edge_count() == g.edge_count() && self.node_count() == g.node_count()
    }
}

/// Report node-arrival, node-departure, and half-extend sortedness.
///
/// The half-extend test is exact and runs in `O(M log M)`: for every edge
/// `f` out of `v`, the latest position among edges into `v` arriving by
/// `dep(f) - alpha_v` must come before `f`.
pub fn check_doubly_sorted(g: &TemporalGraph, rep: &DoublySortedRep) -> SortCheck {
    check_orders(g, &rep.e_arr, &rep.e_dep).expect("representation holds permutations")
}

/// Same as [`check_doubly_sorted`] on raw orderings.
pub fn check_orders(g: &TemporalGraph, e_arr: &[EdgeId], e_dep: &[EdgeId]) -> Result<SortCheck, RepError> {
    let m = g.edge_count();
    if e_arr.len() != m {
        return Err(RepError::MalformedPermutation { list: "arr", m });
    }
    if e_dep.len() != m {
        return Err(RepError::MalformedPermutation { list: "dep", m });
    }
    let arr_pos = inverse(e_arr, "arr")?;
    inverse(e_dep, "dep")?;
    let edges = g.edges();
    let n = g.node_count();

    let mut last = vec![Time::MIN; n];
    let mut node_arrival_ok = true;
    for &e in e_arr {
        let (h, a) = (edges[e].head, edges[e].arr());
        if a < last[h] {
            node_arrival_ok = false;
            break;
        }
        last[h] = a;
    }
    last.fill(Time::MIN);
    let mut node_departure_ok = true;
    for &e in e_dep {
        let (t, d) = (edges[e].tail, edges[e].dep);
        if d < last[t] {
            node_departure_ok = false;
            break;
        }
        last[t] = d;
    }

    // incoming edges per node sorted by arrival with prefix maxima of arr_pos
    let mut start = vec![0usize; n + 1];
    for e in edges {
        start[e.head + 1] += 1;
    }
    for v in 0..n {
        start[v + 1] += start[v];
    }
    let mut fill = start.clone();
    let mut incoming = vec![0usize; m];
    for (id, e) in edges.iter().enumerate() {
        incoming[fill[e.head]] = id;
        fill[e.head] += 1;
    }
    let mut prefix_max = vec![0usize; m];
    for v in 0..n {
        let slice = &mut incoming[start[v]..start[v + 1]];
        slice.sort_by_key(|&e| edges[e].arr());
        let mut best = 0usize;
        for (k, &e) in slice.iter().enumerate() {
            best = best.max(arr_pos[e]);
            prefix_max[start[v] + k] = best;
        }
    }
    let mut half_extend_ok = true;
    for (id, f) in edges.iter().enumerate() {
        let v = f.tail;
        let slice = &incoming[start[v]..start[v + 1]];
        let bound = f.dep - g.alpha(v);
        let count = slice.partition_point(|&e| edges[e].arr() <= bound);
        if count > 0 && prefix_max[start[v] + count - 1] >= arr_pos[id] {
            half_extend_ok = false;
            break;
        }
    }
    Ok(SortCheck {
        node_arrival_ok,
        node_departure_ok,
        half_extend_ok,
    })
}

/// Static multigraph of time-labelled node copies.
///
/// Copies of node `v` are the dense ids `copy_start[v]..copy_start[v+1]`,
/// in increasing time. Waiting arcs join consecutive copies of a node and
/// are left implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceTimeGraph {
    copy_start: Vec<usize>,
    copy_time: Vec<Time>,
    conn: Vec<(usize, usize)>,
}

impl SpaceTimeGraph {
    /// `copies[v]` lists the time labels of `v`; `conn[e]` is the arc of edge `e`.
    pub fn new(copies: Vec<Vec<Time>>, conn: Vec<(usize, usize)>) -> Result<Self, RepError> {
        let mut copy_start = Vec::with_capacity(copies.len() + 1);
        let mut copy_time = Vec::new();
        copy_start.push(0);
        for (v, times) in copies.iter().enumerate() {
            if times.windows(2).any(|w| w[0] >= w[1]) {
                return Err(RepError::MalformedSpaceTime(format!(
                    "copies of node {v} are not strictly increasing"
                )));
            }
            copy_time.extend_from_slice(times);
            copy_start.push(copy_time.len());
        }
        let st = SpaceTimeGraph {
            copy_start,
            copy_time,
            conn,
        };
        for (e, &(a, b)) in st.conn.iter().enumerate() {
            if a >= st.copy_count() || b >= st.copy_count() {
                return Err(RepError::MalformedSpaceTime(format!("arc {e} names an unknown copy")));
            }
            if st.copy_time[a] > st.copy_time[b] {
                return Err(RepError::MalformedSpaceTime(format!("arc {e} goes back in time")));
            }
        }
        let mut used = vec![false; st.copy_count()];
        for &(a, b) in &st.conn {
            used[a] = true;
            used[b] = true;
        }
        if let Some(c) = used.iter().position(|&u| !u) {
            return Err(RepError::MalformedSpaceTime(format!(
                "copy {c} has no connection arc"
            )));
        }
        Ok(st)
    }

    pub fn node_count(&self) -> usize {
        self.copy_start.len() - 1
    }

    pub fn copy_count(&self) -> usize {
        self.copy_time.len()
    }

    pub fn copies_of(&self, v: NodeId) -> std::ops::Range<usize> {
        self.copy_start[v]..self.copy_start[v + 1]
    }

    pub fn copy_time(&self, c: usize) -> Time {
        self.copy_time[c]
    }

    pub fn copy_node(&self, c: usize) -> NodeId {
        self.copy_start.partition_point(|&s| s <= c) - 1
    }

    /// Connection arc of edge `e` as a pair of copy ids.
    pub fn connection(&self, e: EdgeId) -> (usize, usize) {
        self.conn[e]
    }

    pub fn connections(&self) -> &[(usize, usize)] {
        &self.conn
    }

    pub fn waiting_arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |v| {
            let r = self.copies_of(v);
            (r.start..r.end.saturating_sub(1)).map(|c| (c, c + 1))
        })
    }

    pub fn waiting_arc_count(&self) -> usize {
        self.copy_count() - (0..self.node_count()).filter(|&v| !self.copies_of(v).is_empty()).count()
    }

    /// Recover the temporal edges; waiting bounds are supplied separately.
    pub fn to_temporal_graph(
        &self,
        waiting: Vec<crate::graph::WaitingBounds>,
    ) -> Result<TemporalGraph, crate::error::GraphError> {
        let node_of = self.copy_nodes();
        let edges = self
            .conn
            .iter()
            .map(|&(a, b)| {
                crate::graph::TemporalEdge::new(
                    node_of[a],
                    node_of[b],
                    self.copy_time[a],
                    self.copy_time[b] - self.copy_time[a],
                )
            })
            .collect();
        TemporalGraph::new(waiting, edges)
    }

    fn copy_nodes(&self) -> Vec<NodeId> {
        let mut node_of = vec![0; self.copy_count()];
        for v in 0..self.node_count() {
            for c in self.copies_of(v) {
                node_of[c] = v;
            }
        }
        node_of
    }

    /// Whether the arcs describe exactly the edges of `g`.
    pub fn describes(&self, g: &TemporalGraph) -> bool {
        if self.node_count() != g.node_count() || self.conn.len() != g.edge_count() {
            return false;
        }
        let node_of = self.copy_nodes();
        g.edges().iter().zip(&self.conn).all(|(e, &(a, b))| {
            node_of[a] == e.tail
                && node_of[b] == e.head
                && self.copy_time[a] == e.dep
                && self.copy_time[b] == e.arr()
        })
    }
}

/// Build the space-time graph by merging each node's departure and arrival
/// event lists, both already sorted in `rep`.
pub fn to_space_time(g: &TemporalGraph, rep: &DoublySortedRep) -> SpaceTimeGraph {
    let n = g.node_count();
    let m = g.edge_count();
    let edges = g.edges();
    // E_v^arr by stable bucketing of e_arr
    let mut arr_start = vec![0usize; n + 1];
    for e in edges {
        arr_start[e.head + 1] += 1;
    }
    for v in 0..n {
        arr_start[v + 1] += arr_start[v];
    }
    let mut fill = arr_start.clone();
    let mut arr_edges = vec![0; m];
    for &e in rep.e_arr() {
        let h = edges[e].head;
        arr_edges[fill[h]] = e;
        fill[h] += 1;
    }

    let mut copy_start = Vec::with_capacity(n + 1);
    let mut copy_time: Vec<Time> = Vec::with_capacity(2 * m);
    let mut conn = vec![(0usize, 0usize); m];
    copy_start.push(0);
    for v in 0..n {
        let deps = rep.dep_bucket(v);
        let arrs = &arr_edges[arr_start[v]..arr_start[v + 1]];
        let (mut i, mut j) = (0, 0);
        let first = copy_time.len();
        while i < deps.len() || j < arrs.len() {
            let td = deps.get(i).map(|&e| edges[e].dep);
            let ta = arrs.get(j).map(|&e| edges[e].arr());
            let t = match (td, ta) {
                (Some(x), Some(y)) => x.min(y),
                (Some(x), None) => x,
                (None, Some(y)) => y,
                (None, None) => unreachable!(),
            };
            if copy_time.len() == first || *copy_time.last().unwrap() != t {
                copy_time.push(t);
            }
            let c = copy_time.len() - 1;
            while i < deps.len() && edges[deps[i]].dep == t {
                conn[deps[i]].0 = c;
                i += 1;
            }
            while j < arrs.len() && edges[arrs[j]].arr() == t {
                conn[arrs[j]].1 = c;
                j += 1;
            }
        }
        copy_start.push(copy_time.len());
    }
    SpaceTimeGraph {
        copy_start,
        copy_time,
        conn,
    }
}

/// Counters from the peeling passes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PeelStats {
    pub pops: usize,
    pub arc_removals: usize,
}

struct Peel<'a> {
    alpha_positive: &'a [bool],
    node_of: &'a [NodeId],
    conn_from: Vec<usize>,
    conn_to: Vec<usize>,
    conn_in_start: Vec<usize>,
    conn_in: Vec<EdgeId>,
    wait_next: Vec<usize>,
    wait_prev: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl<'a> Peel<'a> {
    /// Returns connection arcs in removal order, or a copy on a blocking cycle.
    fn run(&self, stats: &mut PeelStats) -> Result<Vec<EdgeId>, usize> {
        let w = self.node_of.len();
        let m = self.conn_from.len();
        let mut out_c = vec![0u32; w];
        for &a in &self.conn_from {
            out_c[a] += 1;
        }
        let mut has_wait_out: Vec<bool> = self.wait_next.iter().map(|&x| x != NONE).collect();
        let mut wait_in_present: Vec<bool> = self.wait_prev.iter().map(|&x| x != NONE).collect();
        let mut conn_in_done = vec![false; w];
        let mut removed = vec![false; w];
        let mut s: Vec<usize> = Vec::new();
        let mut s_prime: Vec<usize> = Vec::new();
        for c in 0..w {
            if !has_wait_out[c] {
                if out_c[c] == 0 {
                    s.push(c);
                } else if self.alpha_positive[self.node_of[c]] {
                    s_prime.push(c);
                }
            }
        }
        let mut order = Vec::with_capacity(m);
        let mut remaining = m + wait_in_present.iter().filter(|&&x| x).count();

        macro_rules! removed_out_arc {
            ($u:expr, $was_wait:expr) => {{
                let u = $u;
                if $was_wait {
                    has_wait_out[u] = false;
                    if out_c[u] > 0 && self.alpha_positive[self.node_of[u]] {
                        s_prime.push(u);
                    }
                } else {
                    out_c[u] -= 1;
                }
                if out_c[u] == 0 && !has_wait_out[u] {
                    s.push(u);
                }
                remaining -= 1;
                stats.arc_removals += 1;
            }};
        }

        loop {
            if let Some(v) = s.pop() {
                stats.pops += 1;
                if removed[v] {
                    continue;
                }
                removed[v] = true;
                if !conn_in_done[v] {
                    conn_in_done[v] = true;
                    for &e in &self.conn_in[self.conn_in_start[v]..self.conn_in_start[v + 1]] {
                        order.push(e);
                        removed_out_arc!(self.conn_from[e], false);
                    }
                }
                if wait_in_present[v] {
                    wait_in_present[v] = false;
                    removed_out_arc!(self.wait_prev[v], true);
                }
            } else if let Some(v) = s_prime.pop() {
                stats.pops += 1;
                if removed[v] || conn_in_done[v] {
                    continue;
                }
                conn_in_done[v] = true;
                for &e in &self.conn_in[self.conn_in_start[v]..self.conn_in_start[v + 1]] {
                    order.push(e);
                    removed_out_arc!(self.conn_from[e], false);
                }
            } else {
                break;
            }
        }
        if remaining == 0 {
            return Ok(order);
        }
        // follow surviving out-arcs until a copy repeats
        let mut conn_out_start = vec![0usize; w + 1];
        for &a in &self.conn_from {
            conn_out_start[a + 1] += 1;
        }
        for c in 0..w {
            conn_out_start[c + 1] += conn_out_start[c];
        }
        let mut fill = conn_out_start.clone();
        let mut conn_out = vec![0usize; m];
        for (e, &a) in self.conn_from.iter().enumerate() {
            conn_out[fill[a]] = e;
            fill[a] += 1;
        }
        let mut arc_alive = vec![true; m];
        for c in 0..w {
            if conn_in_done[c] {
                for &e in &self.conn_in[self.conn_in_start[c]..self.conn_in_start[c + 1]] {
                    arc_alive[e] = false;
                }
            }
        }
        let mut cur = (0..w)
            .find(|&c| !removed[c] && (out_c[c] > 0 || has_wait_out[c]))
            .expect("stalled peel leaves a copy with out-arcs");
        let mut seen = vec![false; w];
        loop {
            if seen[cur] {
                return Err(cur);
            }
            seen[cur] = true;
            if has_wait_out[cur] {
                cur = self.wait_next[cur];
                continue;
            }
            let next = conn_out[conn_out_start[cur]..conn_out_start[cur + 1]]
                .iter()
                .copied()
                .find(|&e| arc_alive[e])
                .expect("copy with positive out-degree has a live arc");
            cur = self.conn_to[next];
        }
    }
}

fn peel_setup<'a>(
    st: &SpaceTimeGraph,
    alpha_positive: &'a [bool],
    node_of: &'a [NodeId],
    reverse: bool,
) -> Peel<'a> {
    let w = st.copy_count();
    let m = st.conn.len();
    let (conn_from, conn_to): (Vec<usize>, Vec<usize>) = if reverse {
        st.conn.iter().map(|&(a, b)| (b, a)).unzip()
    } else {
        st.conn.iter().copied().unzip()
    };
    let mut conn_in_start = vec![0usize; w + 1];
    for &b in &conn_to {
        conn_in_start[b + 1] += 1;
    }
    for c in 0..w {
        conn_in_start[c + 1] += conn_in_start[c];
    }
    let mut fill = conn_in_start.clone();
    let mut conn_in = vec![0; m];
    for (e, &b) in conn_to.iter().enumerate() {
        conn_in[fill[b]] = e;
        fill[b] += 1;
    }
    let mut wait_next = vec![NONE; w];
    let mut wait_prev = vec![NONE; w];
    for (a, b) in st.waiting_arcs() {
        let (a, b) = if reverse { (b, a) } else { (a, b) };
        wait_next[a] = b;
        wait_prev[b] = a;
    }
    Peel {
        alpha_positive,
        node_of,
        conn_from,
        conn_to,
        conn_in_start,
        conn_in,
        wait_next,
        wait_prev,
    }
}

/// Kahn-style peeling of the space-time graph into a representation whose
/// two orders are both half-extend-respecting.
///
/// `E^arr` is the reversed removal order of connection arcs; `E^dep` comes
/// from the same peeling run on the reversed multigraph.
pub fn from_space_time(g: &TemporalGraph, st: &SpaceTimeGraph) -> Result<DoublySortedRep, RepError> {
    from_space_time_with_stats(g, st).map(|(rep, _)| rep)
}

pub fn from_space_time_with_stats(
    g: &TemporalGraph,
    st: &SpaceTimeGraph,
) -> Result<(DoublySortedRep, PeelStats), RepError> {
    if !st.describes(g) {
        return Err(RepError::MalformedSpaceTime(
            "space-time graph does not match the temporal graph".into(),
        ));
    }
    let alpha_positive: Vec<bool> = g.waiting_bounds().iter().map(|w| w.alpha > 0).collect();
    let node_of = st.copy_nodes();
    let mut stats = PeelStats::default();
    let stalled = |c: usize| RepError::NotZeroAcyclic {
        node: node_of[c],
        time: st.copy_time[c],
    };
    let forward = peel_setup(st, &alpha_positive, &node_of, false);
    let mut e_arr = forward.run(&mut stats).map_err(stalled)?;
    e_arr.reverse();
    let backward = peel_setup(st, &alpha_positive, &node_of, true);
    let e_dep = backward.run(&mut stats).map_err(stalled)?;
    let rep = DoublySortedRep::from_trusted_orders(g, e_arr, e_dep, true)?;
    Ok((rep, stats))
}

/// Build a half-extend-respecting representation through the space-time graph.
pub fn build_half_extend_respecting(g: &TemporalGraph) -> Result<DoublySortedRep, RepError> {
    let sorted = DoublySortedRep::build_time_sorted(g);
    if sorted.is_half_extend_respecting() {
        return Ok(sorted);
    }
    from_space_time(g, &to_space_time(g, &sorted))
}

/// No closed walk of zero-travel edges through zero-alpha nodes at one instant.
pub fn is_zero_acyclic(g: &TemporalGraph) -> bool {
    build_half_extend_respecting(g).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::g1;
    use crate::graph::{TemporalEdge, WaitingBounds};

    fn g2(alpha_a: i64, alpha_b: i64) -> TemporalGraph {
        TemporalGraph::new(
            vec![WaitingBounds::new(alpha_a, crate::graph::MaxWait::Infinite), WaitingBounds::new(alpha_b, crate::graph::MaxWait::Infinite)],
            vec![TemporalEdge::new(0, 1, 5, 0), TemporalEdge::new(1, 0, 5, 0)],
        )
        .unwrap()
    }

    #[test]
    fn fully_sorted_g1() {
        let g = g1();
        let rep = DoublySortedRep::build_fully_sorted(&g).unwrap();
        assert_eq!(rep.e_arr(), &[0, 1, 2]);
        assert_eq!(rep.e_dep(), &[0, 1, 2]);
        assert!(rep.is_fully_sorted() && rep.is_half_extend_respecting());
        assert_eq!(rep.dep_bucket(0), &[0, 2]);
        assert_eq!(rep.dep_index(2), 1);
        assert!(check_doubly_sorted(&g, &rep).all());
    }

    #[test]
    fn fully_sorted_rejects_zero_travel() {
        assert!(matches!(
            DoublySortedRep::build_fully_sorted(&g2(0, 0)),
            Err(RepError::ZeroTravel { edge: 0 })
        ));
    }

    #[test]
    fn check_detects_swapped_arrivals() {
        let g = TemporalGraph::unrestricted(
            2,
            vec![TemporalEdge::new(0, 1, 0, 1), TemporalEdge::new(0, 1, 3, 1)],
        )
        .unwrap();
        let c = check_orders(&g, &[1, 0], &[0, 1]).unwrap();
        assert!(!c.node_arrival_ok && c.node_departure_ok);
        let c = check_orders(&g, &[0, 1], &[1, 0]).unwrap();
        assert!(c.node_arrival_ok && !c.node_departure_ok);
        assert!(check_orders(&g, &[0, 0], &[0, 1]).is_err());
    }

    #[test]
    fn ties_across_heads_are_free() {
        let g = TemporalGraph::unrestricted(
            3,
            vec![TemporalEdge::new(0, 1, 0, 2), TemporalEdge::new(0, 2, 1, 1)],
        )
        .unwrap();
        for arr in [[0, 1], [1, 0]] {
            assert!(check_orders(&g, &arr, &[0, 1]).unwrap().all());
        }
    }

    #[test]
    fn g2_has_no_half_extend_order() {
        let g = g2(0, 0);
        for arr in [[0, 1], [1, 0]] {
            assert!(!check_orders(&g, &arr, &[0, 1]).unwrap().half_extend_ok);
        }
    }

    #[test]
    fn space_time_of_g1() {
        let g = g1();
        let rep = DoublySortedRep::build_fully_sorted(&g).unwrap();
        let st = to_space_time(&g, &rep);
        let times: Vec<Vec<Time>> = (0..3)
            .map(|v| st.copies_of(v).map(|c| st.copy_time(c)).collect())
            .collect();
        assert_eq!(times, vec![vec![1, 5], vec![2, 3], vec![4, 6]]);
        let waits: Vec<_> = st.waiting_arcs().collect();
        assert_eq!(waits, vec![(0, 1), (2, 3), (4, 5)]);
        assert_eq!(st.connections(), &[(0, 2), (3, 4), (1, 5)]);
        assert!(st.describes(&g));
    }

    #[test]
    fn space_time_single_edge_and_self_loop() {
        let g = TemporalGraph::unrestricted(2, vec![TemporalEdge::new(0, 1, 3, 2)]).unwrap();
        let st = to_space_time(&g, &DoublySortedRep::build_time_sorted(&g));
        assert_eq!((st.copy_count(), st.waiting_arc_count()), (2, 0));
        let g = TemporalGraph::unrestricted(1, vec![TemporalEdge::new(0, 0, 2, 0)]).unwrap();
        let st = to_space_time(&g, &DoublySortedRep::build_time_sorted(&g));
        assert_eq!(st.copy_count(), 1);
        assert_eq!(st.connection(0), (0, 0));
        assert_eq!(st.waiting_arc_count(), 0);
    }

    #[test]
    fn peel_g1_round_trip() {
        let g = g1();
        let st = to_space_time(&g, &DoublySortedRep::build_fully_sorted(&g).unwrap());
        let rep = from_space_time(&g, &st).unwrap();
        assert!(check_doubly_sorted(&g, &rep).all());
        let c = check_orders(&g, rep.e_dep(), rep.e_dep()).unwrap();
        assert!(c.half_extend_ok);
    }

    #[test]
    fn peel_g2_cases() {
        let g = g2(0, 0);
        let st = to_space_time(&g, &DoublySortedRep::build_time_sorted(&g));
        assert!(matches!(
            from_space_time(&g, &st),
            Err(RepError::NotZeroAcyclic { time: 5, .. })
        ));
        assert!(!is_zero_acyclic(&g));

        let g = g2(1, 0);
        let rep = build_half_extend_respecting(&g).unwrap();
        assert_eq!(rep.e_arr(), &[0, 1]);
        assert!(check_doubly_sorted(&g, &rep).all());
        assert!(is_zero_acyclic(&g2(0, 1)));
    }

    #[test]
    fn zero_self_loop_is_a_zero_cycle() {
        let g = TemporalGraph::unrestricted(1, vec![TemporalEdge::new(0, 0, 2, 0)]).unwrap();
        assert!(!is_zero_acyclic(&g));
        let g = TemporalGraph::new(vec![WaitingBounds::finite(1, 3)], vec![TemporalEdge::new(0, 0, 2, 0)]).unwrap();
        assert!(is_zero_acyclic(&g));
    }

    #[test]
    fn peel_counts_are_linear() {
        let g = g1();
        let st = to_space_time(&g, &DoublySortedRep::build_fully_sorted(&g).unwrap());
        let (_, stats) = from_space_time_with_stats(&g, &st).unwrap();
        let arcs = st.connections().len() + st.waiting_arc_count();
        assert_eq!(stats.arc_removals, 2 * arcs);
        assert!(stats.pops <= 4 * st.copy_count());
    }
}
