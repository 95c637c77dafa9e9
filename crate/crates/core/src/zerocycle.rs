//! Minimum-cost walks when zero-cycles are present.
//!
//! Edges are grouped by arrival time. Inside a group, the zero-travel edges
//! between nodes without minimum waiting form a small digraph where an
//! algebraic Dijkstra run fixes a scan order for the block. The departure
//! buckets are permuted in place to match, yielding a representation under
//! which the plain scan gives the same answer.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::ops::Range;

use crate::cost::CostStructure;
use crate::error::SolveError;
use crate::graph::{EdgeId, NodeId, TemporalEdge, TemporalGraph, Time};
use crate::mincost::{MinCostResult, Scanner, SolveOptions, NONE};
use crate::reachability::check_source;
use crate::representation::DoublySortedRep;

/// Edges of one arrival time, split by role.
///
/// Ranges index the flat order returned by [`partition_blocks`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrivalBlock {
    pub time: Time,
    /// Positive travel time.
    pub positive: Range<usize>,
    /// Zero travel, tail with positive minimum waiting.
    pub zero_tail: Range<usize>,
    /// Zero travel, both ends without minimum waiting.
    pub zero: Range<usize>,
    /// Zero travel, only the head with positive minimum waiting.
    pub zero_head: Range<usize>,
}

/// All edges sorted by arrival, equal arrivals by head id, and each head's
/// edges in the order of its arrival list.
///
/// This is the k-way merge of the per-head lists. A stable sort on
/// gathered keys produces the same order while streaming through memory.
pub fn arrival_merge(g: &TemporalGraph, rep: &DoublySortedRep) -> Vec<EdgeId> {
    sorted_keys(g, rep.e_arr()).into_iter().map(|k| k.2).collect()
}

fn sorted_keys(g: &TemporalGraph, e_arr: &[EdgeId]) -> Vec<(Time, NodeId, EdgeId)> {
    let mut keyed: Vec<(Time, NodeId, EdgeId)> = e_arr
        .iter()
        .map(|&e| {
            let edge = g.edge(e);
            (edge.arr(), edge.head, e)
        })
        .collect();
    keyed.sort_by_key(|k| (k.0, k.1));
    keyed
}

fn role(g: &TemporalGraph, edge: &TemporalEdge) -> usize {
    if edge.travel > 0 {
        0
    } else if g.alpha(edge.tail) > 0 {
        1
    } else if g.alpha(edge.head) > 0 {
        3
    } else {
        2
    }
}

/// Group an arrival-sorted order into blocks, stably reordered by role.
pub fn partition_blocks(g: &TemporalGraph, order: &[EdgeId]) -> (Vec<EdgeId>, Vec<ArrivalBlock>) {
    let keyed: Vec<(Time, NodeId, EdgeId)> = order.iter().map(|&e| (g.edge(e).arr(), g.edge(e).head, e)).collect();
    partition_keyed(g, &keyed)
}

fn partition_keyed(g: &TemporalGraph, keyed: &[(Time, NodeId, EdgeId)]) -> (Vec<EdgeId>, Vec<ArrivalBlock>) {
    let mut flat = Vec::with_capacity(keyed.len());
    let mut blocks = Vec::new();
    let mut by_role: [Vec<EdgeId>; 4] = Default::default();
    let mut i = 0;
    while i < keyed.len() {
        let time = keyed[i].0;
        let mut j = i;
        while j < keyed.len() && keyed[j].0 == time {
            let e = keyed[j].2;
            by_role[role(g, g.edge(e))].push(e);
            j += 1;
        }
        let mut bounds = [flat.len(); 5];
        for (r, list) in by_role.iter_mut().enumerate() {
            flat.extend_from_slice(list);
            list.clear();
            bounds[r + 1] = flat.len();
        }
        blocks.push(ArrivalBlock {
            time,
            positive: bounds[0]..bounds[1],
            zero_tail: bounds[1]..bounds[2],
            zero: bounds[2]..bounds[3],
            zero_head: bounds[3]..bounds[4],
        });
        i = j;
    }
    (flat, blocks)
}

/// Result of [`algebraic_dijkstra`] on a local digraph.
#[derive(Debug, Clone)]
pub struct MinCostForest<V> {
    pub key: Vec<Option<V>>,
    /// Index of the tree arc entering each vertex; `None` for roots.
    pub parent_arc: Vec<Option<usize>>,
    pub pop_order: Vec<usize>,
}

struct HeapItem<'c, C: CostStructure> {
    key: C::Value,
    vertex: usize,
    tie: usize,
    cs: &'c C,
}

impl<C: CostStructure> PartialEq for HeapItem<'_, C> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<C: CostStructure> Eq for HeapItem<'_, C> {}

impl<C: CostStructure> PartialOrd for HeapItem<'_, C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: CostStructure> Ord for HeapItem<'_, C> {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        if self.cs.less(&self.key, &other.key) {
            Ordering::Greater
        } else if self.cs.less(&other.key, &self.key) {
            Ordering::Less
        } else {
            other.tie.cmp(&self.tie)
        }
    }
}

/// Buffers of one Dijkstra run, reused across blocks.
struct DijkstraWork<'c, C: CostStructure> {
    out_start: Vec<usize>,
    fill: Vec<usize>,
    out_arcs: Vec<usize>,
    done: Vec<bool>,
    heap: BinaryHeap<HeapItem<'c, C>>,
    key: Vec<Option<C::Value>>,
    parent_arc: Vec<Option<usize>>,
    pop_order: Vec<usize>,
}

impl<C: CostStructure> DijkstraWork<'_, C> {
    fn new() -> Self {
        DijkstraWork {
            out_start: Vec::new(),
            fill: Vec::new(),
            out_arcs: Vec::new(),
            done: Vec::new(),
            heap: BinaryHeap::new(),
            key: Vec::new(),
            parent_arc: Vec::new(),
            pop_order: Vec::new(),
        }
    }
}

fn reset<T: Clone>(v: &mut Vec<T>, len: usize, value: T) {
    v.clear();
    v.resize(len, value);
}

fn dijkstra_into<'c, C: CostStructure>(
    cs: &'c C,
    vertex_count: usize,
    arcs: &[(usize, usize, C::Value)],
    sources: &[(usize, C::Value)],
    tie: &[usize],
    check: bool,
    w: &mut DijkstraWork<'c, C>,
) {
    reset(&mut w.out_start, vertex_count + 1, 0);
    for &(u, _, _) in arcs {
        w.out_start[u + 1] += 1;
    }
    for v in 0..vertex_count {
        w.out_start[v + 1] += w.out_start[v];
    }
    w.fill.clear();
    w.fill.extend_from_slice(&w.out_start);
    reset(&mut w.out_arcs, arcs.len(), 0);
    for (i, &(u, _, _)) in arcs.iter().enumerate() {
        w.out_arcs[w.fill[u]] = i;
        w.fill[u] += 1;
    }

    reset(&mut w.key, vertex_count, None);
    reset(&mut w.parent_arc, vertex_count, None);
    reset(&mut w.done, vertex_count, false);
    w.pop_order.clear();
    w.heap.clear();
    for &(v, k) in sources {
        if w.key[v].is_none_or(|old| cs.less(&k, &old)) {
            w.key[v] = Some(k);
            w.heap.push(HeapItem { key: k, vertex: v, tie: tie[v], cs });
        }
    }
    let mut last: Option<C::Value> = None;
    while let Some(HeapItem { key: k, vertex: u, .. }) = w.heap.pop() {
        if w.done[u] {
            continue;
        }
        w.done[u] = true;
        w.pop_order.push(u);
        if check {
            if let Some(prev) = last {
                assert!(cs.less_eq(&prev, &k), "dijkstra popped a smaller key after a larger one");
            }
            last = Some(k);
        }
        for &ai in &w.out_arcs[w.out_start[u]..w.out_start[u + 1]] {
            let (_, v, c) = arcs[ai];
            if w.done[v] {
                continue;
            }
            let cand = cs.combine(k, c);
            if w.key[v].is_none_or(|old| cs.less(&cand, &old)) {
                w.key[v] = Some(cand);
                w.parent_arc[v] = Some(ai);
                w.heap.push(HeapItem { key: cand, vertex: v, tie: tie[v], cs });
            }
        }
    }
    if check {
        check_forest(cs, vertex_count, arcs, sources, &w.key, &w.parent_arc);
    }
}

/// Folding the tree path from its root reproduces every key.
fn check_forest<C: CostStructure>(
    cs: &C,
    vertex_count: usize,
    arcs: &[(usize, usize, C::Value)],
    sources: &[(usize, C::Value)],
    key: &[Option<C::Value>],
    parent_arc: &[Option<usize>],
) {
    let mut initial: Vec<Option<C::Value>> = vec![None; vertex_count];
    for &(v, k) in sources {
        if initial[v].is_none_or(|old| cs.less(&k, &old)) {
            initial[v] = Some(k);
        }
    }
    for v in 0..vertex_count {
        let Some(kv) = key[v] else { continue };
        let mut path = Vec::new();
        let mut x = v;
        while let Some(ai) = parent_arc[x] {
            path.push(ai);
            x = arcs[ai].0;
            assert!(path.len() <= vertex_count, "forest has a cycle");
        }
        let mut acc = initial[x].expect("forest root is a source");
        for &ai in path.iter().rev() {
            acc = cs.combine(acc, arcs[ai].2);
        }
        assert!(acc == kv, "forest path cost differs from the key of vertex {v}");
    }
}

/// Dijkstra over a cost structure with absorption.
///
/// `arcs` are `(from, to, cost)`; `sources` give initial keys. Equal keys
/// pop in order of `tie[v]`. Settled vertices are never updated again.
pub fn algebraic_dijkstra<C: CostStructure>(
    cs: &C,
    vertex_count: usize,
    arcs: &[(usize, usize, C::Value)],
    sources: &[(usize, C::Value)],
    tie: &[usize],
    check: bool,
) -> MinCostForest<C::Value> {
    let mut w = DijkstraWork::new();
    dijkstra_into(cs, vertex_count, arcs, sources, tie, check, &mut w);
    MinCostForest {
        key: w.key,
        parent_arc: w.parent_arc,
        pop_order: w.pop_order,
    }
}

/// Per-block buffers; the per-node arrays are restored after each block.
struct BlockScratch<'c, C: CostStructure> {
    local: Vec<usize>,
    pos: Vec<usize>,
    block: Vec<EdgeId>,
    verts: Vec<NodeId>,
    tails: Vec<NodeId>,
    b_tail: Vec<Option<C::Value>>,
    b_prime: Vec<Option<C::Value>>,
    /// Block index of the edge achieving `B'`.
    p_prime: Vec<usize>,
    in_s: Vec<bool>,
    s_order: Vec<usize>,
    arcs: Vec<(usize, usize, C::Value)>,
    sources: Vec<(usize, C::Value)>,
    children_start: Vec<usize>,
    fill: Vec<usize>,
    children: Vec<usize>,
    tree_arcs: Vec<usize>,
    used: Vec<bool>,
    queue: VecDeque<usize>,
    dijkstra: DijkstraWork<'c, C>,
}

impl<C: CostStructure> BlockScratch<'_, C> {
    fn new(n: usize) -> Self {
        BlockScratch {
            local: vec![NONE; n],
            pos: vec![NONE; n],
            block: Vec::new(),
            verts: Vec::new(),
            tails: Vec::new(),
            b_tail: Vec::new(),
            b_prime: Vec::new(),
            p_prime: Vec::new(),
            in_s: Vec::new(),
            s_order: Vec::new(),
            arcs: Vec::new(),
            sources: Vec::new(),
            children_start: Vec::new(),
            fill: Vec::new(),
            children: Vec::new(),
            tree_arcs: Vec::new(),
            used: Vec::new(),
            queue: VecDeque::new(),
            dijkstra: DijkstraWork::new(),
        }
    }
}

/// Reorder one zero block in place and permute the departure buckets to match.
fn reorder_zero_block<'c, C: CostStructure>(
    sc: &mut Scanner<'_, C>,
    w: &mut BlockScratch<'c, C>,
    cs: &'c C,
    block_out: &mut [EdgeId],
    time: Time,
    check: bool,
) -> Result<(), SolveError> {
    let g = sc.g;
    let s = sc.s;
    let edges = g.edges();
    w.block.clear();
    w.block.extend_from_slice(block_out);
    let block = &w.block;

    // local vertices, tails first seen first
    w.verts.clear();
    w.tails.clear();
    for &e in block {
        for (k, x) in [edges[e].tail, edges[e].head].into_iter().enumerate() {
            if w.local[x] == NONE {
                w.local[x] = w.verts.len();
                w.verts.push(x);
            }
            if k == 0 && w.pos[x] == NONE {
                w.pos[x] = sc.slot[e];
                w.tails.push(x);
            } else if k == 0 {
                w.pos[x] = w.pos[x].min(sc.slot[e]);
            }
        }
    }
    let nv = w.verts.len();

    // start of the run departing at `time`, and the cost extendable into it
    reset(&mut w.b_tail, nv, None);
    for &u in &w.tails {
        let base = sc.starts[u];
        let mut p = w.pos[u];
        while p > base && sc.fin[p - 1].time == time {
            p -= 1;
        }
        w.pos[u] = p;
        let b = if p < sc.nodes[u].lv {
            sc.fin[p].cost
        } else {
            sc.process_costs(u, p);
            sc.interval_cost_at(u, p)
        };
        w.b_tail[w.local[u]] = b;
    }

    reset(&mut w.b_prime, nv, None);
    reset(&mut w.p_prime, nv, NONE);
    reset(&mut w.in_s, nv, false);
    w.s_order.clear();
    w.arcs.clear();
    for (bi, &e) in block.iter().enumerate() {
        let edge = &edges[e];
        let (lu, lv) = (w.local[edge.tail], w.local[edge.head]);
        let gamma = cs.gamma(e, edge);
        if cs.is_nonnegative(&gamma) == Some(false) {
            for &x in &w.verts {
                w.local[x] = NONE;
                w.pos[x] = NONE;
            }
            return Err(SolveError::AbsorptionViolated { edge: e });
        }
        w.arcs.push((lu, lv, gamma));
        let bt = w.b_tail[lu];
        if edge.tail != s && bt.is_none() {
            continue;
        }
        if !w.in_s[lv] {
            w.in_s[lv] = true;
            w.s_order.push(lv);
        }
        let c = match bt {
            None => gamma,
            Some(b) => {
                let via = cs.combine(b, gamma);
                if edge.tail == s && cs.less(&gamma, &via) {
                    gamma
                } else {
                    via
                }
            }
        };
        if w.b_prime[lv].is_none_or(|old| cs.less(&c, &old)) {
            w.b_prime[lv] = Some(c);
            w.p_prime[lv] = bi;
        }
    }

    w.sources.clear();
    w.sources.extend(w.s_order.iter().map(|&v| (v, w.b_prime[v].unwrap())));
    dijkstra_into(cs, nv, &w.arcs, &w.sources, &w.verts, check, &mut w.dijkstra);
    let parent_arc = &w.dijkstra.parent_arc;

    reset(&mut w.children_start, nv + 1, 0);
    for v in 0..nv {
        if let Some(ai) = parent_arc[v] {
            w.children_start[w.arcs[ai].0 + 1] += 1;
        }
    }
    for v in 0..nv {
        w.children_start[v + 1] += w.children_start[v];
    }
    w.fill.clear();
    w.fill.extend_from_slice(&w.children_start);
    reset(&mut w.children, w.children_start[nv], 0);
    // arc index order keeps the output deterministic
    w.tree_arcs.clear();
    w.tree_arcs.extend(parent_arc.iter().flatten().copied());
    w.tree_arcs.sort_unstable();
    for &ai in &w.tree_arcs {
        let u = w.arcs[ai].0;
        w.children[w.fill[u]] = ai;
        w.fill[u] += 1;
    }

    reset(&mut w.used, block.len(), false);
    let mut k = 0;
    for &root in &w.s_order {
        if parent_arc[root].is_some() {
            continue;
        }
        let bi = w.p_prime[root];
        let e = block[bi];
        block_out[k] = e;
        k += 1;
        w.used[bi] = true;
        let u = edges[e].tail;
        let p = w.pos[u];
        let i = sc.slot[e];
        sc.swap_slots(i, p);
        w.pos[u] = p + 1;
        w.queue.push_back(root);
        while let Some(x) = w.queue.pop_front() {
            for &ai in &w.children[w.children_start[x]..w.children_start[x + 1]] {
                block_out[k] = block[ai];
                k += 1;
                w.used[ai] = true;
                w.queue.push_back(w.arcs[ai].1);
            }
        }
    }
    for (i, &e) in block.iter().enumerate() {
        if !w.used[i] {
            block_out[k] = e;
            k += 1;
        }
    }
    debug_assert_eq!(k, block.len());

    for &x in &w.verts {
        w.local[x] = NONE;
        w.pos[x] = NONE;
    }
    Ok(())
}

/// Minimum-cost walks from `s` over all walks, zero-cycles included.
///
/// Requires absorption on the zero block edges; a negative one fails with
/// [`SolveError::AbsorptionViolated`].
pub fn min_cost_walks_zero<C: CostStructure>(
    g: &TemporalGraph,
    rep: &DoublySortedRep,
    cs: &C,
    s: NodeId,
) -> Result<MinCostResult<C::Value>, SolveError> {
    min_cost_walks_zero_with(g, rep, cs, s, SolveOptions::default())
}

pub fn min_cost_walks_zero_with<C: CostStructure>(
    g: &TemporalGraph,
    rep: &DoublySortedRep,
    cs: &C,
    s: NodeId,
    opts: SolveOptions,
) -> Result<MinCostResult<C::Value>, SolveError> {
    run(g, rep, cs, s, opts, false).map(|r| r.0)
}

/// [`min_cost_walks_zero`] plus the representation it induces: the plain
/// scan on that representation yields the same result.
pub fn min_cost_walks_zero_induced<C: CostStructure>(
    g: &TemporalGraph,
    rep: &DoublySortedRep,
    cs: &C,
    s: NodeId,
    opts: SolveOptions,
) -> Result<(MinCostResult<C::Value>, DoublySortedRep), SolveError> {
    let (res, induced) = run(g, rep, cs, s, opts, true)?;
    Ok((res, induced.expect("induced representation was requested")))
}

fn run<C: CostStructure>(
    g: &TemporalGraph,
    rep: &DoublySortedRep,
    cs: &C,
    s: NodeId,
    opts: SolveOptions,
    induce: bool,
) -> Result<(MinCostResult<C::Value>, Option<DoublySortedRep>), SolveError> {
    check_source(g, rep, s)?;
    let (mut order, blocks) = partition_keyed(g, &sorted_keys(g, rep.e_arr()));
    let mut sc = Scanner::new(g, rep, cs, s, opts);
    let mut scratch = BlockScratch::new(g.node_count());
    for b in &blocks {
        sc.scan_all(&order[b.positive.start..b.zero_tail.end]);
        if !b.zero.is_empty() {
            let zero = &mut order[b.zero.clone()];
            reorder_zero_block(&mut sc, &mut scratch, cs, zero, b.time, opts.check_invariants)?;
            for &e in zero.iter() {
                sc.scan_edge(e);
            }
        }
        sc.scan_all(&order[b.zero_head.clone()]);
    }
    let dep = induce.then(|| sc.dep_edges.to_vec());
    let result = sc.finish();
    let induced = match dep {
        Some(dep) => Some(DoublySortedRep::from_trusted_orders(g, order, dep, false)?),
        None => None,
    };
    Ok((result, induced))
}
