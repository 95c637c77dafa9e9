//! Exhaustive walk enumeration for small instances.
//!
//! Works on the graph alone, never on an edge ordering, so it can check the
//! solvers. Only edge-simple walks are enumerated: a repeated edge means a
//! zero-cycle was traversed, and under absorption removing it never makes
//! the walk more expensive.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cost::{check_absorption, sample_values, CostStructure};
use crate::error::SolveError;
use crate::graph::{EdgeId, NodeId, TemporalGraph, Time, Walk};
use crate::representation::is_zero_acyclic;

pub const MAX_ORACLE_EDGES: usize = 64;

#[derive(Debug, Clone)]
pub struct OracleResult<V> {
    /// Minimum over all walks from the source ending with each edge.
    pub costs: Vec<Option<V>>,
    /// A walk attaining each minimum.
    pub witnesses: Vec<Option<Walk>>,
    /// Reachable edges per head node, by id.
    pub reachable: Vec<Vec<EdgeId>>,
    pub walk_count: u64,
}

fn check_size(g: &TemporalGraph, s: NodeId) -> Result<(), SolveError> {
    if g.edge_count() > MAX_ORACLE_EDGES {
        return Err(SolveError::TooManyEdges { m: g.edge_count() });
    }
    if s >= g.node_count() {
        return Err(SolveError::SourceOutOfRange { node: s, n: g.node_count() });
    }
    Ok(())
}

/// Depth-first enumeration of every edge-simple walk from `s` with at most
/// `max_edges` edges. `step` carries a per-prefix state along.
pub fn for_each_walk<T: Clone>(
    g: &TemporalGraph,
    s: NodeId,
    max_edges: usize,
    init: impl Fn(EdgeId) -> T,
    step: impl Fn(&T, EdgeId) -> T,
    mut visit: impl FnMut(&[EdgeId], &T),
) -> Result<(), SolveError> {
    check_size(g, s)?;
    let m = g.edge_count();
    // successors by extension, computed once
    let succ: Vec<Vec<EdgeId>> = (0..m).map(|e| (0..m).filter(|&f| g.extends(e, f)).collect()).collect();
    let mut path: Vec<EdgeId> = Vec::new();
    let mut states: Vec<T> = Vec::new();
    // (edge, next successor index)
    let mut frames: Vec<(EdgeId, usize)> = Vec::new();
    for e in (0..m).filter(|&e| g.edge(e).tail == s) {
        if max_edges == 0 {
            break;
        }
        let mut used: u64 = 1 << e;
        path.push(e);
        states.push(init(e));
        frames.push((e, 0));
        visit(&path, states.last().unwrap());
        while let Some(&mut (top, ref mut next)) = frames.last_mut() {
            let cands = &succ[top];
            let mut pushed = false;
            while *next < cands.len() {
                let f = cands[*next];
                *next += 1;
                if used & (1 << f) != 0 || path.len() >= max_edges {
                    continue;
                }
                let st = step(states.last().unwrap(), f);
                used |= 1 << f;
                path.push(f);
                states.push(st);
                frames.push((f, 0));
                visit(&path, states.last().unwrap());
                pushed = true;
                break;
            }
            if !pushed {
                frames.pop();
                let f = path.pop().unwrap();
                states.pop();
                used &= !(1u64 << f);
            }
        }
    }
    Ok(())
}

/// All edge-simple walks from `s`.
pub fn oracle_walks(g: &TemporalGraph, s: NodeId, max_edges: usize) -> Result<Vec<Walk>, SolveError> {
    let mut out = Vec::new();
    for_each_walk(g, s, max_edges, |_| (), |_, _| (), |p, _| out.push(Walk::new(p.to_vec())))?;
    Ok(out)
}

/// Per-edge minimum cost over all walks from `s`.
pub fn oracle_min_costs<C: CostStructure>(
    g: &TemporalGraph,
    cs: &C,
    s: NodeId,
    max_edges: usize,
) -> Result<OracleResult<C::Value>, SolveError> {
    check_size(g, s)?;
    if !is_zero_acyclic(g) {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let samples = sample_values(cs, g, &mut rng, 256, 8);
        if let Err(v) = check_absorption(cs, g, &samples) {
            return Err(SolveError::AbsorptionViolated { edge: v.edge });
        }
    }
    let m = g.edge_count();
    let mut costs: Vec<Option<C::Value>> = vec![None; m];
    let mut witnesses: Vec<Option<Walk>> = vec![None; m];
    let mut walk_count = 0u64;
    for_each_walk(
        g,
        s,
        max_edges,
        |e| cs.gamma(e, g.edge(e)),
        |c, f| cs.combine(*c, cs.gamma(f, g.edge(f))),
        |path, c| {
            walk_count += 1;
            let e = *path.last().unwrap();
            if costs[e].is_none_or(|old| cs.less(c, &old)) {
                costs[e] = Some(*c);
                witnesses[e] = Some(Walk::new(path.to_vec()));
            }
        },
    )?;
    let mut reachable = vec![Vec::new(); g.node_count()];
    for e in (0..m).filter(|&e| costs[e].is_some()) {
        reachable[g.edge(e).head].push(e);
    }
    Ok(OracleResult {
        costs,
        witnesses,
        reachable,
        walk_count,
    })
}

/// Pareto-maximal `(departure, arrival)` pairs of the walks into each node,
/// sorted by arrival.
pub fn oracle_profiles(g: &TemporalGraph, s: NodeId, max_edges: usize) -> Result<Vec<Vec<(Time, Time)>>, SolveError> {
    let mut pairs: Vec<Vec<(Time, Time)>> = vec![Vec::new(); g.node_count()];
    for_each_walk(
        g,
        s,
        max_edges,
        |e| g.edge(e).dep,
        |&d, _| d,
        |path, &d| {
            let last = g.edge(*path.last().unwrap());
            pairs[last.head].push((d, last.arr()));
        },
    )?;
    Ok(pairs
        .into_iter()
        .map(|mut ps| {
            ps.sort_unstable();
            ps.dedup();
            let mut keep: Vec<(Time, Time)> = ps
                .iter()
                .copied()
                .filter(|&(d, a)| !ps.iter().any(|&(d2, a2)| (a2 < a && d2 >= d) || (a2 <= a && d2 > d)))
                .collect();
            keep.sort_unstable_by_key(|&(d, a)| (a, d));
            keep
        })
        .collect())
}

pub fn oracle_profile(g: &TemporalGraph, s: NodeId, v: NodeId) -> Result<Vec<(Time, Time)>, SolveError> {
    let mut all = oracle_profiles(g, s, g.edge_count())?;
    if v >= all.len() {
        return Err(SolveError::SourceOutOfRange { node: v, n: all.len() });
    }
    Ok(std::mem::take(&mut all[v]))
}
