//! Algebraic cost structures `(C, gamma, combine, less_eq)` and property harnesses.

use std::fmt::Debug;

use rand::Rng;

use crate::error::CostError;
use crate::graph::{EdgeId, TemporalEdge, TemporalGraph, Time, Walk};

/// Edge costs, a left-fold combination and a total order.
///
/// Solvers rely on right-isotonicity: `a <= b` implies
/// `combine(a, c) <= combine(b, c)`. The zero-cycle solver additionally
/// needs [`is_nonnegative`](Self::is_nonnegative) to hold on zero-travel
/// edges between zero-alpha nodes.
pub trait CostStructure: Sync {
    type Value: Copy + Debug + PartialEq + Send + Sync;

    fn gamma(&self, id: EdgeId, e: &TemporalEdge) -> Self::Value;

    fn combine(&self, a: Self::Value, b: Self::Value) -> Self::Value;

    fn less_eq(&self, a: &Self::Value, b: &Self::Value) -> bool;

    /// `Some(true)` when `c <= combine(c, d)` for every `c`; `None` if unknown.
    fn is_nonnegative(&self, _d: &Self::Value) -> Option<bool> {
        None
    }

    #[inline]
    fn less(&self, a: &Self::Value, b: &Self::Value) -> bool {
        self.less_eq(a, b) && !self.less_eq(b, a)
    }

    fn name(&self) -> &'static str;
}

/// Cost of a walk computed by folding edge costs left to right.
pub fn fold_walk<C: CostStructure>(cs: &C, g: &TemporalGraph, walk: &Walk) -> Option<C::Value> {
    let mut it = walk.edges().iter();
    let &first = it.next()?;
    let mut c = cs.gamma(first, g.edge(first));
    for &e in it {
        c = cs.combine(c, cs.gamma(e, g.edge(e)));
    }
    Some(c)
}

/// Number of edges.
#[derive(Debug, Clone, Copy, Default)]
pub struct FewestEdges;

impl CostStructure for FewestEdges {
    type Value = u64;

    #[inline]
    fn gamma(&self, _id: EdgeId, _e: &TemporalEdge) -> u64 {
        1
    }

    #[inline]
    fn combine(&self, a: u64, b: u64) -> u64 {
        a + b
    }

    #[inline]
    fn less_eq(&self, a: &u64, b: &u64) -> bool {
        a <= b
    }

    fn is_nonnegative(&self, _d: &u64) -> Option<bool> {
        Some(true)
    }

    fn name(&self) -> &'static str {
        "fewest"
    }
}

/// Departure time of the first edge and edge count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SfCost {
    pub dep: Time,
    pub edges: u64,
}

/// Later departure first, then fewer edges.
#[derive(Debug, Clone, Copy, Default)]
pub struct ShortestFastest;

impl CostStructure for ShortestFastest {
    type Value = SfCost;

    #[inline]
    fn gamma(&self, _id: EdgeId, e: &TemporalEdge) -> SfCost {
        SfCost { dep: e.dep, edges: 1 }
    }

    #[inline]
    fn combine(&self, a: SfCost, b: SfCost) -> SfCost {
        SfCost {
            dep: a.dep,
            edges: a.edges + b.edges,
        }
    }

    #[inline]
    fn less_eq(&self, a: &SfCost, b: &SfCost) -> bool {
        a.dep > b.dep || (a.dep == b.dep && a.edges <= b.edges)
    }

    fn is_nonnegative(&self, _d: &SfCost) -> Option<bool> {
        Some(true)
    }

    fn name(&self) -> &'static str {
        "shortest-fastest"
    }
}

/// Largest accepted magnitude for linear-combination coefficients and edge costs.
pub const MAX_COEFFICIENT: i64 = 1 << 20;

/// Weights `d1..d7` for arrival, negated departure, duration, travel,
/// edge cost, edge count and waiting, plus optional per-edge costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinCombParams {
    pub delta: [i64; 7],
    pub edge_costs: Option<Vec<i64>>,
}

impl LinCombParams {
    pub fn new(delta: [i64; 7]) -> Self {
        LinCombParams {
            delta,
            edge_costs: None,
        }
    }

    pub fn min_waiting() -> Self {
        Self::new([0, 0, 0, 0, 0, 0, 1])
    }

    pub fn latest_departure() -> Self {
        Self::new([0, 1, 0, 0, 0, 0, 0])
    }

    pub fn with_edge_costs(mut self, costs: Vec<i64>) -> Self {
        self.edge_costs = Some(costs);
        self
    }

    /// `(d1 + d3 + d7)`: weight of the arrival time in `lin(Q)`.
    pub fn arrival_weight(&self) -> i128 {
        let d = &self.delta;
        d[0] as i128 + d[2] as i128 + d[6] as i128
    }

    /// `(d2 + d3 + d7)`: weight of the negated departure time.
    pub fn departure_weight(&self) -> i128 {
        let d = &self.delta;
        d[1] as i128 + d[2] as i128 + d[6] as i128
    }
}

/// `(dep(Q), sum of delta(e))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinCost {
    pub tau: Time,
    pub delta: i128,
}

/// Linear combination of the seven classical criteria.
///
/// Values are ordered by `-(d2+d3+d7) tau + Delta`; ties go to the later
/// `tau`, which keeps the order antisymmetric without affecting
/// isotonicity or the finalized optimum.
#[derive(Debug, Clone)]
pub struct LinComb {
    params: LinCombParams,
    dep_weight: i128,
}

impl LinComb {
    pub fn new(params: LinCombParams) -> Result<Self, CostError> {
        for &value in &params.delta {
            if value.abs() > MAX_COEFFICIENT {
                return Err(CostError::CoefficientOutOfRange { value });
            }
        }
        if let Some(costs) = &params.edge_costs {
            if let Some(edge) = costs.iter().position(|c| c.abs() > MAX_COEFFICIENT) {
                return Err(CostError::EdgeCostOutOfRange { edge });
            }
        }
        let dep_weight = params.departure_weight();
        Ok(LinComb { params, dep_weight })
    }

    /// Edge-cost array must cover every edge of `g`.
    pub fn for_graph(params: LinCombParams, g: &TemporalGraph) -> Result<Self, CostError> {
        if let Some(costs) = &params.edge_costs {
            if costs.len() != g.edge_count() {
                return Err(CostError::EdgeCostCount {
                    expected: g.edge_count(),
                    got: costs.len(),
                });
            }
        }
        Self::new(params)
    }

    pub fn min_waiting() -> Self {
        Self::new(LinCombParams::min_waiting()).unwrap()
    }

    pub fn latest_departure() -> Self {
        Self::new(LinCombParams::latest_departure()).unwrap()
    }

    pub fn params(&self) -> &LinCombParams {
        &self.params
    }

    /// `delta(e) = (d4 - d7) travel + d5 c(e) + d6`.
    #[inline]
    pub fn edge_delta(&self, id: EdgeId, e: &TemporalEdge) -> i128 {
        let d = &self.params.delta;
        let c = self.params.edge_costs.as_ref().map_or(0, |c| c[id]);
        (d[3] as i128 - d[6] as i128) * e.travel as i128 + d[4] as i128 * c as i128 + d[5] as i128
    }

    #[inline]
    fn key(&self, v: &LinCost) -> i128 {
        v.delta - self.dep_weight * v.tau as i128
    }

    /// `lin(Q)` of a walk ending at `arr` with folded cost `v`.
    #[inline]
    pub fn lin_value(&self, arr: Time, v: &LinCost) -> i128 {
        self.params.arrival_weight() * arr as i128 + self.key(v)
    }
}

impl CostStructure for LinComb {
    type Value = LinCost;

    #[inline]
    fn gamma(&self, id: EdgeId, e: &TemporalEdge) -> LinCost {
        LinCost {
            tau: e.dep,
            delta: self.edge_delta(id, e),
        }
    }

    #[inline]
    fn combine(&self, a: LinCost, b: LinCost) -> LinCost {
        LinCost {
            tau: a.tau,
            delta: a.delta + b.delta,
        }
    }

    #[inline]
    fn less_eq(&self, a: &LinCost, b: &LinCost) -> bool {
        let (ka, kb) = (self.key(a), self.key(b));
        ka < kb || (ka == kb && a.tau >= b.tau)
    }

    fn is_nonnegative(&self, d: &LinCost) -> Option<bool> {
        Some(d.delta >= 0)
    }

    fn name(&self) -> &'static str {
        "lincomb"
    }
}

/// Minimum `lin(Q)` over an arrival-ordered list of `(edge, cost)` pairs.
pub fn lincomb_finalize(cs: &LinComb, g: &TemporalGraph, list: &[(EdgeId, LinCost)]) -> Option<(i128, EdgeId)> {
    let mut best: Option<(i128, EdgeId)> = None;
    for &(e, ref c) in list {
        let value = cs.lin_value(g.edge(e).arr(), c);
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, e));
        }
    }
    best
}

/// Direct evaluation of the seven-term definition of `lin(Q)`.
pub fn lin_direct(params: &LinCombParams, g: &TemporalGraph, walk: &Walk) -> Option<i128> {
    let m = g.walk_metrics(walk).ok()?;
    let d = params.delta.map(|x| x as i128);
    let cost: i128 = walk
        .edges()
        .iter()
        .map(|&e| params.edge_costs.as_ref().map_or(0, |c| c[e]) as i128)
        .sum();
    Some(
        d[0] * m.arrival as i128
            + d[1] * -(m.departure as i128)
            + d[2] * m.duration as i128
            + d[3] * m.total_travel as i128
            + d[4] * cost
            + d[5] * m.edge_count as i128
            + d[6] * m.total_waiting as i128,
    )
}

/// First sampled triple with `c1 <= c2` but `c1 + c > c2 + c`, if any.
pub fn check_isotonicity<C: CostStructure>(
    cs: &C,
    samples: &[(C::Value, C::Value, C::Value)],
) -> Result<(), (C::Value, C::Value, C::Value)> {
    for &(c1, c2, c) in samples {
        if cs.less_eq(&c1, &c2) && !cs.less_eq(&cs.combine(c1, c), &cs.combine(c2, c)) {
            return Err((c1, c2, c));
        }
    }
    Ok(())
}

/// Offending edge with the sample that exposes it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionViolation<V> {
    pub edge: EdgeId,
    pub sample: Option<V>,
}

/// Every zero-travel edge between zero-alpha nodes must have a
/// non-negative cost. Structures without a closed-form test are checked
/// against the samples.
pub fn check_absorption<C: CostStructure>(
    cs: &C,
    g: &TemporalGraph,
    samples: &[C::Value],
) -> Result<(), AbsorptionViolation<C::Value>> {
    for (id, e) in g.edges().iter().enumerate() {
        if e.travel != 0 || g.alpha(e.tail) != 0 || g.alpha(e.head) != 0 {
            continue;
        }
        let d = cs.gamma(id, e);
        match cs.is_nonnegative(&d) {
            Some(true) => {}
            Some(false) => return Err(AbsorptionViolation { edge: id, sample: None }),
            None => {
                if let Some(&c) = samples.iter().find(|c| !cs.less_eq(c, &cs.combine(**c, d))) {
                    return Err(AbsorptionViolation {
                        edge: id,
                        sample: Some(c),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Values produced by folding up to `max_len` random edge costs of `g`.
pub fn sample_values<C: CostStructure, R: Rng>(
    cs: &C,
    g: &TemporalGraph,
    rng: &mut R,
    count: usize,
    max_len: usize,
) -> Vec<C::Value> {
    let m = g.edge_count();
    if m == 0 {
        return Vec::new();
    }
    (0..count)
        .map(|_| {
            let e = rng.gen_range(0..m);
            let mut c = cs.gamma(e, g.edge(e));
            for _ in 0..rng.gen_range(0..max_len.max(1)) {
                let f = rng.gen_range(0..m);
                c = cs.combine(c, cs.gamma(f, g.edge(f)));
            }
            c
        })
        .collect()
}

/// Random triples drawn from [`sample_values`].
pub fn sample_triples<C: CostStructure, R: Rng>(
    cs: &C,
    g: &TemporalGraph,
    rng: &mut R,
    count: usize,
) -> Vec<(C::Value, C::Value, C::Value)> {
    let pool = sample_values(cs, g, rng, 3 * count, 6);
    pool.chunks_exact(3).map(|c| (c[0], c[1], c[2])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::g1;
    use crate::graph::WaitingBounds;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Multiplication over signed integers: not isotone.
    struct Product;

    impl CostStructure for Product {
        type Value = i64;
        fn gamma(&self, _id: EdgeId, _e: &TemporalEdge) -> i64 {
            1
        }
        fn combine(&self, a: i64, b: i64) -> i64 {
            a * b
        }
        fn less_eq(&self, a: &i64, b: &i64) -> bool {
            a <= b
        }
        fn name(&self) -> &'static str {
            "product"
        }
    }

    #[test]
    fn isotonicity_samples() {
        let g = g1();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = sample_triples(&FewestEdges, &g, &mut rng, 500);
        assert!(check_isotonicity(&FewestEdges, &t).is_ok());
        let lc = LinComb::new(LinCombParams::new([3, -2, 1, 5, 0, -7, 2])).unwrap();
        let t = sample_triples(&lc, &g, &mut rng, 500);
        assert!(check_isotonicity(&lc, &t).is_ok());
        assert_eq!(check_isotonicity(&Product, &[(-1, 0, -2)]), Err((-1, 0, -2)));
    }

    fn zero_edge_graph() -> TemporalGraph {
        TemporalGraph::unrestricted(2, vec![TemporalEdge::new(0, 1, 3, 0), TemporalEdge::new(0, 1, 3, 2)]).unwrap()
    }

    #[test]
    fn absorption_cases() {
        let g = zero_edge_graph();
        let ok = LinComb::new(LinCombParams::new([0, 0, 0, 0, 1, 1, 0]).with_edge_costs(vec![0, 4])).unwrap();
        assert!(check_absorption(&ok, &g, &[]).is_ok());
        let bad = LinComb::new(LinCombParams::new([0, 0, 0, 0, 0, -1, 0])).unwrap();
        assert_eq!(check_absorption(&bad, &g, &[]).unwrap_err().edge, 0);
        assert!(check_absorption(&bad, &g1(), &[]).is_ok());
        // zero-travel edge leaving a node with positive alpha is exempt
        let g = g.with_waiting(vec![WaitingBounds::finite(1, 5), WaitingBounds::UNRESTRICTED]).unwrap();
        assert!(check_absorption(&bad, &g, &[]).is_ok());
    }

    #[test]
    fn absorption_falls_back_to_samples() {
        let g = zero_edge_graph();
        struct Neg;
        impl CostStructure for Neg {
            type Value = i64;
            fn gamma(&self, _id: EdgeId, _e: &TemporalEdge) -> i64 {
                -1
            }
            fn combine(&self, a: i64, b: i64) -> i64 {
                a + b
            }
            fn less_eq(&self, a: &i64, b: &i64) -> bool {
                a <= b
            }
            fn name(&self) -> &'static str {
                "neg"
            }
        }
        assert_eq!(check_absorption(&Neg, &g, &[5]).unwrap_err().sample, Some(5));
        assert!(check_absorption(&Neg, &g, &[]).is_ok());
    }

    #[test]
    fn finalize_on_g1() {
        let g = g1();
        let ea = LinComb::new(LinCombParams::new([1, 0, 0, 0, 0, 0, 0])).unwrap();
        let list: Vec<_> = [1usize, 2]
            .iter()
            .map(|&e| {
                let walk = if e == 1 { Walk::new(vec![0, 1]) } else { Walk::new(vec![2]) };
                (e, fold_walk(&ea, &g, &walk).unwrap())
            })
            .collect();
        assert_eq!(lincomb_finalize(&ea, &g, &list).unwrap().0, 4);
        let mw = LinComb::min_waiting();
        let list = vec![
            (1, fold_walk(&mw, &g, &Walk::new(vec![0, 1])).unwrap()),
            (2, fold_walk(&mw, &g, &Walk::new(vec![2])).unwrap()),
        ];
        assert_eq!(list[0].1, LinCost { tau: 1, delta: -2 });
        assert_eq!(list[1].1, LinCost { tau: 5, delta: -1 });
        assert_eq!(lincomb_finalize(&mw, &g, &list), Some((0, 2)));
        assert_eq!(lincomb_finalize(&mw, &g, &[]), None);
    }

    #[test]
    fn lin_identity_on_g1_walks() {
        let g = g1();
        let params = LinCombParams::new([2, -3, 5, 7, 11, -13, 17]).with_edge_costs(vec![1, -2, 3]);
        let lc = LinComb::for_graph(params.clone(), &g).unwrap();
        for walk in [vec![0], vec![1], vec![2], vec![0, 1]] {
            let walk = Walk::new(walk);
            let c = fold_walk(&lc, &g, &walk).unwrap();
            let arr = g.edge(walk.last().unwrap()).arr();
            assert_eq!(lc.lin_value(arr, &c), lin_direct(&params, &g, &walk).unwrap());
        }
    }

    #[test]
    fn shortest_fastest_order() {
        let sf = ShortestFastest;
        let a = SfCost { dep: 5, edges: 3 };
        let b = SfCost { dep: 4, edges: 1 };
        assert!(sf.less(&a, &b));
        assert!(sf.less(&SfCost { dep: 5, edges: 1 }, &a));
    }

    #[test]
    fn parameter_bounds() {
        assert!(LinComb::new(LinCombParams::new([MAX_COEFFICIENT + 1, 0, 0, 0, 0, 0, 0])).is_err());
        let g = g1();
        let p = LinCombParams::min_waiting().with_edge_costs(vec![0]);
        assert!(matches!(
            LinComb::for_graph(p, &g),
            Err(CostError::EdgeCostCount { expected: 3, got: 1 })
        ));
    }
}
