mod common;

use proptest::prelude::*;
use proptest::sample::select;
use tempwalk::cost::{fold_walk, lin_direct};
use tempwalk::io::{emit_instance, emit_rep_file, emit_space_time, parse_instance, parse_rep_file, parse_space_time};
use tempwalk::oracle::{for_each_walk, oracle_min_costs, oracle_profiles, oracle_walks};
use tempwalk::representation::from_space_time_with_stats;
use tempwalk::{
    build_half_extend_respecting, check_doubly_sorted, from_space_time, is_zero_acyclic, min_cost_walks,
    min_cost_walks_zero, min_cost_walks_zero_induced, reachable_edges, reconstruct_min_walk, reconstruct_reach_walk,
    solve_profile, solve_profile_bounded_source, to_space_time, CostStructure, DoublySortedRep, FewestEdges, LinComb,
    LinCombParams, MaxWait, ShortestFastest, SolveOptions, TemporalEdge, TemporalGraph, Time, WaitingBounds, Walk,
};

fn waiting() -> impl Strategy<Value = WaitingBounds> {
    (0..3 as Time, proptest::option::of(0..5 as Time)).prop_map(|(alpha, slack)| match slack {
        Some(x) => WaitingBounds::finite(alpha, alpha + x),
        None => WaitingBounds::new(alpha, MaxWait::Infinite),
    })
}

/// Up to `max_n` nodes and `max_m` edges. With `zero`, travel may be 0 and
/// cycles of zero-travel edges can appear.
fn graph(max_n: usize, max_m: usize, zero: bool) -> impl Strategy<Value = TemporalGraph> {
    let travel = if zero { 0..3 as Time } else { 1..5 as Time };
    let horizon = if zero { 5 } else { 14 };
    (1..=max_n)
        .prop_flat_map(move |n| {
            let edge = (0..n, 0..n, 0..horizon as Time, travel.clone());
            (proptest::collection::vec(waiting(), n), proptest::collection::vec(edge, 0..=max_m))
        })
        .prop_map(|(w, es)| {
            let edges = es.into_iter().map(|(u, v, d, l)| TemporalEdge::new(u, v, d, l)).collect();
            TemporalGraph::new(w, edges).unwrap()
        })
}

fn with_source(g: impl Strategy<Value = TemporalGraph>) -> impl Strategy<Value = (TemporalGraph, usize)> {
    g.prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), 0..n)
    })
}

fn zero_acyclic(max_n: usize, max_m: usize) -> impl Strategy<Value = TemporalGraph> {
    graph(max_n, max_m, true).prop_filter("zero-cycle", is_zero_acyclic)
}

fn lincomb_for(g: &TemporalGraph, seed: u64) -> LinComb {
    common::random_lincomb(g, seed)
}

fn assert_matches_oracle<C: CostStructure>(g: &TemporalGraph, rep: &DoublySortedRep, cs: &C, s: usize) {
    let want = oracle_min_costs(g, cs, s, g.edge_count()).unwrap();
    let got = min_cost_walks(g, rep, cs, s).unwrap();
    assert_eq!(got.costs(), want.costs.as_slice(), "{}", cs.name());
}

/// Every walk the oracle enumerates from `s` with its edge list.
fn all_walks(g: &TemporalGraph, s: usize) -> Vec<Walk> {
    oracle_walks(g, s, g.edge_count()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn extends_implies_half_extends(g in graph(5, 16, true)) {
        for e in 0..g.edge_count() {
            for f in 0..g.edge_count() {
                prop_assert!(!g.extends(e, f) || g.half_extends(e, f));
            }
        }
    }

    #[test]
    fn walk_metrics_decompose((g, s) in with_source(graph(5, 12, false))) {
        for w in all_walks(&g, s) {
            let m = g.walk_metrics(&w).unwrap();
            prop_assert_eq!(m.duration, m.total_travel + m.total_waiting);
            prop_assert_eq!(m.edge_count, w.len());
            let interior: Time = w.edges()[1..].iter().map(|&e| g.alpha(g.edge(e).tail)).sum();
            prop_assert!(m.total_waiting >= interior);
        }
    }

    #[test]
    fn round_trip_keeps_both_orders_sorted(g in zero_acyclic(5, 14)) {
        let rep = build_half_extend_respecting(&g).unwrap();
        prop_assert!(check_doubly_sorted(&g, &rep).all());
        let st = to_space_time(&g, &rep);
        prop_assert_eq!(st.connections().len(), g.edge_count());
        prop_assert!(st.copy_count() <= 2 * g.edge_count());
        let (back, stats) = from_space_time_with_stats(&g, &st).unwrap();
        prop_assert!(check_doubly_sorted(&g, &back).all());
        // forward and reversed peel each remove every arc once
        prop_assert_eq!(stats.arc_removals, 2 * (st.connections().len() + st.waiting_arc_count()));
        prop_assert!(stats.pops <= 4 * st.copy_count());
    }

    #[test]
    fn walks_follow_arrival_order((g, s) in with_source(zero_acyclic(4, 10))) {
        let rep = build_half_extend_respecting(&g).unwrap();
        for w in all_walks(&g, s) {
            let pos: Vec<usize> = w.edges().iter().map(|&e| rep.arr_pos(e)).collect();
            prop_assert!(pos.windows(2).all(|p| p[0] < p[1]), "walk {:?}", w);
        }
    }

    #[test]
    fn folds_have_closed_forms((g, s) in with_source(graph(5, 12, false)), seed in any::<u64>()) {
        let lc = lincomb_for(&g, seed);
        for w in all_walks(&g, s) {
            let first = g.edge(w.edges()[0]);
            prop_assert_eq!(fold_walk(&FewestEdges, &g, &w), Some(w.len() as u64));
            let sf = fold_walk(&ShortestFastest, &g, &w).unwrap();
            prop_assert_eq!((sf.dep, sf.edges), (first.dep, w.len() as u64));
            let v = fold_walk(&lc, &g, &w).unwrap();
            let arr = g.edge(w.last().unwrap()).arr();
            prop_assert_eq!(Some(lc.lin_value(arr, &v)), lin_direct(lc.params(), &g, &w));
        }
    }

    #[test]
    fn less_eq_is_a_total_order(g in graph(3, 8, false), seed in any::<u64>(), a in any::<u8>(), b in any::<u8>(), c in any::<u8>()) {
        let lc = lincomb_for(&g, seed);
        let mut rng = common::rng(seed);
        let vals = tempwalk::cost::sample_values(&lc, &g, &mut rng, 64, 4);
        prop_assume!(!vals.is_empty());
        let pick = |i: u8| vals[i as usize % vals.len()];
        let (x, y, z) = (pick(a), pick(b), pick(c));
        prop_assert!(lc.less_eq(&x, &y) || lc.less_eq(&y, &x));
        prop_assert!(lc.less_eq(&x, &x));
        if lc.less_eq(&x, &y) && lc.less_eq(&y, &z) {
            prop_assert!(lc.less_eq(&x, &z));
        }
    }

    #[test]
    fn scan_matches_oracle((g, s) in with_source(graph(5, 14, false)), seed in any::<u64>()) {
        let rep = build_half_extend_respecting(&g).unwrap();
        assert_matches_oracle(&g, &rep, &FewestEdges, s);
        assert_matches_oracle(&g, &rep, &ShortestFastest, s);
        assert_matches_oracle(&g, &rep, &LinComb::min_waiting(), s);
        assert_matches_oracle(&g, &rep, &lincomb_for(&g, seed), s);
    }

    #[test]
    fn scan_never_reports_worse_than_any_walk((g, s) in with_source(graph(5, 12, false)), seed in any::<u64>()) {
        let rep = build_half_extend_respecting(&g).unwrap();
        let lc = lincomb_for(&g, seed);
        let res = min_cost_walks(&g, &rep, &lc, s).unwrap();
        for w in all_walks(&g, s) {
            let best = res.cost(w.last().unwrap());
            prop_assert!(best.is_some());
            prop_assert!(lc.less_eq(&best.unwrap(), &fold_walk(&lc, &g, &w).unwrap()));
        }
    }

    #[test]
    fn witnesses_are_valid_and_attain_the_cost((g, s) in with_source(graph(6, 20, false)), seed in any::<u64>()) {
        let rep = build_half_extend_respecting(&g).unwrap();
        let lc = lincomb_for(&g, seed);
        let res = min_cost_walks(&g, &rep, &lc, s).unwrap();
        for e in 0..g.edge_count() {
            let Some(c) = res.cost(e) else { continue };
            let w = reconstruct_min_walk(&res, e).unwrap();
            prop_assert!(g.validate_walk(&w).unwrap());
            prop_assert_eq!(g.edge(w.edges()[0]).tail, s);
            prop_assert_eq!(w.last(), Some(e));
            prop_assert_eq!(fold_walk(&lc, &g, &w), Some(c));
        }
    }

    #[test]
    fn work_counters_are_linear((g, s) in with_source(graph(8, 40, false))) {
        let rep = build_half_extend_respecting(&g).unwrap();
        let m = g.edge_count();
        let res = min_cost_walks(&g, &rep, &ShortestFastest, s).unwrap();
        let w = res.counters;
        prop_assert!(w.interval_creations <= m);
        prop_assert!(w.left_bound_updates <= m);
        prop_assert!(w.cursor_advances <= 2 * m);
        prop_assert!(w.finalizations <= m);
        let r = reachable_edges(&g, &rep, s).unwrap().counters;
        prop_assert!(r.markings + r.cursor_advances <= 2 * m);
    }

    #[test]
    fn reachability_agrees_with_the_scan((g, s) in with_source(graph(6, 24, false))) {
        let rep = build_half_extend_respecting(&g).unwrap();
        let reach = reachable_edges(&g, &rep, s).unwrap();
        let res = min_cost_walks(&g, &rep, &FewestEdges, s).unwrap();
        for e in 0..g.edge_count() {
            prop_assert_eq!(reach.is_reachable(e), res.cost(e).is_some());
            if reach.is_reachable(e) {
                let w = reconstruct_reach_walk(&reach, e).unwrap();
                prop_assert!(g.validate_walk(&w).unwrap());
                prop_assert_eq!(g.edge(w.edges()[0]).tail, s);
            }
        }
        for v in 0..g.node_count() {
            let arrivals: Vec<Time> = reach.reachable_at(v).iter().map(|&e| g.edge(e).arr()).collect();
            prop_assert!(arrivals.windows(2).all(|a| a[0] <= a[1]));
        }
    }

    #[test]
    fn zero_solver_matches_scan_on_zero_acyclic((g, s) in with_source(zero_acyclic(5, 14)), seed in any::<u64>()) {
        let sorted = DoublySortedRep::build_time_sorted(&g);
        let rep = build_half_extend_respecting(&g).unwrap();
        let lc = common::absorbing_lincomb(&g, seed);
        let a = min_cost_walks_zero(&g, &sorted, &lc, s).unwrap();
        let b = min_cost_walks(&g, &rep, &lc, s).unwrap();
        prop_assert_eq!(a.costs(), b.costs());
        let a = min_cost_walks_zero(&g, &sorted, &ShortestFastest, s).unwrap();
        let b = min_cost_walks(&g, &rep, &ShortestFastest, s).unwrap();
        prop_assert_eq!(a.costs(), b.costs());
    }

    #[test]
    fn zero_solver_matches_oracle((g, s) in with_source(graph(5, 12, true)), seed in any::<u64>()) {
        let rep = DoublySortedRep::build_time_sorted(&g);
        let lc = common::absorbing_lincomb(&g, seed);
        let got = min_cost_walks_zero(&g, &rep, &lc, s).unwrap();
        let want = oracle_min_costs(&g, &lc, s, g.edge_count()).unwrap();
        prop_assert_eq!(got.costs(), want.costs.as_slice());
        let got = min_cost_walks_zero(&g, &rep, &FewestEdges, s).unwrap();
        let want = oracle_min_costs(&g, &FewestEdges, s, g.edge_count()).unwrap();
        prop_assert_eq!(got.costs(), want.costs.as_slice());
    }

    #[test]
    fn induced_rep_reproduces_zero_solver((g, s) in with_source(graph(5, 16, true)), seed in any::<u64>()) {
        let rep = DoublySortedRep::build_time_sorted(&g);
        let lc = common::absorbing_lincomb(&g, seed);
        let opts = SolveOptions { check_invariants: true };
        let (res, induced) = min_cost_walks_zero_induced(&g, &rep, &lc, s, opts).unwrap();
        prop_assert!(induced.matches(&g));
        let plain = min_cost_walks(&g, &induced, &lc, s).unwrap();
        prop_assert_eq!(res.costs(), plain.costs());
    }

    #[test]
    fn profiles_match_oracle_and_increase((g, s) in with_source(graph(5, 14, false))) {
        let rep = build_half_extend_respecting(&g).unwrap();
        let got = solve_profile(&g, &rep, s).unwrap();
        prop_assert_eq!(&got, &oracle_profiles(&g, s, g.edge_count()).unwrap());
        for p in &got {
            prop_assert!(p.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
        }
    }

    #[test]
    fn bounded_source_profile_matches_brute_force((g, x) in with_source(graph(4, 10, false))) {
        let rev = g.reversed();
        let rep = build_half_extend_respecting(&rev).unwrap();
        let segs = solve_profile_bounded_source(&rev, &rep, x).unwrap();
        for v in 0..g.node_count() {
            // (first departure, arrival) of every walk from v into x
            let mut ends: Vec<(Time, Time)> = Vec::new();
            for_each_walk(&g, v, g.edge_count(), |e| g.edge(e).dep, |&d, _| d, |path, &d| {
                let last = g.edge(*path.last().unwrap());
                if last.head == x {
                    ends.push((d, last.arr()));
                }
            }).unwrap();
            let wb = g.waiting(v);
            for t in -25..20 {
                let want = ends.iter().filter(|&&(d, _)| wb.admits(t, d)).map(|&(_, a)| a).min();
                let have = segs[v]
                    .iter()
                    .find(|sg| sg.start.is_none_or(|st| st <= t) && t <= sg.end)
                    .map(|sg| sg.arrival);
                prop_assert_eq!(have, want, "v {} t {}: {:?}", v, t, segs[v]);
            }
        }
    }

    #[test]
    fn files_round_trip(g in graph(6, 20, true)) {
        let text = emit_instance(&g);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(emit_instance(&back), text);
        let rep = DoublySortedRep::build_time_sorted(&g);
        let text = emit_rep_file(&g, &rep);
        let (g2, rep2) = parse_rep_file(&text).unwrap();
        prop_assert_eq!(emit_rep_file(&g2, &rep2), text);
        if let Ok(rep) = build_half_extend_respecting(&g) {
            let st = to_space_time(&g, &rep);
            let text = emit_space_time(&g, &st);
            let (g3, st3) = parse_space_time(&text).unwrap();
            prop_assert_eq!(emit_space_time(&g3, &st3), text.clone());
            prop_assert!(from_space_time(&g3, &st3).is_ok());
        }
    }

    #[test]
    fn edge_costs_only_shift_lincomb(g in graph(4, 10, false), k in select(vec![0i64, 1, 3])) {
        // constant per-edge cost k with d5 = 1 adds k per edge, like d6 = k
        let m = g.edge_count();
        let a = LinComb::for_graph(LinCombParams::new([0, 0, 0, 0, 1, 0, 0]).with_edge_costs(vec![k; m]), &g).unwrap();
        let b = LinComb::new(LinCombParams::new([0, 0, 0, 0, 0, k, 0])).unwrap();
        let rep = build_half_extend_respecting(&g).unwrap();
        for s in 0..g.node_count() {
            let x = min_cost_walks(&g, &rep, &a, s).unwrap();
            let y = min_cost_walks(&g, &rep, &b, s).unwrap();
            prop_assert_eq!(x.costs(), y.costs());
        }
    }
}
