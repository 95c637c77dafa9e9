#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempwalk::generate::{random_instance, RandomParams};
use tempwalk::{LinComb, LinCombParams, TemporalGraph, Time};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to 8 nodes and 40 edges, travel in `1..=5`, mixed waiting bounds.
///
/// The horizon is drawn per instance so that some instances are dense in
/// time and chain long walks.
pub fn small_positive(seed: u64) -> TemporalGraph {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=8);
    let m = rng.gen_range(0..=40);
    let mut p = RandomParams::small(n, m);
    p.horizon = rng.gen_range(m as Time / 4..=3 * m as Time / 2 + 4);
    random_instance(&p, &mut rng)
}

/// Zero-travel edges at few distinct times, zero-cycles allowed.
pub fn small_zero(seed: u64, cyclic: bool) -> TemporalGraph {
    let mut rng = rng(seed);
    let n = rng.gen_range(2..=6);
    let m = rng.gen_range(1..=24);
    let mut p = RandomParams::zero_heavy(n, m, cyclic);
    p.horizon = rng.gen_range(1..=(m as Time / 3).max(1));
    random_instance(&p, &mut rng)
}

/// Random weights in `-3..=3` with edge costs in `0..=4`.
pub fn random_lincomb(g: &TemporalGraph, seed: u64) -> LinComb {
    let mut rng = rng(seed ^ 0x1c);
    let delta = std::array::from_fn(|_| rng.gen_range(-3..=3));
    let costs = (0..g.edge_count()).map(|_| rng.gen_range(0..=4)).collect();
    LinComb::for_graph(LinCombParams::new(delta).with_edge_costs(costs), g).unwrap()
}

/// Like [`random_lincomb`] but with every edge weight non-negative, so
/// zero-travel edges satisfy absorption.
pub fn absorbing_lincomb(g: &TemporalGraph, seed: u64) -> LinComb {
    let mut rng = rng(seed ^ 0xab);
    let mut delta: [i64; 7] = std::array::from_fn(|_| rng.gen_range(-3..=3));
    // zero travel leaves d5 c(e) + d6
    delta[4] = rng.gen_range(0..=3);
    delta[5] = rng.gen_range(0..=3);
    let costs = (0..g.edge_count()).map(|_| rng.gen_range(0..=4)).collect();
    LinComb::for_graph(LinCombParams::new(delta).with_edge_costs(costs), g).unwrap()
}
