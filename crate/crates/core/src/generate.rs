//! Seeded instance generators.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{MaxWait, NodeId, TemporalEdge, TemporalGraph, Time, WaitingBounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Lower-bound family with permuted departures of the source edges.
    LbDep,
    /// Lower-bound family with permuted departures of the target edges.
    LbArr,
    /// Positive travel times, mixed waiting bounds.
    Random,
    /// Many zero-travel edges, with zero-cycles.
    ZeroHeavy,
    /// Many zero-travel edges, zero-acyclic.
    ZeroAcyclic,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "lb-dep" => Family::LbDep,
            "lb-arr" => Family::LbArr,
            "random" => Family::Random,
            "zero-heavy" => Family::ZeroHeavy,
            "zero-acyclic" => Family::ZeroAcyclic,
            _ => return Err(format!("unknown family `{s}`")),
        })
    }
}

/// Instance `G_{pi, pi'}` of the lower-bound family.
///
/// Nodes: `s = 0`, `u = 1`, `v_j = 1 + j` for `j` in `1..=n`.
#[derive(Debug, Clone)]
pub struct LowerBoundInstance {
    pub graph: TemporalGraph,
    pub tau: Vec<Time>,
    pub t: Vec<Time>,
    /// 0-based permutations.
    pub pi: Vec<usize>,
    pub pi_prime: Vec<usize>,
}

impl LowerBoundInstance {
    /// `e_i = (s, u, -i, tau_{pi(i)} + i)` and
    /// `f_j = (u, v_j, t_{pi'(j)}, t_n + j - t_{pi'(j)})`.
    pub fn new(tau: Vec<Time>, t: Vec<Time>, pi: Vec<usize>, pi_prime: Vec<usize>) -> Self {
        let n = tau.len();
        assert!(t.len() == n && pi.len() == n && pi_prime.len() == n);
        let tn = t[n - 1];
        let mut edges = Vec::with_capacity(2 * n);
        for i in 1..=n {
            let i_t = i as Time;
            edges.push(TemporalEdge::new(0, 1, -i_t, tau[pi[i - 1]] + i_t));
        }
        for j in 1..=n {
            let tj = t[pi_prime[j - 1]];
            edges.push(TemporalEdge::new(1, 1 + j, tj, tn + j as Time - tj));
        }
        let graph = TemporalGraph::unrestricted(n + 2, edges).expect("lower-bound instance is well formed");
        LowerBoundInstance {
            graph,
            tau,
            t,
            pi,
            pi_prime,
        }
    }

    pub fn n(&self) -> usize {
        self.tau.len()
    }

    pub fn target(&self, j: usize) -> NodeId {
        1 + j
    }

    /// Minimum overall waiting time to `v_j`, for `j = 1..=n`.
    pub fn expected_min_waiting(&self) -> Vec<Time> {
        self.pi_prime.iter().map(|&k| self.t[k] - self.tau[k]).collect()
    }
}

/// Interleaved `0 < tau_1 < t_1 < ... < tau_n < t_n < 3n`.
pub fn interleaved_times<R: Rng>(n: usize, rng: &mut R) -> (Vec<Time>, Vec<Time>) {
    let pool: Vec<Time> = (1..3 * n as Time).collect();
    let mut pick: Vec<Time> = pool.choose_multiple(rng, 2 * n).copied().collect();
    pick.sort_unstable();
    let tau = pick.iter().step_by(2).copied().collect();
    let t = pick.iter().skip(1).step_by(2).copied().collect();
    (tau, t)
}

fn permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// `G_{pi, id}` for a random `pi`.
pub fn lb_dep<R: Rng>(n: usize, rng: &mut R) -> LowerBoundInstance {
    let (tau, t) = interleaved_times(n, rng);
    let pi = permutation(n, rng);
    LowerBoundInstance::new(tau, t, pi, (0..n).collect())
}

/// `G_{id, pi'}` for a random `pi'`.
pub fn lb_arr<R: Rng>(n: usize, rng: &mut R) -> LowerBoundInstance {
    let (tau, t) = interleaved_times(n, rng);
    let pi_prime = permutation(n, rng);
    LowerBoundInstance::new(tau, t, (0..n).collect(), pi_prime)
}

#[derive(Debug, Clone)]
pub struct RandomParams {
    pub nodes: usize,
    pub edges: usize,
    /// Departures are drawn from `0..=horizon`.
    pub horizon: Time,
    pub min_travel: Time,
    pub max_travel: Time,
    /// Fraction of edges forced to zero travel time.
    pub zero_fraction: f64,
    /// Draw mixed waiting bounds (`beta = alpha`, finite, infinite).
    pub mixed_waiting: bool,
    /// Orient zero-travel edges from lower to higher node id.
    pub zero_acyclic: bool,
}

impl RandomParams {
    /// Positive travel times in `1..=5` and mixed bounds.
    pub fn small(nodes: usize, edges: usize) -> Self {
        RandomParams {
            nodes,
            edges,
            horizon: 3 * edges as Time / 2 + 4,
            min_travel: 1,
            max_travel: 5,
            zero_fraction: 0.0,
            mixed_waiting: true,
            zero_acyclic: true,
        }
    }

    /// Unrestricted waiting, average out-degree 32.
    ///
    /// A time-respecting walk can only use edges departing after it arrives,
    /// so low degrees reach almost nothing from a single source; at degree 32
    /// about two thirds of the edges are reached.
    pub fn large(edges: usize) -> Self {
        RandomParams {
            nodes: (edges / 32).max(1),
            edges,
            horizon: edges as Time,
            min_travel: 1,
            max_travel: 5,
            zero_fraction: 0.0,
            mixed_waiting: false,
            zero_acyclic: true,
        }
    }

    /// Half zero-travel edges at few distinct times, so zero blocks are large.
    pub fn zero_heavy(nodes: usize, edges: usize, cyclic: bool) -> Self {
        RandomParams {
            nodes,
            edges,
            horizon: (edges as Time / 8).max(2),
            min_travel: 1,
            max_travel: 3,
            zero_fraction: 0.5,
            mixed_waiting: true,
            zero_acyclic: !cyclic,
        }
    }
}

fn random_waiting<R: Rng>(rng: &mut R, mixed: bool) -> WaitingBounds {
    if !mixed {
        return WaitingBounds::UNRESTRICTED;
    }
    // half the nodes get alpha = 0, so zero-travel edges can chain
    let alpha = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=2) };
    let beta = match rng.gen_range(0..4) {
        0 => MaxWait::Finite(alpha),
        1 => MaxWait::Finite(alpha + rng.gen_range(1..=6)),
        _ => MaxWait::Infinite,
    };
    WaitingBounds::new(alpha, beta)
}

pub fn random_instance<R: Rng>(p: &RandomParams, rng: &mut R) -> TemporalGraph {
    let n = p.nodes.max(1);
    let waiting: Vec<WaitingBounds> = (0..n).map(|_| random_waiting(rng, p.mixed_waiting)).collect();
    let edges = (0..p.edges)
        .map(|_| {
            let mut tail = rng.gen_range(0..n);
            let mut head = rng.gen_range(0..n);
            let dep = rng.gen_range(0..=p.horizon);
            let zero = p.zero_fraction > 0.0 && rng.gen_bool(p.zero_fraction);
            if zero && p.zero_acyclic && tail >= head {
                if tail == head {
                    // a zero self-loop is a zero-cycle
                    return TemporalEdge::new(tail, head, dep, rng.gen_range(p.min_travel.max(1)..=p.max_travel.max(1)));
                }
                std::mem::swap(&mut tail, &mut head);
            }
            let travel = if zero { 0 } else { rng.gen_range(p.min_travel..=p.max_travel) };
            TemporalEdge::new(tail, head, dep, travel)
        })
        .collect();
    TemporalGraph::new(waiting, edges).expect("generated instance is well formed")
}

/// Instance of `family` with size parameter `n`, as the CLI produces it.
pub fn generate(family: Family, n: usize, seed: u64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.max(1);
    match family {
        Family::LbDep => lb_dep(n, &mut rng).graph,
        Family::LbArr => lb_arr(n, &mut rng).graph,
        Family::Random => {
            let mut p = RandomParams::small(n, 4 * n);
            p.horizon = 4 * n as Time;
            random_instance(&p, &mut rng)
        }
        Family::ZeroHeavy => random_instance(&RandomParams::zero_heavy(n, 4 * n, true), &mut rng),
        Family::ZeroAcyclic => random_instance(&RandomParams::zero_heavy(n, 4 * n, false), &mut rng),
    }
}
