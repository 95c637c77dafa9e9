//! Timing sweeps and log-log slope fits.

use std::time::{Duration, Instant};

use crate::graph::{NodeId, TemporalGraph};

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Fastest of `reps` runs; the minimum is the least noisy estimator on a
/// shared machine.
pub fn time_min<R>(reps: usize, mut f: impl FnMut() -> R) -> (Duration, R) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..reps.max(1) {
        let t = Instant::now();
        let r = std::hint::black_box(f());
        best = best.min(t.elapsed());
        last = Some(r);
    }
    (best, last.unwrap())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub edges: usize,
    /// Representation construction, excluded from the slope.
    pub build: Duration,
    pub solve: Duration,
    pub work: usize,
}

impl BenchRow {
    pub fn work_per_edge(&self) -> f64 {
        self.work as f64 / self.edges.max(1) as f64
    }
}

/// Tail of the earliest-departing edge, so the scan has something to reach.
pub fn bench_source(g: &TemporalGraph) -> NodeId {
    g.edges().iter().min_by_key(|e| e.dep).map_or(0, |e| e.tail)
}

pub fn solve_slope(rows: &[BenchRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.edges as f64, r.solve.as_secs_f64())).collect();
    log_log_slope(&pts)
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = String::from("edges\tbuild_ms\tsolve_ms\twork\twork_per_edge\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{:.3}\t{:.3}\t{}\t{:.3}\n",
            r.edges,
            r.build.as_secs_f64() * 1e3,
            r.solve.as_secs_f64() * 1e3,
            r.work,
            r.work_per_edge()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_laws() {
        let lin: Vec<(f64, f64)> = (1..6).map(|i| (i as f64 * 10.0, i as f64 * 3.0)).collect();
        assert!((log_log_slope(&lin) - 1.0).abs() < 1e-12);
        let quad: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, (i * i) as f64)).collect();
        assert!((log_log_slope(&quad) - 2.0).abs() < 1e-12);
    }
}
