//! Independent queries run side by side.
//!
//! A single scan is inherently sequential; parallelism is across sources
//! or instances. Without the `parallel` feature every mode runs in order.

use crate::cost::CostStructure;
use crate::error::SolveError;
use crate::graph::{NodeId, TemporalGraph};
use crate::mincost::{min_cost_walks, MinCostResult};
use crate::representation::DoublySortedRep;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work is actually spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `items.map(f)` in input order.
pub fn map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// One scan per source over a shared representation.
pub fn multi_source<C: CostStructure>(
    g: &TemporalGraph,
    rep: &DoublySortedRep,
    cs: &C,
    sources: &[NodeId],
    exec: Execution,
) -> Vec<Result<MinCostResult<C::Value>, SolveError>> {
    map(sources, exec, |&s| min_cost_walks(g, rep, cs, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::FewestEdges;
    use crate::graph::fixtures::g1;

    #[test]
    fn modes_agree() {
        let g = g1();
        let rep = DoublySortedRep::build_fully_sorted(&g).unwrap();
        let srcs = [0, 1, 2, 0];
        let a = multi_source(&g, &rep, &FewestEdges, &srcs, Execution::Sequential);
        let b = multi_source(&g, &rep, &FewestEdges, &srcs, Execution::Parallel);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.as_ref().unwrap().costs(), y.as_ref().unwrap().costs());
        }
        assert_eq!(map(&[1, 2, 3], Execution::Parallel, |x| x * 2), vec![2, 4, 6]);
    }
}
