use serde::{Deserialize, Serialize};

use super::estimate::run_trials;
use super::kernel::WalkKernel;
use crate::chain::Laziness;
use crate::error::{invalid, Result};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFrequency {
    pub successes: u64,
    pub trials: u64,
    pub frequency: f64,
    /// `sqrt(f (1 - f) / trials)`.
    pub std_error: f64,
}

impl TailFrequency {
    pub fn new(successes: u64, trials: u64) -> Self {
        let f = successes as f64 / trials as f64;
        Self {
            successes,
            trials,
            frequency: f,
            std_error: (f * (1.0 - f) / trials as f64).sqrt(),
        }
    }
}

/// Empirical `P(max_{s <= t} dist(X_s, X_0) >= d)` in graph distance, with
/// the walk started at `source`.
pub fn max_displacement_tail(
    graph: &WeightedGraph,
    source: usize,
    d: usize,
    t: u64,
    laziness: Laziness,
    trials: usize,
    seed: u64,
) -> Result<TailFrequency> {
    if source >= graph.vertex_count() || trials == 0 {
        return invalid("bad source vertex or zero trials");
    }
    let dist = graph.bfs_distances(source);
    let kernel = WalkKernel::new(graph, laziness);
    let hits = run_trials(trials, seed, |rng| {
        let mut v = source;
        for _ in 0..t {
            v = kernel.step(v, rng);
            if dist[v] >= d {
                return true;
            }
        }
        d == 0
    });
    let successes = hits.into_iter().filter(|&h| h).count() as u64;
    Ok(TailFrequency::new(successes, trials as u64))
}

/// Final positions of `k` walks after `t` steps, one row per trial.
pub fn positions_after(
    kernel: &WalkKernel,
    start: &super::start::StartSampler,
    t: u64,
    trials: usize,
    seed: u64,
) -> Vec<Vec<usize>> {
    run_trials(trials, seed, |rng| {
        let mut pos = Vec::with_capacity(start.walks());
        start.sample_into(rng, &mut pos);
        for _ in 0..t {
            for p in pos.iter_mut() {
                *p = kernel.step(*p, rng);
            }
        }
        pos
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    #[test]
    fn path_displacement_bounds() {
        let g = build_family(&FamilySpec::Path { n: 20 }).unwrap();
        let never = max_displacement_tail(&g, 0, 6, 5, Laziness::Lazy, 200, 0).unwrap();
        assert_eq!(never.successes, 0);
        let always = max_displacement_tail(&g, 0, 1, 50, Laziness::NonLazy, 200, 0).unwrap();
        assert_eq!(always.successes, 200);
    }
}
