use rand::Rng;

use crate::chain::Laziness;
use crate::graph::WeightedGraph;

/// Compressed adjacency for fast single-step sampling.
#[derive(Debug, Clone)]
pub struct WalkKernel {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    /// Per-vertex cumulative weights; empty for unit-weight graphs.
    cumulative: Vec<f64>,
    laziness: Laziness,
}

impl WalkKernel {
    pub fn new(graph: &WeightedGraph, laziness: Laziness) -> Self {
        let n = graph.vertex_count();
        let unit = graph.is_unit_weight();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        let mut cumulative = Vec::new();
        offsets.push(0);
        for u in 0..n {
            let mut acc = 0.0;
            for &(v, w) in graph.neighbors(u) {
                targets.push(v);
                if !unit {
                    acc += w;
                    cumulative.push(acc);
                }
            }
            offsets.push(targets.len());
        }
        Self {
            offsets,
            targets,
            cumulative,
            laziness,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn laziness(&self) -> Laziness {
        self.laziness
    }

    /// One step of the walk from `u`.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&self, u: usize, rng: &mut R) -> usize {
        let r = rng.next_u64();
        if self.laziness == Laziness::Lazy && r & 1 == 0 {
            return u;
        }
        self.pick(u, r >> 32, rng)
    }

    /// Chooses a neighbour of `u` from 32 fresh random bits `bits`; the
    /// multiply-shift map has bias below `deg / 2^32`.
    #[inline]
    fn pick<R: Rng + ?Sized>(&self, u: usize, bits: u64, rng: &mut R) -> usize {
        let (lo, hi) = (self.offsets[u], self.offsets[u + 1]);
        if hi == lo {
            return u;
        }
        if self.cumulative.is_empty() {
            let deg = (hi - lo) as u64;
            return self.targets[lo + ((bits * deg) >> 32) as usize];
        }
        let cum = &self.cumulative[lo..hi];
        let r = rng.random::<f64>() * cum[cum.len() - 1];
        let i = cum.partition_point(|&c| c <= r).min(cum.len() - 1);
        self.targets[lo + i]
    }

    /// A non-lazy move to a weight-proportional neighbour.
    #[inline]
    pub fn move_from<R: Rng + ?Sized>(&self, u: usize, rng: &mut R) -> usize {
        let bits = rng.next_u64() >> 32;
        self.pick(u, bits, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn non_lazy_k2_alternates() {
        let g = WeightedGraph::from_edges(2, [(0, 1, 1.0)]).unwrap();
        let k = WalkKernel::new(&g, Laziness::NonLazy);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(k.step(0, &mut rng), 1);
        assert_eq!(k.step(1, &mut rng), 0);
    }

    #[test]
    fn weighted_frequencies() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 1.0), (0, 2, 3.0)]).unwrap();
        let k = WalkKernel::new(&g, Laziness::NonLazy);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let trials = 200_000;
        let hits = (0..trials).filter(|_| k.step(0, &mut rng) == 2).count();
        let f = hits as f64 / trials as f64;
        assert!((f - 0.75).abs() < 0.005, "{f}");
    }

    #[test]
    fn unit_weight_neighbours_are_uniform() {
        let g = WeightedGraph::from_edges(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        let k = WalkKernel::new(&g, Laziness::Lazy);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut counts = [0usize; 4];
        let trials = 300_000;
        for _ in 0..trials {
            counts[k.step(0, &mut rng)] += 1;
        }
        assert!((counts[0] as f64 / trials as f64 - 0.5).abs() < 0.005);
        for c in &counts[1..] {
            assert!((*c as f64 / trials as f64 - 1.0 / 6.0).abs() < 0.005);
        }
    }

    #[test]
    fn lazy_stays_half_the_time() {
        let g = WeightedGraph::from_edges(2, [(0, 1, 1.0)]).unwrap();
        let k = WalkKernel::new(&g, Laziness::Lazy);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let trials = 200_000;
        let stays = (0..trials).filter(|_| k.step(0, &mut rng) == 0).count();
        assert!((stays as f64 / trials as f64 - 0.5).abs() < 0.005);
    }
}
