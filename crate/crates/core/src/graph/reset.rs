use super::weighted::WeightedGraph;
use crate::error::{invalid, Result};

/// A base graph plus one reset vertex `z` (id `n`) joined to every base vertex
/// `u` by an edge of weight `x * deg(u) / (1 - x)`.
///
/// The non-lazy walk on the derived graph jumps from any base vertex to `z`
/// with probability exactly `x`, and leaves `z` according to the base
/// stationary distribution.
#[derive(Debug, Clone)]
pub struct ResetGraph {
    base: WeightedGraph,
    reset_rate: f64,
    graph: WeightedGraph,
}

impl ResetGraph {
    pub fn base(&self) -> &WeightedGraph {
        &self.base
    }

    pub fn reset_rate(&self) -> f64 {
        self.reset_rate
    }

    pub fn reset_vertex(&self) -> usize {
        self.base.vertex_count()
    }

    /// The weighted graph on `n + 1` vertices.
    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    /// Stationary mass of the reset vertex: `x / (1 + x)`.
    ///
    /// `z` carries weighted degree `x/(1-x) * 2m` while the base vertices
    /// together carry `2m/(1-x)`.
    pub fn reset_vertex_mass(&self) -> f64 {
        self.reset_rate / (1.0 + self.reset_rate)
    }
}

pub fn build_reset_graph(base: &WeightedGraph, x: f64) -> Result<ResetGraph> {
    if !(x > 0.0 && x < 1.0) {
        return invalid(format!("reset rate must lie in (0,1), got {x}"));
    }
    if !base.is_unit_weight() {
        return invalid("reset graph is defined on unit-weight base graphs");
    }
    let n = base.vertex_count();
    let factor = x / (1.0 - x);
    let edges = base
        .edges()
        .into_iter()
        .chain((0..n).map(|u| (u, n, factor * base.degree(u) as f64)));
    let graph = WeightedGraph::from_edges(n + 1, edges)?;
    Ok(ResetGraph {
        base: base.clone(),
        reset_rate: x,
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::stationary_distribution;

    fn k2() -> WeightedGraph {
        WeightedGraph::from_edges(2, [(0, 1, 1.0)]).unwrap()
    }

    #[test]
    fn k2_half_rate_weights() {
        let r = build_reset_graph(&k2(), 0.5).unwrap();
        assert_eq!(r.reset_vertex(), 2);
        assert_eq!(r.graph().weight(0, 2), Some(1.0));
        assert_eq!(r.graph().weight(1, 2), Some(1.0));
    }

    #[test]
    fn k2_half_rate_stationary() {
        let r = build_reset_graph(&k2(), 0.5).unwrap();
        let pi = stationary_distribution(r.graph());
        // every vertex of the derived triangle has weighted degree 2
        for p in &pi {
            assert!((p - 1.0 / 3.0).abs() < 1e-15);
        }
        assert!((pi[2] - r.reset_vertex_mass()).abs() < 1e-15);
    }

    #[test]
    fn small_rate_move_probability() {
        let x = 1e-3;
        let r = build_reset_graph(&k2(), x).unwrap();
        let g = r.graph();
        let w = g.weight(0, 2).unwrap();
        assert!((w - x / (1.0 - x)).abs() < 1e-18);
        assert!((w / g.weighted_degree(0) - x).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_rates_and_weighted_bases() {
        assert!(build_reset_graph(&k2(), 0.0).is_err());
        assert!(build_reset_graph(&k2(), 1.0).is_err());
        assert!(build_reset_graph(&k2(), -0.1).is_err());
        let weighted = WeightedGraph::from_edges(2, [(0, 1, 2.0)]).unwrap();
        assert!(build_reset_graph(&weighted, 0.5).is_err());
    }
}
