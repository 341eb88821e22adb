use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{stationary_distribution, WeightedGraph};

/// Largest state space for which dense matrices are built.
pub const DENSE_GUARD: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Laziness {
    /// Stay put with probability 1/2, otherwise move weight-proportionally.
    #[default]
    Lazy,
    /// Always move weight-proportionally.
    NonLazy,
}

impl Laziness {
    pub fn stay_probability(self) -> f64 {
        match self {
            Laziness::Lazy => 0.5,
            Laziness::NonLazy => 0.0,
        }
    }
}

impl std::str::FromStr for Laziness {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lazy" => Ok(Laziness::Lazy),
            "non_lazy" | "nonlazy" | "non-lazy" => Ok(Laziness::NonLazy),
            _ => Err(Error::InvalidParameter(format!("unknown laziness `{s}`"))),
        }
    }
}

impl std::fmt::Display for Laziness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Laziness::Lazy => "lazy",
            Laziness::NonLazy => "non_lazy",
        })
    }
}

/// Dense row-stochastic transition matrix of the single-walk chain, with a
/// sparse copy of its rows for vector propagation.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    dense: DMatrix<f64>,
    rows: Vec<Vec<(usize, f64)>>,
    stationary: Vec<f64>,
    laziness: Laziness,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.stationary.len()
    }

    pub fn dense(&self) -> &DMatrix<f64> {
        &self.dense
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.dense[(u, v)]
    }

    /// Nonzero entries of row `u`.
    pub fn row(&self, u: usize) -> &[(usize, f64)] {
        &self.rows[u]
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    pub fn laziness(&self) -> Laziness {
        self.laziness
    }

    /// `x -> x P` for a row vector `x`.
    pub fn propagate(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (u, &mass) in x.iter().enumerate() {
            if mass != 0.0 {
                for &(v, p) in &self.rows[u] {
                    out[v] += mass * p;
                }
            }
        }
    }

    /// `h -> P h` for a column vector `h`.
    pub fn apply(&self, h: &[f64], out: &mut [f64]) {
        for (u, o) in out.iter_mut().enumerate() {
            *o = self.rows[u].iter().map(|&(v, p)| p * h[v]).sum();
        }
    }

    /// Largest `|pi(u) P(u,v) - pi(v) P(v,u)|`.
    pub fn reversibility_residual(&self) -> f64 {
        let n = self.size();
        let mut worst: f64 = 0.0;
        for u in 0..n {
            for &(v, p) in &self.rows[u] {
                let back = self.stationary[v] * self.dense[(v, u)];
                worst = worst.max((self.stationary[u] * p - back).abs());
            }
        }
        worst
    }

    /// Largest `|sum_v P(u,v) - 1|`.
    pub fn row_sum_residual(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.iter().map(|&(_, p)| p).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Builds the lazy or non-lazy transition matrix of the weighted walk on `graph`.
pub fn transition_matrix(graph: &WeightedGraph, laziness: Laziness) -> Result<TransitionMatrix> {
    transition_matrix_with_guard(graph, laziness, DENSE_GUARD)
}

pub fn transition_matrix_with_guard(
    graph: &WeightedGraph,
    laziness: Laziness,
    guard: usize,
) -> Result<TransitionMatrix> {
    let n = graph.vertex_count();
    if n > guard {
        return Err(Error::GuardExceeded {
            what: "dense transition matrix",
            size: n,
            limit: guard,
            hint: "; use the Monte-Carlo estimators instead",
        });
    }
    let stay = laziness.stay_probability();
    let mut dense = DMatrix::zeros(n, n);
    let mut rows = Vec::with_capacity(n);
    for u in 0..n {
        let wdeg = graph.weighted_degree(u);
        let mut row = Vec::with_capacity(graph.degree(u) + 1);
        if n == 1 {
            row.push((0, 1.0));
        } else {
            if stay > 0.0 {
                row.push((u, stay));
            }
            for &(v, w) in graph.neighbors(u) {
                row.push((v, (1.0 - stay) * w / wdeg));
            }
        }
        row.sort_by_key(|&(v, _)| v);
        for &(v, p) in &row {
            dense[(u, v)] = p;
        }
        rows.push(row);
    }
    Ok(TransitionMatrix {
        dense,
        rows,
        stationary: stationary_distribution(graph),
        laziness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, build_reset_graph, FamilySpec};

    #[test]
    fn k2_lazy() {
        let g = build_family(&FamilySpec::Clique { n: 2 }).unwrap();
        let p = transition_matrix(&g, Laziness::Lazy).unwrap();
        for u in 0..2 {
            for v in 0..2 {
                assert_eq!(p.get(u, v), 0.5);
            }
        }
    }

    #[test]
    fn cycle4_lazy() {
        let g = build_family(&FamilySpec::Cycle { n: 4 }).unwrap();
        let p = transition_matrix(&g, Laziness::Lazy).unwrap();
        assert_eq!(p.get(0, 0), 0.5);
        assert_eq!(p.get(0, 1), 0.25);
        assert_eq!(p.get(0, 3), 0.25);
        assert_eq!(p.get(0, 2), 0.0);
        assert!(p.row_sum_residual() < 1e-12);
        assert!(p.reversibility_residual() < 1e-12);
    }

    #[test]
    fn reset_graph_row() {
        let g = build_family(&FamilySpec::Clique { n: 2 }).unwrap();
        let r = build_reset_graph(&g, 0.5).unwrap();
        let p = transition_matrix(r.graph(), Laziness::NonLazy).unwrap();
        assert_eq!(p.get(0, 1), 0.5);
        assert_eq!(p.get(0, 2), 0.5);
        assert_eq!(p.get(0, 0), 0.0);
    }

    #[test]
    fn guard_refuses_large_graphs() {
        let g = build_family(&FamilySpec::Cycle { n: 10 }).unwrap();
        let err = transition_matrix_with_guard(&g, Laziness::Lazy, 8).unwrap_err();
        assert!(err.to_string().contains("Monte-Carlo"));
    }
}
