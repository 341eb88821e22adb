use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Undirected, connected graph with strictly positive edge weights.
///
/// Vertices are the dense ids `0..n`. Every undirected edge is stored in both
/// adjacency lists with the same weight; self-loops are never stored (laziness
/// belongs to the walk, not the graph).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
    total_edge_weight: f64,
    unit_weights: bool,
}

impl WeightedGraph {
    /// Builds a graph from undirected edges `(u, v, w)`.
    ///
    /// Rejects self-loops, repeated edges, non-positive or non-finite weights,
    /// out-of-range endpoints and disconnected results.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut total = 0.0;
        let mut unit = true;
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) has non-positive weight {w}"
                )));
            }
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
            total += w;
            unit &= w == 1.0;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_by_key(|&(v, _)| v);
            if list.windows(2).any(|p| p[0].0 == p[1].0) {
                return Err(Error::InvalidGraph(format!("repeated edge at vertex {u}")));
            }
        }
        let graph = Self {
            adjacency,
            total_edge_weight: total,
            unit_weights: unit,
        };
        if !graph.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    /// Number of incident edges (ignores weights).
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn weighted_degree(&self, v: usize) -> f64 {
        self.adjacency[v].iter().map(|&(_, w)| w).sum()
    }

    /// Sum of weights over undirected edges (`m` for unit-weight graphs).
    pub fn total_edge_weight(&self) -> f64 {
        self.total_edge_weight
    }

    pub fn is_unit_weight(&self) -> bool {
        self.unit_weights
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.adjacency[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| self.adjacency[u][i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    /// Undirected edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            for &(v, w) in list {
                if u < v {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    /// Breadth-first hop distances from `source`.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// Vertices of `set` that have at least one neighbour outside it.
    pub fn boundary(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.vertex_count()];
        for &v in set {
            inside[v] = true;
        }
        let mut out: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&v| self.adjacency[v].iter().any(|&(y, _)| !inside[y]))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Edge-list text: header `n m`, then one `u v w` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = String::with_capacity(16 * (edges.len() + 1));
        let _ = writeln!(out, "{} {}", self.vertex_count(), edges.len());
        for (u, v, w) in edges {
            let _ = writeln!(out, "{u} {v} {w}");
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(Error::Parse {
                line: hline + 1,
                msg: "header must be `n m`".into(),
            });
        }
        let parse_usize = |s: &str, line: usize| {
            s.parse::<usize>().map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })
        };
        let n = parse_usize(nums[0], hline + 1)?;
        let m = parse_usize(nums[1], hline + 1)?;
        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: "edge line must be `u v w`".into(),
                });
            }
            let w = f[2].parse::<f64>().map_err(|e| Error::Parse {
                line: idx + 1,
                msg: e.to_string(),
            })?;
            edges.push((parse_usize(f[0], idx + 1)?, parse_usize(f[1], idx + 1)?, w));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline + 1,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Self::from_edges(n, edges)
    }
}

/// Degree-proportional stationary distribution `wdeg(v) / sum_u wdeg(u)`.
pub fn stationary_distribution(graph: &WeightedGraph) -> Vec<f64> {
    let total = 2.0 * graph.total_edge_weight();
    if graph.vertex_count() == 1 {
        return vec![1.0];
    }
    (0..graph.vertex_count())
        .map(|v| graph.weighted_degree(v) / total)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn path_stationary_is_degree_proportional() {
        let pi = stationary_distribution(&path3());
        assert_eq!(pi, vec![0.25, 0.5, 0.25]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(WeightedGraph::from_edges(2, [(0, 0, 1.0)]).is_err());
        assert!(WeightedGraph::from_edges(2, [(0, 1, 0.0)]).is_err());
        assert!(WeightedGraph::from_edges(2, [(0, 1, -1.0)]).is_err());
        assert!(WeightedGraph::from_edges(3, [(0, 1, 1.0)]).is_err());
        assert!(WeightedGraph::from_edges(2, [(0, 1, 1.0), (1, 0, 1.0)]).is_err());
        assert!(WeightedGraph::from_edges(2, [(0, 2, 1.0)]).is_err());
    }

    #[test]
    fn weights_are_symmetric() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 2.5), (1, 2, 0.5)]).unwrap();
        assert_eq!(g.weight(0, 1), Some(2.5));
        assert_eq!(g.weight(1, 0), Some(2.5));
        assert_eq!(g.weighted_degree(1), 3.0);
        assert!(!g.is_unit_weight());
    }

    #[test]
    fn edge_list_is_sorted_and_parses_back() {
        let g = WeightedGraph::from_edges(4, [(2, 3, 1.0), (0, 1, 1.0), (1, 2, 0.25)]).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "4 3\n0 1 1\n1 2 0.25\n2 3 1\n");
        assert_eq!(WeightedGraph::from_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_count_mismatch_is_rejected() {
        assert!(WeightedGraph::from_edge_list("3 3\n0 1 1\n1 2 1\n").is_err());
        assert!(WeightedGraph::from_edge_list("").is_err());
    }

    #[test]
    fn boundary_of_arc() {
        let g = path3();
        assert_eq!(g.boundary(&[1, 2]), vec![1]);
        assert!(g.boundary(&[0, 1, 2]).is_empty());
    }
}
