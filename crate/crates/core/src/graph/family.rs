//! Generators for the standard graph families and their "hard set" catalogs.
//!
//! Vertex numbering per family:
//! - torus: `id = sum_i x_i * side^i`
//! - hypercube: `id` is the bit vector of coordinates
//! - binary tree: heap order, `id = heap_index - 1` (root is 0, children of `i` are `2i+1`, `2i+2`)
//! - barbell: clique `0..n/2` and clique `n/2..n`, bridge `(n/2 - 1, n/2)`

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::weighted::{stationary_distribution, WeightedGraph};
use crate::error::{invalid, Error, Result};

/// Rejection budget for the configuration model.
pub const REGULAR_RETRY_BUDGET: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Cycle { n: usize },
    Path { n: usize },
    Torus { d: usize, side: usize },
    BinaryTree { height: u32 },
    Hypercube { d: u32 },
    Clique { n: usize },
    Barbell { n: usize },
    RandomRegular { n: usize, degree: usize, seed: u64 },
    PreferentialAttachment { n: usize, m: usize, seed: u64 },
}

impl FamilySpec {
    /// Torus given by its total vertex count; `n` must be a perfect `d`-th power.
    pub fn torus_with_vertices(d: usize, n: usize) -> Result<Self> {
        if d == 0 {
            return invalid("torus dimension must be positive");
        }
        let approx = (n as f64).powf(1.0 / d as f64).round() as usize;
        for side in approx.saturating_sub(1)..=approx + 1 {
            if side.checked_pow(d as u32) == Some(n) {
                return Ok(FamilySpec::Torus { d, side });
            }
        }
        invalid(format!("torus: n={n} is not a perfect {d}-th power"))
    }

    /// Vertex count the generator will produce.
    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Cycle { n }
            | FamilySpec::Path { n }
            | FamilySpec::Clique { n }
            | FamilySpec::Barbell { n }
            | FamilySpec::RandomRegular { n, .. }
            | FamilySpec::PreferentialAttachment { n, .. } => n,
            FamilySpec::Torus { d, side } => side.pow(d as u32),
            FamilySpec::BinaryTree { height } => (1usize << (height + 1)) - 1,
            FamilySpec::Hypercube { d } => 1usize << d,
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(
            self,
            FamilySpec::RandomRegular { .. } | FamilySpec::PreferentialAttachment { .. }
        )
    }

    /// Every vertex looks the same (automorphism group acts transitively).
    pub fn is_vertex_transitive(&self) -> bool {
        matches!(
            self,
            FamilySpec::Cycle { .. }
                | FamilySpec::Torus { .. }
                | FamilySpec::Hypercube { .. }
                | FamilySpec::Clique { .. }
        )
    }

    /// Short name of the family without parameters.
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Torus { .. } => "torus",
            FamilySpec::BinaryTree { .. } => "binary_tree",
            FamilySpec::Hypercube { .. } => "hypercube",
            FamilySpec::Clique { .. } => "clique",
            FamilySpec::Barbell { .. } => "barbell",
            FamilySpec::RandomRegular { .. } => "random_regular",
            FamilySpec::PreferentialAttachment { .. } => "preferential_attachment",
        }
    }

    /// Start vertices covering every symmetry class that matters for
    /// single-source worst-case estimates. Random families have no symmetry,
    /// so every vertex is returned.
    pub fn start_representatives(&self) -> Vec<usize> {
        match *self {
            FamilySpec::Cycle { .. }
            | FamilySpec::Torus { .. }
            | FamilySpec::Hypercube { .. }
            | FamilySpec::Clique { .. } => vec![0],
            // one vertex per depth: the leftmost one, heap index 2^depth
            FamilySpec::BinaryTree { height } => (0..=height).map(|d| (1usize << d) - 1).collect(),
            FamilySpec::Path { n } => (0..n.div_ceil(2)).collect(),
            FamilySpec::Barbell { n } => vec![0, n / 2 - 1],
            FamilySpec::RandomRegular { n, .. } | FamilySpec::PreferentialAttachment { n, .. } => (0..n).collect(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Torus { d, side } => write!(f, "torus:{d}:{side}"),
            FamilySpec::BinaryTree { height } => write!(f, "binary_tree:{height}"),
            FamilySpec::Hypercube { d } => write!(f, "hypercube:{d}"),
            FamilySpec::Clique { n } => write!(f, "clique:{n}"),
            FamilySpec::Barbell { n } => write!(f, "barbell:{n}"),
            FamilySpec::RandomRegular { n, degree, seed } => {
                write!(f, "random_regular:{degree}:{n}:{seed}")
            }
            FamilySpec::PreferentialAttachment { n, m, seed } => write!(f, "pa:{m}:{n}:{seed}"),
        }
    }
}

/// Parses the shorthand used on the command line, e.g. `cycle:64`,
/// `torus:2:32`, `random_regular:4:1024:7`, `pa:2:1024:7`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<u64> {
            parts
                .get(i)
                .ok_or_else(|| Error::InvalidParameter(format!("family `{s}`: missing field {i}")))?
                .parse::<u64>()
                .map_err(|e| Error::InvalidParameter(format!("family `{s}`: {e}")))
        };
        let arity = |k: usize| -> Result<()> {
            if parts.len() == k {
                Ok(())
            } else {
                invalid(format!("family `{s}`: expected {} parameter(s)", k - 1))
            }
        };
        let spec = match parts[0] {
            "cycle" => {
                arity(2)?;
                FamilySpec::Cycle { n: num(1)? as usize }
            }
            "path" => {
                arity(2)?;
                FamilySpec::Path { n: num(1)? as usize }
            }
            "torus" => {
                arity(3)?;
                FamilySpec::Torus {
                    d: num(1)? as usize,
                    side: num(2)? as usize,
                }
            }
            "binary_tree" | "tree" => {
                arity(2)?;
                FamilySpec::BinaryTree { height: num(1)? as u32 }
            }
            "hypercube" => {
                arity(2)?;
                FamilySpec::Hypercube { d: num(1)? as u32 }
            }
            "clique" => {
                arity(2)?;
                FamilySpec::Clique { n: num(1)? as usize }
            }
            "barbell" => {
                arity(2)?;
                FamilySpec::Barbell { n: num(1)? as usize }
            }
            "random_regular" | "regular" => {
                arity(4)?;
                FamilySpec::RandomRegular {
                    degree: num(1)? as usize,
                    n: num(2)? as usize,
                    seed: num(3)?,
                }
            }
            "pa" | "preferential_attachment" => {
                arity(4)?;
                FamilySpec::PreferentialAttachment {
                    m: num(1)? as usize,
                    n: num(2)? as usize,
                    seed: num(3)?,
                }
            }
            other => return invalid(format!("unknown family `{other}`")),
        };
        Ok(spec)
    }
}

/// Builds the graph described by `spec`.
pub fn build_family(spec: &FamilySpec) -> Result<WeightedGraph> {
    match *spec {
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return invalid(format!("cycle needs n >= 3, got {n}"));
            }
            WeightedGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, 1.0)))
        }
        FamilySpec::Path { n } => {
            if n < 2 {
                return invalid(format!("path needs n >= 2, got {n}"));
            }
            WeightedGraph::from_edges(n, (0..n - 1).map(|i| (i, i + 1, 1.0)))
        }
        FamilySpec::Torus { d, side } => torus(d, side),
        FamilySpec::BinaryTree { height } => {
            if height == 0 || height > 30 {
                return invalid(format!("binary tree height must be in 1..=30, got {height}"));
            }
            let n = spec.vertex_count();
            WeightedGraph::from_edges(n, (1..n).map(|c| ((c - 1) / 2, c, 1.0)))
        }
        FamilySpec::Hypercube { d } => {
            if d == 0 || d > 24 {
                return invalid(format!("hypercube dimension must be in 1..=24, got {d}"));
            }
            let n = 1usize << d;
            let edges = (0..n).flat_map(|v| {
                (0..d)
                    .map(move |b| (v, v ^ (1 << b)))
                    .filter(|&(u, w)| u < w)
                    .map(|(u, w)| (u, w, 1.0))
            });
            WeightedGraph::from_edges(n, edges)
        }
        FamilySpec::Clique { n } => {
            if n < 2 {
                return invalid(format!("clique needs n >= 2, got {n}"));
            }
            WeightedGraph::from_edges(n, clique_edges(0, n))
        }
        FamilySpec::Barbell { n } => {
            if n < 4 || n % 2 != 0 {
                return invalid(format!("barbell needs an even n >= 4, got {n}"));
            }
            let h = n / 2;
            let edges = clique_edges(0, h)
                .chain(clique_edges(h, n))
                .chain(std::iter::once((h - 1, h, 1.0)));
            WeightedGraph::from_edges(n, edges)
        }
        FamilySpec::RandomRegular { n, degree, seed } => random_regular(n, degree, seed),
        FamilySpec::PreferentialAttachment { n, m, seed } => preferential_attachment(n, m, seed),
    }
}

fn clique_edges(lo: usize, hi: usize) -> impl Iterator<Item = (usize, usize, f64)> {
    (lo..hi).flat_map(move |u| (u + 1..hi).map(move |v| (u, v, 1.0)))
}

fn torus(d: usize, side: usize) -> Result<WeightedGraph> {
    if d == 0 {
        return invalid("torus dimension must be positive");
    }
    if side < 3 {
        return invalid(format!("torus side must be >= 3 for a simple graph, got {side}"));
    }
    let n = side
        .checked_pow(d as u32)
        .filter(|&n| n <= 1 << 26)
        .ok_or_else(|| Error::InvalidParameter(format!("torus {side}^{d} too large")))?;
    let mut edges = Vec::with_capacity(n * d);
    for v in 0..n {
        let mut stride = 1;
        for _ in 0..d {
            let coord = (v / stride) % side;
            let up = if coord + 1 == side {
                v - coord * stride
            } else {
                v + stride
            };
            edges.push((v, up, 1.0));
            stride *= side;
        }
    }
    // side >= 3 means each (v, up) pair is distinct; normalise orientation.
    let edges = edges.into_iter().map(|(u, v, w)| (u.min(v), u.max(v), w));
    WeightedGraph::from_edges(n, edges)
}

fn random_regular(n: usize, degree: usize, seed: u64) -> Result<WeightedGraph> {
    if degree == 0 || degree >= n {
        return invalid(format!("random_regular needs 0 < degree < n (degree={degree}, n={n})"));
    }
    if !(n * degree).is_multiple_of(2) {
        return invalid(format!("random_regular needs n*degree even (n={n}, degree={degree})"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    let mut seen = vec![false; n * n];
    'attempt: for _ in 0..REGULAR_RETRY_BUDGET {
        stubs.shuffle(&mut rng);
        seen.iter_mut().for_each(|s| *s = false);
        let mut edges = Vec::with_capacity(n * degree / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || seen[u * n + v] {
                continue 'attempt;
            }
            seen[u * n + v] = true;
            edges.push((u, v, 1.0));
        }
        match WeightedGraph::from_edges(n, edges) {
            Ok(g) => return Ok(g),
            Err(Error::InvalidGraph(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryBudgetExhausted {
        what: "configuration model never produced a simple connected graph",
        attempts: REGULAR_RETRY_BUDGET,
    })
}

/// Seed clique on `m + 1` vertices; every later vertex draws `m` endpoints
/// degree-proportionally (with replacement) and repeated draws become weight.
fn preferential_attachment(n: usize, m: usize, seed: u64) -> Result<WeightedGraph> {
    if m == 0 {
        return invalid("preferential attachment needs m >= 1");
    }
    if n < m + 1 {
        return invalid(format!("preferential attachment needs n >= m+1 (n={n}, m={m})"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Each unit of weight contributes both endpoints, so a uniform pick is
    // proportional to weighted degree.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * m * n);
    let mut weights: std::collections::BTreeMap<(usize, usize), f64> = Default::default();
    for (u, v, _) in clique_edges(0, m + 1) {
        endpoints.push(u);
        endpoints.push(v);
        weights.insert((u, v), 1.0);
    }
    for v in m + 1..n {
        let targets: Vec<usize> = (0..m)
            .map(|_| endpoints[rng.random_range(0..endpoints.len())])
            .collect();
        for u in targets {
            *weights.entry((u, v)).or_insert(0.0) += 1.0;
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    WeightedGraph::from_edges(n, weights.into_iter().map(|((u, v), w)| (u, v, w)))
}

/// A candidate large set used by lower-bound arguments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardSet {
    pub label: String,
    pub vertices: Vec<usize>,
    /// Vertices of the set with a neighbour outside it.
    pub boundary: Vec<usize>,
    /// Stationary mass of the set.
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardSetCatalog {
    pub sets: Vec<HardSet>,
    /// Set when the family has no catalog.
    pub diagnostic: Option<String>,
}

/// Family-specific large sets far from vertex 0 (the anchor). Every returned
/// set has stationary mass at least 1/4.
pub fn canonical_hard_sets(graph: &WeightedGraph, spec: &FamilySpec) -> HardSetCatalog {
    if graph.vertex_count() != spec.vertex_count() {
        return HardSetCatalog {
            sets: Vec::new(),
            diagnostic: Some(format!("graph does not match family {spec}")),
        };
    }
    let mut raw: Vec<(String, Vec<usize>)> = Vec::new();
    match *spec {
        FamilySpec::Cycle { n } => {
            let gap = (n / 4).max(1);
            let far = (0..n).filter(|&v| v.min(n - v) >= gap).collect();
            raw.push((format!("far_arc(dist>={gap})"), far));
        }
        FamilySpec::Path { n } => {
            raw.push(("far_half".into(), (n / 2..n).collect()));
        }
        FamilySpec::Torus { d: _, side } => {
            let gap = (side / 4).max(1);
            let far = (0..spec.vertex_count())
                .filter(|&v| {
                    let x = v % side;
                    x.min(side - x) >= gap
                })
                .collect();
            raw.push((format!("far_slab(dist>={gap})"), far));
        }
        FamilySpec::BinaryTree { height } => {
            let n = spec.vertex_count();
            let first_leaf = (1usize << height) - 1;
            raw.push(("leaves".into(), (first_leaf..n).collect()));
            let mut right = Vec::new();
            let mut level = vec![2usize];
            while !level.is_empty() {
                right.extend(&level);
                level = level
                    .iter()
                    .flat_map(|&v| [2 * v + 1, 2 * v + 2])
                    .filter(|&c| c < n)
                    .collect();
            }
            right.sort_unstable();
            raw.push(("right_subtree".into(), right));
        }
        FamilySpec::Hypercube { d } => {
            let n = 1usize << d;
            let half = d / 2;
            let near = (0..n).filter(|&v| v.count_ones() <= half).collect();
            let far = (0..n).filter(|&v| d - v.count_ones() <= half).collect();
            raw.push((format!("ball(anchor,r={half})"), near));
            raw.push((format!("ball(antipode,r={half})"), far));
        }
        FamilySpec::Clique { n } => {
            let q = n.div_ceil(4);
            raw.push(("quarter".into(), (n - q..n).collect()));
        }
        FamilySpec::Barbell { n } => {
            raw.push(("far_clique".into(), (n / 2..n).collect()));
        }
        FamilySpec::RandomRegular { .. } | FamilySpec::PreferentialAttachment { .. } => {
            return HardSetCatalog {
                sets: Vec::new(),
                diagnostic: Some(format!("no canonical hard sets for random family `{}`", spec.tag())),
            };
        }
    }
    let pi = stationary_distribution(graph);
    let sets = raw
        .into_iter()
        .map(|(label, vertices)| {
            let mass = vertices.iter().map(|&v| pi[v]).sum();
            HardSet {
                boundary: graph.boundary(&vertices),
                label,
                vertices,
                mass,
            }
        })
        .filter(|s| s.mass >= 0.25 - 1e-12)
        .collect();
    HardSetCatalog { sets, diagnostic: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &WeightedGraph) -> Vec<usize> {
        (0..g.vertex_count()).map(|v| g.degree(v)).collect()
    }

    #[test]
    fn cycle4() {
        let g = build_family(&FamilySpec::Cycle { n: 4 }).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(degrees(&g).iter().all(|&d| d == 2));
    }

    #[test]
    fn binary_tree_height2() {
        let g = build_family(&FamilySpec::BinaryTree { height: 2 }).unwrap();
        assert_eq!(g.vertex_count(), 7);
        let mut d = degrees(&g);
        assert_eq!(d[0], 2);
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 1, 2, 3, 3]);
    }

    #[test]
    fn hypercube3() {
        let g = build_family(&FamilySpec::Hypercube { d: 3 }).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 12);
        assert!(degrees(&g).iter().all(|&d| d == 3));
    }

    #[test]
    fn barbell8() {
        let g = build_family(&FamilySpec::Barbell { n: 8 }).unwrap();
        assert_eq!(g.edge_count(), 13);
        assert!(g.has_edge(3, 4));
        assert!(!g.has_edge(0, 4));
        assert!(build_family(&FamilySpec::Barbell { n: 7 }).is_err());
    }

    #[test]
    fn torus_sizes() {
        let g = build_family(&FamilySpec::Torus { d: 2, side: 5 }).unwrap();
        assert_eq!(g.vertex_count(), 25);
        assert!(degrees(&g).iter().all(|&d| d == 4));
        let g3 = build_family(&FamilySpec::Torus { d: 3, side: 4 }).unwrap();
        assert_eq!(g3.vertex_count(), 64);
        assert!(degrees(&g3).iter().all(|&d| d == 6));
        assert_eq!(
            FamilySpec::torus_with_vertices(2, 1024).unwrap(),
            FamilySpec::Torus { d: 2, side: 32 }
        );
        assert!(FamilySpec::torus_with_vertices(2, 1000).is_err());
        assert!(build_family(&FamilySpec::Torus { d: 2, side: 2 }).is_err());
    }

    #[test]
    fn random_regular_is_regular_and_deterministic() {
        let spec = FamilySpec::RandomRegular {
            n: 64,
            degree: 4,
            seed: 11,
        };
        let g = build_family(&spec).unwrap();
        assert!(degrees(&g).iter().all(|&d| d == 4));
        assert_eq!(g, build_family(&spec).unwrap());
        assert!(build_family(&FamilySpec::RandomRegular {
            n: 7,
            degree: 3,
            seed: 1
        })
        .is_err());
    }

    #[test]
    fn pa_total_weight() {
        let (n, m) = (200, 3);
        let spec = FamilySpec::PreferentialAttachment { n, m, seed: 5 };
        let g = build_family(&spec).unwrap();
        let total: f64 = (0..n).map(|v| g.weighted_degree(v)).sum();
        let seed_degrees = (m * (m + 1)) as f64;
        assert_eq!(total, (2 * m * (n - (m + 1))) as f64 + seed_degrees);
        assert_eq!(g, build_family(&spec).unwrap());
    }

    #[test]
    fn shorthand_round_trip() {
        for s in [
            "cycle:64",
            "torus:2:32",
            "binary_tree:8",
            "hypercube:10",
            "barbell:128",
            "random_regular:4:1024:7",
            "pa:2:1024:9",
            "clique:5",
            "path:3",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("cycle".parse::<FamilySpec>().is_err());
        assert!("blob:3".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn cycle8_far_arc() {
        let spec = FamilySpec::Cycle { n: 8 };
        let g = build_family(&spec).unwrap();
        let cat = canonical_hard_sets(&g, &spec);
        assert_eq!(cat.sets[0].vertices, vec![2, 3, 4, 5, 6]);
        assert_eq!(cat.sets[0].boundary, vec![2, 6]);
    }

    #[test]
    fn tree_leaves_mass() {
        let spec = FamilySpec::BinaryTree { height: 3 };
        let g = build_family(&spec).unwrap();
        let cat = canonical_hard_sets(&g, &spec);
        let leaves = &cat.sets[0];
        assert_eq!(leaves.vertices.len(), 8);
        // 8 unit degrees over 2m = 28
        assert!((leaves.mass - 8.0 / 28.0).abs() < 1e-15);
        assert_eq!(cat.sets[1].vertices.len(), 7);
    }

    #[test]
    fn barbell_far_clique_mass() {
        let spec = FamilySpec::Barbell { n: 8 };
        let g = build_family(&spec).unwrap();
        let cat = canonical_hard_sets(&g, &spec);
        assert_eq!(cat.sets[0].vertices, vec![4, 5, 6, 7]);
        assert!((cat.sets[0].mass - 0.5).abs() < 1e-12);
        assert_eq!(cat.sets[0].boundary, vec![4]);
    }

    #[test]
    fn random_families_have_no_catalog() {
        let spec = FamilySpec::RandomRegular {
            n: 16,
            degree: 3,
            seed: 2,
        };
        let g = build_family(&spec).unwrap();
        let cat = canonical_hard_sets(&g, &spec);
        assert!(cat.sets.is_empty());
        assert!(cat.diagnostic.is_some());
    }
}
