use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{stationary_distribution, WeightedGraph};

/// Initial placement of the `k` walks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StartSpec {
    AllAtVertex {
        vertex: usize,
    },
    /// Each walk starts independently from the stationary distribution.
    StationaryProduct,
    ExplicitTuple {
        vertices: Vec<usize>,
    },
    /// Each walk starts independently from a distribution on `set`.
    DistributionOnSet {
        set: Vec<usize>,
        measure: SetMeasure,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetMeasure {
    /// Uniform on the vertices of the set that have a neighbour outside it.
    UniformOnBoundary,
    PointMass {
        vertex: usize,
    },
}

impl std::fmt::Display for StartSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StartSpec::AllAtVertex { vertex } => write!(f, "vertex:{vertex}"),
            StartSpec::StationaryProduct => f.write_str("stationary"),
            StartSpec::ExplicitTuple { vertices } => {
                let parts: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
                write!(f, "tuple:{}", parts.join(","))
            }
            StartSpec::DistributionOnSet { set, measure } => {
                let m = match measure {
                    SetMeasure::UniformOnBoundary => "boundary".to_string(),
                    SetMeasure::PointMass { vertex } => format!("point{vertex}"),
                };
                write!(f, "set[{}]:{m}", set.len())
            }
        }
    }
}

/// Parses `stationary`, `vertex:V` or `tuple:V1,V2,...`.
impl std::str::FromStr for StartSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("start `{s}`: expected stationary, vertex:V or tuple:V1,V2,..."));
        if s == "stationary" {
            return Ok(StartSpec::StationaryProduct);
        }
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "vertex" => Ok(StartSpec::AllAtVertex {
                vertex: rest.parse().map_err(|_| bad())?,
            }),
            "tuple" => Ok(StartSpec::ExplicitTuple {
                vertices: rest
                    .split(',')
                    .map(|v| v.trim().parse().map_err(|_| bad()))
                    .collect::<Result<_>>()?,
            }),
            _ => Err(bad()),
        }
    }
}

/// A start specification resolved against a graph and a walk count, ready
/// for repeated sampling.
#[derive(Debug, Clone)]
pub struct StartSampler {
    kind: Resolved,
    k: usize,
    /// Set when a boundary measure had to fall back to uniform on the set.
    pub fallback: bool,
}

#[derive(Debug, Clone)]
enum Resolved {
    Fixed(Vec<usize>),
    /// Cumulative weights over `support`.
    Iid {
        support: Vec<usize>,
        cumulative: Vec<f64>,
    },
}

impl StartSampler {
    pub fn new(graph: &WeightedGraph, k: usize, spec: &StartSpec) -> Result<Self> {
        let n = graph.vertex_count();
        if k == 0 {
            return invalid("k must be at least 1");
        }
        let check = |v: usize| -> Result<()> {
            if v >= n {
                invalid(format!("start vertex {v} out of range for n={n}"))
            } else {
                Ok(())
            }
        };
        let mut fallback = false;
        let kind = match spec {
            StartSpec::AllAtVertex { vertex } => {
                check(*vertex)?;
                Resolved::Fixed(vec![*vertex; k])
            }
            StartSpec::ExplicitTuple { vertices } => {
                if vertices.len() != k {
                    return invalid(format!("start tuple has {} entries, expected k={k}", vertices.len()));
                }
                for &v in vertices {
                    check(v)?;
                }
                Resolved::Fixed(vertices.clone())
            }
            StartSpec::StationaryProduct => {
                let pi = stationary_distribution(graph);
                iid((0..n).collect(), &pi)
            }
            StartSpec::DistributionOnSet { set, measure } => {
                if set.is_empty() {
                    return invalid("start set must be nonempty");
                }
                for &v in set {
                    check(v)?;
                }
                match measure {
                    SetMeasure::PointMass { vertex } => {
                        if !set.contains(vertex) {
                            return invalid(format!("point mass {vertex} is not in the set"));
                        }
                        Resolved::Fixed(vec![*vertex; k])
                    }
                    SetMeasure::UniformOnBoundary => {
                        let mut support = graph.boundary(set);
                        if support.is_empty() {
                            fallback = true;
                            support = set.clone();
                            support.sort_unstable();
                            support.dedup();
                        }
                        let w = vec![1.0; support.len()];
                        iid(support, &w)
                    }
                }
            }
        };
        Ok(Self { kind, k, fallback })
    }

    pub fn walks(&self) -> usize {
        self.k
    }

    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<usize>) {
        out.clear();
        match &self.kind {
            Resolved::Fixed(v) => out.extend_from_slice(v),
            Resolved::Iid { support, cumulative } => {
                let total = cumulative[cumulative.len() - 1];
                for _ in 0..self.k {
                    let r = rng.random::<f64>() * total;
                    let i = cumulative.partition_point(|&c| c <= r).min(support.len() - 1);
                    out.push(support[i]);
                }
            }
        }
    }
}

fn iid(support: Vec<usize>, weights: &[f64]) -> Resolved {
    let mut acc = 0.0;
    let cumulative = weights
        .iter()
        .map(|w| {
            acc += w;
            acc
        })
        .collect();
    Resolved::Iid { support, cumulative }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_the_display_form() {
        for text in ["stationary", "vertex:3", "tuple:0,2,2"] {
            let spec: StartSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("vertex:x".parse::<StartSpec>().is_err());
        assert!("corner".parse::<StartSpec>().is_err());
    }

    #[test]
    fn tuple_length_is_checked() {
        let g = build_family(&FamilySpec::Cycle { n: 5 }).unwrap();
        let s = StartSpec::ExplicitTuple { vertices: vec![0, 1] };
        assert!(StartSampler::new(&g, 3, &s).is_err());
        assert!(StartSampler::new(&g, 2, &s).is_ok());
        assert!(StartSampler::new(&g, 1, &StartSpec::AllAtVertex { vertex: 5 }).is_err());
    }

    #[test]
    fn boundary_measure_and_fallback() {
        let g = build_family(&FamilySpec::Cycle { n: 8 }).unwrap();
        let s = StartSpec::DistributionOnSet {
            set: vec![2, 3, 4, 5, 6],
            measure: SetMeasure::UniformOnBoundary,
        };
        let sampler = StartSampler::new(&g, 4, &s).unwrap();
        assert!(!sampler.fallback);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut out = Vec::new();
        for _ in 0..50 {
            sampler.sample_into(&mut rng, &mut out);
            assert!(out.iter().all(|&v| v == 2 || v == 6));
        }
        let all = StartSpec::DistributionOnSet {
            set: (0..8).collect(),
            measure: SetMeasure::UniformOnBoundary,
        };
        assert!(StartSampler::new(&g, 1, &all).unwrap().fallback);
    }

    #[test]
    fn stationary_sampling_is_degree_biased() {
        let g = build_family(&FamilySpec::Path { n: 3 }).unwrap();
        let sampler = StartSampler::new(&g, 1, &StartSpec::StationaryProduct).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut out = Vec::new();
        let trials = 100_000;
        let mut middle = 0;
        for _ in 0..trials {
            sampler.sample_into(&mut rng, &mut out);
            middle += (out[0] == 1) as usize;
        }
        assert!((middle as f64 / trials as f64 - 0.5).abs() < 0.01);
    }
}
