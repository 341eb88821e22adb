use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::estimate::{derive_seed, run_trials};
use super::kernel::WalkKernel;
use super::start::{StartSampler, StartSpec};
use crate::chain::Laziness;
use crate::error::{invalid, Result};
use crate::graph::{build_reset_graph, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResetEquivalence {
    /// Two-sample chi-square statistic over vertex occupancies at time `T`.
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    /// Final-position counts of the walk on the reset graph (steps through
    /// the reset vertex contracted).
    pub reset_graph_counts: Vec<u64>,
    /// Final-position counts of the walk with geometric restarts.
    pub restart_counts: Vec<u64>,
}

/// Compares, at time `steps`, the non-lazy walk on the reset graph with
/// each visit to the reset vertex contracted into a single step, against a
/// non-lazy walk on the base graph that restarts from the stationary
/// distribution after `Geo(x)` steps (support `{1, 2, ...}`). Both start at
/// vertex 0.
pub fn reset_walk_equivalence(
    base: &WeightedGraph,
    x: f64,
    steps: u64,
    trials: usize,
    seed: u64,
) -> Result<ResetEquivalence> {
    let reset = build_reset_graph(base, x)?;
    if trials < 2 {
        return invalid("need at least two trials");
    }
    let n = base.vertex_count();
    let z = reset.reset_vertex();
    let hat = WalkKernel::new(reset.graph(), Laziness::NonLazy);
    let plain = WalkKernel::new(base, Laziness::NonLazy);
    let pi = StartSampler::new(base, 1, &StartSpec::StationaryProduct)?;

    let a = run_trials(trials, derive_seed(seed, 1), |rng| {
        let mut v = 0;
        for _ in 0..steps {
            v = hat.step(v, rng);
            if v == z {
                v = hat.step(v, rng);
            }
        }
        v
    });
    let geo = rand_distr::Geometric::new(x).map_err(|e| crate::Error::InvalidParameter(e.to_string()))?;
    let b = run_trials(trials, derive_seed(seed, 2), |rng| {
        let mut v = 0;
        let mut buf = Vec::with_capacity(1);
        // rand_distr's geometric counts failures; shift to support {1, 2, ...}
        let mut until_reset = rng.sample(geo) + 1;
        for _ in 0..steps {
            until_reset -= 1;
            if until_reset == 0 {
                pi.sample_into(rng, &mut buf);
                v = buf[0];
                until_reset = rng.sample(geo) + 1;
            } else {
                v = plain.move_from(v, rng);
            }
        }
        v
    });
    let count = |samples: &[usize]| {
        let mut c = vec![0u64; n];
        for &v in samples {
            c[v] += 1;
        }
        c
    };
    let (ca, cb) = (count(&a), count(&b));
    let (statistic, degrees_of_freedom) = two_sample_chi_square(&ca, &cb);
    let p_value = if degrees_of_freedom == 0 {
        1.0
    } else {
        let dist =
            ChiSquared::new(degrees_of_freedom as f64).map_err(|e| crate::Error::InvalidParameter(e.to_string()))?;
        1.0 - dist.cdf(statistic)
    };
    Ok(ResetEquivalence {
        statistic,
        degrees_of_freedom,
        p_value,
        reset_graph_counts: ca,
        restart_counts: cb,
    })
}

/// Chi-square homogeneity statistic for two count vectors over the same
/// bins; bins empty in both samples are dropped.
pub fn two_sample_chi_square(a: &[u64], b: &[u64]) -> (f64, usize) {
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let total = (na + nb) as f64;
    let mut stat = 0.0;
    let mut bins = 0;
    for (&x, &y) in a.iter().zip(b) {
        let row = (x + y) as f64;
        if row == 0.0 {
            continue;
        }
        bins += 1;
        let ea = row * na as f64 / total;
        let eb = row * nb as f64 / total;
        stat += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    (stat, bins.max(1) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    #[test]
    fn chi_square_identical_counts() {
        let (s, df) = two_sample_chi_square(&[10, 20, 0], &[10, 20, 0]);
        assert_eq!(s, 0.0);
        assert_eq!(df, 1);
    }

    #[test]
    fn k2_half_rate_is_equivalent() {
        let g = build_family(&FamilySpec::Clique { n: 2 }).unwrap();
        let r = reset_walk_equivalence(&g, 0.5, 10, 20_000, 5).unwrap();
        assert!(r.p_value > 0.001, "{r:?}");
        assert_eq!(r.reset_graph_counts.iter().sum::<u64>(), 20_000);
    }

    #[test]
    fn detects_a_wrong_process() {
        // no resets at all on a periodic chain is far from the reset walk
        let g = build_family(&FamilySpec::Cycle { n: 4 }).unwrap();
        let plain = WalkKernel::new(&g, Laziness::NonLazy);
        let a = run_trials(5000, 1, |rng| (0..10).fold(0, |v, _| plain.step(v, rng)));
        let hat = reset_walk_equivalence(&g, 0.5, 10, 5000, 2).unwrap();
        let mut ca = vec![0u64; 4];
        for v in a {
            ca[v] += 1;
        }
        let (s, df) = two_sample_chi_square(&ca, &hat.reset_graph_counts);
        let p = 1.0 - ChiSquared::new(df as f64).unwrap().cdf(s);
        assert!(p < 1e-6);
    }

    #[test]
    fn rejects_bad_rate() {
        let g = build_family(&FamilySpec::Clique { n: 2 }).unwrap();
        assert!(reset_walk_equivalence(&g, 1.0, 10, 10, 0).is_err());
    }
}
