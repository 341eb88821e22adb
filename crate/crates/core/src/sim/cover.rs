use rand::Rng;
use serde::{Deserialize, Serialize};

use super::estimate::{default_horizon, run_trials, EstimateWithCI, Outcome, TrialPlan};
use super::kernel::WalkKernel;
use super::start::{SetMeasure, StartSampler, StartSpec};
use crate::chain::Laziness;
use crate::error::{invalid, Result};
use crate::graph::WeightedGraph;

/// Steps the walks until every vertex flagged in `target` has been visited.
/// Starting positions count as visited at time 0.
pub fn sample_cover_of<R: Rng + ?Sized>(
    kernel: &WalkKernel,
    positions: &mut [usize],
    target: &[bool],
    horizon: u64,
    rng: &mut R,
) -> Outcome {
    let mut remaining = target.iter().filter(|&&b| b).count();
    let mut seen = vec![false; target.len()];
    let visit = |v: usize, seen: &mut [bool], remaining: &mut usize| {
        if target[v] && !seen[v] {
            seen[v] = true;
            *remaining -= 1;
        }
    };
    for &v in positions.iter() {
        visit(v, &mut seen, &mut remaining);
    }
    let mut t = 0;
    while remaining > 0 {
        if t == horizon {
            return Outcome::Truncated(horizon);
        }
        t += 1;
        for p in positions.iter_mut() {
            *p = kernel.step(*p, rng);
            visit(*p, &mut seen, &mut remaining);
        }
    }
    Outcome::Stopped(t)
}

/// Steps the walks until any of them is in `target`.
pub fn sample_hit_of<R: Rng + ?Sized>(
    kernel: &WalkKernel,
    positions: &mut [usize],
    target: &[bool],
    horizon: u64,
    rng: &mut R,
) -> Outcome {
    if positions.iter().any(|&v| target[v]) {
        return Outcome::Stopped(0);
    }
    for t in 1..=horizon {
        let mut hit = false;
        for p in positions.iter_mut() {
            *p = kernel.step(*p, rng);
            hit |= target[*p];
        }
        if hit {
            return Outcome::Stopped(t);
        }
    }
    Outcome::Truncated(horizon)
}

/// One sample of the `k`-walk cover time of the whole graph.
pub fn sample_cover_time<R: Rng + ?Sized>(
    kernel: &WalkKernel,
    start: &StartSampler,
    horizon: u64,
    rng: &mut R,
) -> Result<Outcome> {
    if horizon == 0 {
        return invalid("horizon must be at least 1");
    }
    let mut positions = Vec::with_capacity(start.walks());
    start.sample_into(rng, &mut positions);
    let target = vec![true; kernel.vertex_count()];
    Ok(sample_cover_of(kernel, &mut positions, &target, horizon, rng))
}

fn mask(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    if set.is_empty() {
        return invalid("target set must be nonempty");
    }
    let mut m = vec![false; n];
    for &v in set {
        if v >= n {
            return invalid(format!("vertex {v} out of range for n={n}"));
        }
        m[v] = true;
    }
    Ok(m)
}

/// Expected cover time of `k` walks from `start`.
pub fn estimate_cover_time(
    graph: &WeightedGraph,
    k: usize,
    start: &StartSpec,
    laziness: Laziness,
    plan: &TrialPlan,
) -> Result<EstimateWithCI> {
    let kernel = WalkKernel::new(graph, laziness);
    let sampler = StartSampler::new(graph, k, start)?;
    let horizon = plan.horizon.unwrap_or_else(|| default_horizon(graph.vertex_count(), k));
    let target = vec![true; graph.vertex_count()];
    estimate_with(plan, |rng| {
        let mut pos = Vec::with_capacity(k);
        sampler.sample_into(rng, &mut pos);
        sample_cover_of(&kernel, &mut pos, &target, horizon, rng)
    })
}

fn estimate_with<F>(plan: &TrialPlan, trial: F) -> Result<EstimateWithCI>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Outcome + Sync,
{
    if plan.trials < 2 {
        return invalid("need at least two trials");
    }
    let outcomes = run_trials(plan.trials, plan.master_seed, trial);
    EstimateWithCI::from_outcomes(&outcomes, plan.master_seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleSourceWorstCase {
    /// Start vertex with the largest estimated cover time.
    pub vertex: usize,
    pub estimate: EstimateWithCI,
    pub per_vertex: Vec<(usize, EstimateWithCI)>,
}

/// Largest cover-time estimate over starts with all `k` walks at one of the
/// `representatives`. This is a lower proxy for the true worst case over all
/// start tuples.
pub fn single_source_worst_case(
    graph: &WeightedGraph,
    k: usize,
    representatives: &[usize],
    laziness: Laziness,
    plan: &TrialPlan,
) -> Result<SingleSourceWorstCase> {
    if representatives.is_empty() {
        return invalid("no start representatives");
    }
    let mut per_vertex = Vec::with_capacity(representatives.len());
    for &v in representatives {
        let est = estimate_cover_time(
            graph,
            k,
            &StartSpec::AllAtVertex { vertex: v },
            laziness,
            &plan.derived(v as u64),
        )?;
        per_vertex.push((v, est));
    }
    let (vertex, estimate) =
        per_vertex.iter().copied().fold(
            per_vertex[0],
            |best, cur| if cur.1.mean > best.1.mean { cur } else { best },
        );
    Ok(SingleSourceWorstCase {
        vertex,
        estimate,
        per_vertex,
    })
}

/// Like [`single_source_worst_case`], but each start is first screened with
/// `pilot_trials` trials and only the worst one is re-estimated with the full
/// plan. `per_vertex` holds the screening estimates. Re-estimating removes
/// the upward bias of taking the maximum of noisy means.
pub fn screened_worst_case(
    graph: &WeightedGraph,
    k: usize,
    representatives: &[usize],
    laziness: Laziness,
    plan: &TrialPlan,
    pilot_trials: usize,
) -> Result<SingleSourceWorstCase> {
    if representatives.len() == 1 {
        return single_source_worst_case(graph, k, representatives, laziness, plan);
    }
    let pilot = TrialPlan {
        trials: pilot_trials,
        ..plan.derived(u64::MAX)
    };
    let screen = single_source_worst_case(graph, k, representatives, laziness, &pilot)?;
    let estimate = estimate_cover_time(
        graph,
        k,
        &StartSpec::AllAtVertex { vertex: screen.vertex },
        laziness,
        &plan.derived(screen.vertex as u64),
    )?;
    Ok(SingleSourceWorstCase { estimate, ..screen })
}

/// Expected first time any of the `k` walks is in `set`.
pub fn estimate_set_hitting(
    graph: &WeightedGraph,
    k: usize,
    start: &StartSpec,
    set: &[usize],
    laziness: Laziness,
    plan: &TrialPlan,
) -> Result<EstimateWithCI> {
    let kernel = WalkKernel::new(graph, laziness);
    let sampler = StartSampler::new(graph, k, start)?;
    let target = mask(graph.vertex_count(), set)?;
    let horizon = plan.horizon.unwrap_or_else(|| default_horizon(graph.vertex_count(), k));
    estimate_with(plan, |rng| {
        let mut pos = Vec::with_capacity(k);
        sampler.sample_into(rng, &mut pos);
        sample_hit_of(&kernel, &mut pos, &target, horizon, rng)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetCoverEstimate {
    pub estimate: EstimateWithCI,
    /// The set had no boundary, so starts were drawn uniformly from the set.
    pub boundary_fallback: bool,
}

/// Expected time for `k` walks started i.i.d. from `measure` on `set` to
/// visit every vertex of `set`. Walks may leave the set.
pub fn estimate_set_cover(
    graph: &WeightedGraph,
    k: usize,
    set: &[usize],
    measure: SetMeasure,
    laziness: Laziness,
    plan: &TrialPlan,
) -> Result<SetCoverEstimate> {
    let kernel = WalkKernel::new(graph, laziness);
    let spec = StartSpec::DistributionOnSet {
        set: set.to_vec(),
        measure,
    };
    let sampler = StartSampler::new(graph, k, &spec)?;
    let target = mask(graph.vertex_count(), set)?;
    let horizon = plan.horizon.unwrap_or_else(|| default_horizon(graph.vertex_count(), k));
    let estimate = estimate_with(plan, |rng| {
        let mut pos = Vec::with_capacity(k);
        sampler.sample_into(rng, &mut pos);
        sample_cover_of(&kernel, &mut pos, &target, horizon, rng)
    })?;
    Ok(SetCoverEstimate {
        estimate,
        boundary_fallback: sampler.fallback,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};
    use crate::sim::trial_rng;

    fn g(spec: FamilySpec) -> WeightedGraph {
        build_family(&spec).unwrap()
    }

    #[test]
    fn k2_small_cases() {
        let k2 = g(FamilySpec::Clique { n: 2 });
        let kern = WalkKernel::new(&k2, Laziness::NonLazy);
        let both = StartSampler::new(&k2, 2, &StartSpec::ExplicitTuple { vertices: vec![0, 1] }).unwrap();
        let mut rng = trial_rng(0, 0);
        assert_eq!(
            sample_cover_time(&kern, &both, 10, &mut rng).unwrap(),
            Outcome::Stopped(0)
        );
        let one = StartSampler::new(&k2, 1, &StartSpec::AllAtVertex { vertex: 0 }).unwrap();
        assert_eq!(
            sample_cover_time(&kern, &one, 10, &mut rng).unwrap(),
            Outcome::Stopped(1)
        );
        assert!(sample_cover_time(&kern, &one, 0, &mut rng).is_err());
    }

    #[test]
    fn truncation_is_reported() {
        let c = g(FamilySpec::Cycle { n: 50 });
        let plan = TrialPlan::new(20, 1).with_horizon(10);
        let e = estimate_cover_time(&c, 1, &StartSpec::AllAtVertex { vertex: 0 }, Laziness::Lazy, &plan).unwrap();
        assert_eq!(e.truncated, 20);
        assert!(e.unreliable);
        assert_eq!(e.mean, 10.0);
    }

    #[test]
    fn k2_lazy_mean_is_two() {
        let k2 = g(FamilySpec::Clique { n: 2 });
        let plan = TrialPlan::new(4000, 2);
        let e = estimate_cover_time(&k2, 1, &StartSpec::AllAtVertex { vertex: 0 }, Laziness::Lazy, &plan).unwrap();
        assert!(e.agrees_with(2.0, 0.0, 4.0), "{e:?}");
    }

    #[test]
    fn cycle4_antipodal_hit_is_eight() {
        let c = g(FamilySpec::Cycle { n: 4 });
        let plan = TrialPlan::new(4000, 3);
        let e = estimate_set_hitting(
            &c,
            1,
            &StartSpec::AllAtVertex { vertex: 0 },
            &[2],
            Laziness::Lazy,
            &plan,
        )
        .unwrap();
        assert!(e.agrees_with(8.0, 0.0, 4.0), "{e:?}");
        let z = estimate_set_hitting(
            &c,
            1,
            &StartSpec::AllAtVertex { vertex: 2 },
            &[2],
            Laziness::Lazy,
            &plan,
        )
        .unwrap();
        assert_eq!(z.mean, 0.0);
    }

    #[test]
    fn set_cover_of_start_vertex_is_zero() {
        let c = g(FamilySpec::Cycle { n: 6 });
        let plan = TrialPlan::new(10, 0);
        let e = estimate_set_cover(&c, 3, &[4], SetMeasure::PointMass { vertex: 4 }, Laziness::Lazy, &plan).unwrap();
        assert_eq!(e.estimate.mean, 0.0);
        assert!(!e.boundary_fallback);
    }

    #[test]
    fn worst_case_picks_the_maximum() {
        let p = g(FamilySpec::Path { n: 9 });
        let plan = TrialPlan::new(200, 4);
        let w = single_source_worst_case(&p, 1, &[0, 4], Laziness::Lazy, &plan).unwrap();
        // from the middle both ends must be reached
        assert_eq!(w.vertex, 4);
        assert_eq!(w.per_vertex.len(), 2);
    }

    #[test]
    fn screening_reuses_the_full_plan_seed() {
        let p = g(FamilySpec::Path { n: 9 });
        let plan = TrialPlan::new(200, 4);
        let full = single_source_worst_case(&p, 1, &[0, 4], Laziness::Lazy, &plan).unwrap();
        let screened = screened_worst_case(&p, 1, &[0, 4], Laziness::Lazy, &plan, 50).unwrap();
        assert_eq!(screened.vertex, 4);
        assert_eq!(screened.estimate, full.estimate);
        assert_eq!(screened.per_vertex[0].1.trials, 50);
    }

    #[test]
    fn estimates_are_deterministic() {
        let c = g(FamilySpec::Cycle { n: 16 });
        let plan = TrialPlan::new(50, 77);
        let run = || estimate_cover_time(&c, 2, &StartSpec::StationaryProduct, Laziness::Lazy, &plan).unwrap();
        let a = run();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(run);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
