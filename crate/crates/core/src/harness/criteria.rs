//! The acceptance criteria, shared by `multiwalk verify` and the
//! `acceptance` test target. Each criterion runs at its stated tolerance and
//! returns a pass flag with a one-line summary and per-case details.

use serde::{Deserialize, Serialize};

use super::slope::{fit_loglog_slope, SlopeWindow};
use crate::bounds::{
    eval_char_upper, eval_displacement, eval_partial_mixing_bounds, eval_stationary_lower, exact_quantities,
    BoundConstants, ExactOptions, GraphQuantities, PartialEntry, Quantity,
};
use crate::chain::{distance_profile, transition_matrix, CrossingSearch, Laziness};
use crate::error::{invalid, Result};
use crate::fmt_sig;
use crate::graph::{build_family, small::connected_graphs_up_to, FamilySpec, WeightedGraph};
use crate::oracle::{exact_multiwalk_cover_expectation, stationary_cover_tail, visit_stats};
use crate::sim::{
    derive_seed, estimate_cover_time, max_displacement_tail, reset_walk_equivalence, screened_worst_case,
    EstimateWithCI, StartSpec, TrialPlan,
};

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "oracle equivalence on small graphs"),
    (2, "exact inequality suite on graphs up to 8 vertices"),
    (3, "cycle stationary cover scaling"),
    (4, "cycle worst-case speed-up"),
    (5, "general stationary lower bound"),
    (6, "min-max worst-case upper bound"),
    (7, "hypercube and expander stationary law"),
    (8, "binary tree regime crossover"),
    (9, "reset graph coupling"),
    (10, "displacement tail bound"),
    (11, "barbell stationary versus worst-case contrast"),
];

/// Tunable inputs of the criteria. Tolerances stated by the criteria are
/// fixed in code; slope windows live here so they can be changed from a
/// config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AcceptanceSettings {
    pub master_seed: u64,
    pub trials: usize,
    /// Screening trials per start vertex for single-source worst cases.
    pub pilot_trials: usize,
    /// Seed of the random regular and preferential attachment graphs.
    pub graph_seed: u64,
    pub cycle_stationary_slope: SlopeWindow,
    pub tree_small_k_slope: SlopeWindow,
    pub tree_large_k_slope: SlopeWindow,
    pub reset_trials: usize,
    /// Comparison time for the reset coupling.
    pub reset_steps: u64,
    pub displacement_trials: usize,
}

impl Default for AcceptanceSettings {
    fn default() -> Self {
        Self {
            master_seed: 1,
            trials: 400,
            pilot_trials: 40,
            graph_seed: 1,
            cycle_stationary_slope: SlopeWindow::between(-2.3, -1.6),
            tree_small_k_slope: SlopeWindow {
                min: None,
                max: Some(-0.8),
            },
            tree_large_k_slope: SlopeWindow {
                min: Some(-0.7),
                max: None,
            },
            reset_trials: 100_000,
            reset_steps: 50,
            displacement_trials: 100_000,
        }
    }
}

impl AcceptanceSettings {
    fn plan(&self, criterion: u8, tag: u64) -> TrialPlan {
        TrialPlan::new(
            self.trials,
            derive_seed(derive_seed(self.master_seed, criterion as u64), tag),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub summary: String,
    pub details: Vec<String>,
}

impl CriterionOutcome {
    fn new(id: u8, pass: bool, summary: String, details: Vec<String>) -> Self {
        let name = CRITERIA[id as usize - 1].1.to_string();
        Self {
            id,
            name,
            pass,
            summary,
            details,
        }
    }

    /// `criterion N (name): PASS|FAIL summary`
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {} {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.summary
        )
    }
}

pub fn run_criterion(id: u8, s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    match id {
        1 => oracle_equivalence(s),
        2 => exact_inequalities(),
        3 => cycle_stationary(s),
        4 => cycle_worst_case(s),
        5 => general_lower(s),
        6 => min_max_upper(s),
        7 => hypercube_expander(s),
        8 => tree_crossover(s),
        9 => reset_coupling(s),
        10 => displacement(s),
        11 => barbell_contrast(s),
        _ => invalid(format!("no criterion {id}; valid ids are 1..=11")),
    }
}

fn graph(spec: &FamilySpec) -> Result<WeightedGraph> {
    build_family(spec)
}

fn stationary(g: &WeightedGraph, k: u64, plan: &TrialPlan) -> Result<EstimateWithCI> {
    estimate_cover_time(g, k as usize, &StartSpec::StationaryProduct, Laziness::Lazy, plan)
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::MIN, f64::max);
    let min = values.iter().copied().fold(f64::MAX, f64::min);
    max / min
}

fn oracle_equivalence(s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    let graphs = connected_graphs_up_to(2, 5)?;
    let mut details = Vec::new();
    let (mut cases, mut failures, mut worst_z) = (0usize, 0usize, 0.0f64);
    for (gi, g) in graphs.iter().enumerate() {
        for laziness in [Laziness::Lazy, Laziness::NonLazy] {
            for k in [1usize, 2] {
                for start in [StartSpec::AllAtVertex { vertex: 0 }, StartSpec::StationaryProduct] {
                    let exact = exact_multiwalk_cover_expectation(g, k, &start, laziness)?;
                    let plan = s.plan(1, cases as u64);
                    let est = estimate_cover_time(g, k, &start, laziness, &plan)?;
                    cases += 1;
                    let z = if est.std_error > 0.0 {
                        (est.mean - exact).abs() / est.std_error
                    } else if (est.mean - exact).abs() < 1e-9 {
                        0.0
                    } else {
                        f64::INFINITY
                    };
                    worst_z = worst_z.max(z);
                    if !est.agrees_with(exact, 0.0, 3.0) {
                        failures += 1;
                        details.push(format!(
                            "graph #{gi} (n={}, m={}) {laziness} k={k} {start}: exact {} estimate {} +- {} (z={})",
                            g.vertex_count(),
                            g.edge_count(),
                            fmt_sig(exact),
                            fmt_sig(est.mean),
                            fmt_sig(est.std_error),
                            fmt_sig(z)
                        ));
                    }
                }
            }
        }
    }
    let summary = format!(
        "{failures} of {cases} estimates outside 3 standard errors over {} graphs; largest |z| = {}",
        graphs.len(),
        fmt_sig(worst_z)
    );
    Ok(CriterionOutcome::new(1, failures == 0, summary, details))
}

/// Profile length used for the distance checks on small graphs.
const SMALL_PROFILE_STEPS: u64 = 1024;
/// Times at which the visit-count lemmas are checked.
const VISIT_TIMES: u64 = 64;
const SMALL_K_GRID: [u64; 8] = [2, 3, 4, 5, 8, 16, 32, 64];
const TOL: f64 = 1e-12;

#[derive(Default)]
struct Tally {
    checks: usize,
    violations: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

/// All exact checks on one small graph under the lazy chain.
fn small_graph_checks(gi: usize, g: &WeightedGraph, tally: &mut Tally) -> Result<()> {
    let n = g.vertex_count();
    let p = transition_matrix(g, Laziness::Lazy)?;
    let pi = p.stationary().to_vec();
    let tag = format!("graph #{gi} (n={n}, m={})", g.edge_count());

    let prof = distance_profile(&p, SMALL_PROFILE_STEPS)?;
    let t_max = SMALL_PROFILE_STEPS as usize;
    for t in 0..=t_max {
        let (d, sep) = (prof.tv[t], prof.separation[t]);
        tally.check(d <= sep + TOL, || format!("{tag}: d({t})={d} > s({t})={sep}"));
        if t > 0 {
            tally.check(d <= prof.tv[t - 1] + TOL, || format!("{tag}: d increases at {t}"));
            tally.check(sep <= prof.separation[t - 1] + TOL, || {
                format!("{tag}: s increases at {t}")
            });
        }
        for l in [2usize, 3] {
            if t >= 1 && l * t <= t_max {
                let lhs = prof.tv[l * t];
                let rhs = (2.0 * d).powi(l as i32);
                tally.check(lhs <= rhs + TOL, || {
                    format!("{tag}: d({})={lhs} > (2 d({t}))^{l}={rhs}", l * t)
                });
            }
        }
    }

    let pairs: Vec<(u64, u64)> = SMALL_K_GRID
        .iter()
        .flat_map(|&k| (1..k).map(move |kt| (kt, k)))
        .collect();
    let opts = ExactOptions {
        pairs: pairs.clone(),
        ..ExactOptions::default()
    };
    let q = exact_quantities(g, None, &opts)?;
    let mut search = CrossingSearch::new(&p, 1 << 20);
    let constants = BoundConstants::default();
    for &(kt, k) in &pairs {
        // the squaring search and the step-by-step profile must agree
        let from_profile = prof.partial_mixing_time(kt, k)?;
        let from_search = search.partial_mixing_time(kt, k)?;
        tally.check(from_profile.is_none() || from_profile == from_search, || {
            format!("{tag}: partial mixing ({kt},{k}) profile {from_profile:?} vs search {from_search:?}")
        });
        for r in eval_partial_mixing_bounds(&q, kt, k, &constants) {
            if r.advisory {
                continue;
            }
            tally.check(r.pass == Some(true), || {
                format!(
                    "{tag}: {} ({kt},{k}) lhs {:?} rhs {:?} {}",
                    r.bound_id, r.lhs, r.rhs, r.note
                )
            });
        }
    }

    for k in [1u32, 2, 3, 4, 8] {
        let tail = stationary_cover_tail(&p, k, VISIT_TIMES)?;
        for t in 1..=VISIT_TIMES {
            let mut rhs = 0.0;
            for v in 0..n {
                rhs += (-(k as f64) * visit_stats(&p, v, t)?.at_least_once).exp();
            }
            let lhs = tail[t as usize - 1];
            tally.check(lhs <= rhs + TOL, || {
                format!("{tag}: k={k} t={t} tail {lhs} > union bound {rhs}")
            });
        }
    }
    for (v, &pv) in pi.iter().enumerate() {
        for t in 1..=VISIT_TIMES {
            let st = visit_stats(&p, v, t)?;
            let mean = t as f64 * pv;
            let identity = st.at_least_once * st.conditional_mean;
            tally.check((identity - mean).abs() <= 1e-9, || {
                format!("{tag}: v={v} t={t} P(X>=1) E[X|X>=1] = {identity} != t pi(v) = {mean}")
            });
            let lower = mean / st.return_sum;
            tally.check(st.at_least_once >= lower - TOL, || {
                format!("{tag}: v={v} t={t} P(X>=1)={} below {lower}", st.at_least_once)
            });
        }
    }
    Ok(())
}

fn exact_inequalities() -> Result<CriterionOutcome> {
    let graphs = connected_graphs_up_to(2, 8)?;
    let mut tally = Tally::default();
    for (gi, g) in graphs.iter().enumerate() {
        small_graph_checks(gi, g, &mut tally)?;
    }
    let summary = format!(
        "{} violations in {} exact checks over {} graphs",
        tally.violations.len(),
        tally.checks,
        graphs.len()
    );
    let pass = tally.violations.is_empty();
    tally.violations.truncate(50);
    Ok(CriterionOutcome::new(2, pass, summary, tally.violations))
}

fn cycle_stationary(s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    let n = 1024usize;
    let g = graph(&FamilySpec::Cycle { n })?;
    let mut details = Vec::new();
    let mut ratios = Vec::new();
    let mut points = Vec::new();
    for k in [8u64, 16, 32, 64] {
        let est = stationary(&g, k, &s.plan(3, k))?;
        let kf = k as f64;
        let ratio = est.mean * kf * kf / ((n * n) as f64 * kf.ln().powi(2));
        details.push(format!(
            "k={k}: cover {} +- {}, normalized {}",
            fmt_sig(est.mean),
            fmt_sig(est.std_error),
            fmt_sig(ratio)
        ));
        ratios.push(ratio);
        points.push((kf, est.mean));
    }
    let fit = fit_loglog_slope(&points)?;
    // the ln^2 k factor flattens the raw slope; report the corrected one too
    let corrected: Vec<(f64, f64)> = points.iter().map(|&(k, t)| (k, t / k.ln().powi(2))).collect();
    details.push(format!(
        "slope of cover / ln^2 k: {}",
        fmt_sig(fit_loglog_slope(&corrected)?.slope)
    ));
    let sp = spread(&ratios);
    let slope_ok = s.cycle_stationary_slope.contains(fit.slope);
    let summary = format!(
        "normalized ratio spread {} (limit 3); slope {} (window {})",
        fmt_sig(sp),
        fmt_sig(fit.slope),
        s.cycle_stationary_slope
    );
    Ok(CriterionOutcome::new(3, sp <= 3.0 && slope_ok, summary, details))
}

fn cycle_worst_case(s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    let g = graph(&FamilySpec::Cycle { n: 512 })?;
    let start = StartSpec::AllAtVertex { vertex: 0 };
    let four = estimate_cover_time(&g, 4, &start, Laziness::Lazy, &s.plan(4, 4))?;
    let many = estimate_cover_time(&g, 64, &start, Laziness::Lazy, &s.plan(4, 64))?;
    let ratio = four.mean / many.mean;
    let target = 64f64.ln() / 4f64.ln();
    let (lo, hi) = (0.6 * target, 1.4 * target);
    let details = vec![
        format!("k=4: {} +- {}", fmt_sig(four.mean), fmt_sig(four.std_error)),
        format!("k=64: {} +- {}", fmt_sig(many.mean), fmt_sig(many.std_error)),
    ];
    let summary = format!("t(4)/t(64) = {} in [{}, {}]", fmt_sig(ratio), fmt_sig(lo), fmt_sig(hi));
    Ok(CriterionOutcome::new(4, (lo..=hi).contains(&ratio), summary, details))
}

fn families_near_1024(seed: u64) -> Vec<FamilySpec> {
    vec![
        FamilySpec::BinaryTree { height: 9 },
        FamilySpec::Cycle { n: 1024 },
        FamilySpec::Torus { d: 2, side: 32 },
        FamilySpec::Torus { d: 3, side: 10 },
        FamilySpec::Hypercube { d: 10 },
        FamilySpec::RandomRegular {
            n: 1024,
            degree: 4,
            seed,
        },
        FamilySpec::PreferentialAttachment { n: 1024, m: 2, seed },
        FamilySpec::Barbell { n: 1024 },
    ]
}

fn general_lower(s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    let constants = BoundConstants::default();
    let mut details = Vec::new();
    let (mut cases, mut failures) = (0usize, 0usize);
    for (fi, spec) in families_near_1024(s.graph_seed).iter().enumerate() {
        let g = graph(spec)?;
        let q = GraphQuantities::structural(&g, &spec.to_string());
        for k in [1u64, 4, 16, 64] {
            let est = stationary(&g, k, &s.plan(5, (fi as u64) << 32 | k))?;
            let r = eval_stationary_lower(&q, k, Quantity::estimated(est.mean, est.std_error), &constants);
            cases += 1;
            let ok = r.pass == Some(true);
            if !ok {
                failures += 1;
            }
            details.push(format!(
                "{spec} k={k}: cover {} +- {}, bound {} x {} -> {}",
                fmt_sig(est.mean),
                fmt_sig(est.std_error),
                fmt_sig(constants.general_lower),
                r.rhs.map(fmt_sig).unwrap_or_else(|| r.note.clone()),
                if ok { "ok" } else { "FAIL" }
            ));
        }
    }
    let summary = format!("{failures} failures in {cases} checks");
    Ok(CriterionOutcome::new(5, failures == 0, summary, details))
}

fn min_max_upper(s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    let specs = [
        FamilySpec::Cycle { n: 256 },
        FamilySpec::BinaryTree { height: 8 },
        FamilySpec::Hypercube { d: 8 },
        FamilySpec::Torus { d: 2, side: 16 },
    ];
    let ks = [4u64, 16, 64];
    let mut details = Vec::new();
    let (mut cases, mut failures) = (0usize, 0usize);
    for (fi, spec) in specs.iter().enumerate() {
        let g = graph(spec)?;
        let p = transition_matrix(&g, Laziness::Lazy)?;
        let mut q = GraphQuantities::structural(&g, &spec.to_string());
        let mut search = CrossingSearch::new(&p, 1 << 26);
        for &k in &ks {
            for kt in (0..).map(|e| 1u64 << e).take_while(|&kt| kt < k) {
                q.partial.push(PartialEntry {
                    k_tilde: kt,
                    k,
                    partial_mixing: search.partial_mixing_time(kt, k)?.map(|t| Quantity::exact(t as f64)),
                    large_hit: None,
                    mixing_at_threshold: None,
                });
            }
        }
        for kt in [1u64, 2, 4, 8, 16, 32] {
            let est = stationary(&g, kt, &s.plan(6, (fi as u64) << 32 | kt))?;
            q.stationary_cover
                .push((kt, Quantity::estimated(est.mean, est.std_error)));
        }
        for &k in &ks {
            let plan = s.plan(6, (fi as u64) << 32 | 1 << 16 | k);
            let worst = screened_worst_case(
                &g,
                k as usize,
                &spec.start_representatives(),
                Laziness::Lazy,
                &plan,
                s.pilot_trials,
            )?;
            let lhs = Quantity::estimated(worst.estimate.mean, worst.estimate.std_error);
            let r = eval_char_upper(&q, k, lhs);
            cases += 1;
            let ok = r.pass == Some(true);
            if !ok {
                failures += 1;
            }
            details.push(format!(
                "{spec} k={k}: worst case {} +- {} from vertex {}, 16 x {} (k_tilde={}) margin {} -> {}",
                fmt_sig(worst.estimate.mean),
                fmt_sig(worst.estimate.std_error),
                worst.vertex,
                r.rhs.map(fmt_sig).unwrap_or_default(),
                r.k_tilde.map(|x| x.to_string()).unwrap_or_default(),
                r.margin.map(fmt_sig).unwrap_or_default(),
                if ok { "ok" } else { "FAIL" }
            ));
        }
    }
    let summary = format!("{failures} failures in {cases} checks");
    Ok(CriterionOutcome::new(6, failures == 0, summary, details))
}

fn hypercube_expander(s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    let specs = [
        FamilySpec::Hypercube { d: 10 },
        FamilySpec::RandomRegular {
            n: 1024,
            degree: 4,
            seed: s.graph_seed,
        },
    ];
    let mut details = Vec::new();
    let mut pass = true;
    let mut spreads = Vec::new();
    for (fi, spec) in specs.iter().enumerate() {
        let g = graph(spec)?;
        let n = g.vertex_count() as f64;
        let mut ratios = Vec::new();
        for k in [1u64, 4, 16] {
            let est = stationary(&g, k, &s.plan(7, (fi as u64) << 32 | k))?;
            let ratio = est.mean * k as f64 / (n * n.ln());
            details.push(format!(
                "{spec} k={k}: cover {} +- {}, normalized {}",
                fmt_sig(est.mean),
                fmt_sig(est.std_error),
                fmt_sig(ratio)
            ));
            ratios.push(ratio);
        }
        let sp = spread(&ratios);
        pass &= sp <= 2.5;
        spreads.push(format!("{spec} spread {}", fmt_sig(sp)));
    }
    Ok(CriterionOutcome::new(
        7,
        pass,
        format!("{} (limit 2.5)", spreads.join(", ")),
        details,
    ))
}

fn tree_crossover(s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    let spec = FamilySpec::BinaryTree { height: 10 };
    let g = graph(&spec)?;
    let reps = spec.start_representatives();
    let mut details = Vec::new();
    let mut measure = |ks: &[u64]| -> Result<Vec<(f64, f64)>> {
        let mut pts = Vec::new();
        for &k in ks {
            let w = screened_worst_case(&g, k as usize, &reps, Laziness::Lazy, &s.plan(8, k), s.pilot_trials)?;
            details.push(format!(
                "k={k}: worst case {} +- {} from vertex {}",
                fmt_sig(w.estimate.mean),
                fmt_sig(w.estimate.std_error),
                w.vertex
            ));
            pts.push((k as f64, w.estimate.mean));
        }
        Ok(pts)
    };
    let small = fit_loglog_slope(&measure(&[2, 4, 8])?)?;
    let large = fit_loglog_slope(&measure(&[256, 1024, 4096])?)?;
    let pass = s.tree_small_k_slope.contains(small.slope) && s.tree_large_k_slope.contains(large.slope);
    let summary = format!(
        "slope {} on k in {{2,4,8}} (window {}), slope {} on k in {{256,1024,4096}} (window {})",
        fmt_sig(small.slope),
        s.tree_small_k_slope,
        fmt_sig(large.slope),
        s.tree_large_k_slope
    );
    Ok(CriterionOutcome::new(8, pass, summary, details))
}

fn reset_coupling(s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    let specs = [
        FamilySpec::Clique { n: 2 },
        FamilySpec::Cycle { n: 16 },
        FamilySpec::BinaryTree { height: 4 },
    ];
    let mut details = Vec::new();
    let mut min_p = 1.0f64;
    let mut idx = 0u64;
    for spec in &specs {
        let g = graph(spec)?;
        for x in [0.1, 0.5] {
            let seed = derive_seed(derive_seed(s.master_seed, 9), idx);
            idx += 1;
            let r = reset_walk_equivalence(&g, x, s.reset_steps, s.reset_trials, seed)?;
            min_p = min_p.min(r.p_value);
            details.push(format!(
                "{spec} x={x}: chi2 {} on {} dof, p = {}",
                fmt_sig(r.statistic),
                r.degrees_of_freedom,
                fmt_sig(r.p_value)
            ));
        }
    }
    let summary = format!("smallest p-value {} over {idx} tests (threshold 0.01)", fmt_sig(min_p));
    Ok(CriterionOutcome::new(9, min_p > 0.01, summary, details))
}

fn displacement(s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    let spec = FamilySpec::Torus { d: 2, side: 64 };
    let g = graph(&spec)?;
    let mut details = Vec::new();
    let mut pass = true;
    for (i, (dist, t)) in [(8usize, 16u64), (12, 32), (16, 64)].into_iter().enumerate() {
        let seed = derive_seed(derive_seed(s.master_seed, 10), i as u64);
        let freq = max_displacement_tail(&g, 0, dist, t, Laziness::Lazy, s.displacement_trials, seed)?;
        let r = eval_displacement(&spec.to_string(), g.vertex_count(), 2, dist, t, freq);
        let ok = r.pass == Some(true);
        pass &= ok;
        details.push(format!(
            "D={dist} t={t}: frequency {} +- {} vs bound {} -> {}",
            fmt_sig(freq.frequency),
            fmt_sig(freq.std_error),
            r.rhs.map(fmt_sig).unwrap_or_else(|| r.note.clone()),
            if ok { "ok" } else { "FAIL" }
        ));
    }
    let summary = format!(
        "{} of 3 (D, t) pairs within 4 exp(-D^2/8t) + 3 se",
        details.iter().filter(|d| d.ends_with("ok")).count()
    );
    Ok(CriterionOutcome::new(10, pass, summary, details))
}

fn barbell_contrast(s: &AcceptanceSettings) -> Result<CriterionOutcome> {
    let g = graph(&FamilySpec::Barbell { n: 128 })?;
    let k = 8;
    // vertex 0 is in the left clique and not an endpoint of the bridge
    let worst = estimate_cover_time(
        &g,
        k,
        &StartSpec::AllAtVertex { vertex: 0 },
        Laziness::Lazy,
        &s.plan(11, 0),
    )?;
    let stat = stationary(&g, k as u64, &s.plan(11, 1))?;
    let ratio = worst.mean / stat.mean;
    let details = vec![
        format!("single source: {} +- {}", fmt_sig(worst.mean), fmt_sig(worst.std_error)),
        format!("stationary: {} +- {}", fmt_sig(stat.mean), fmt_sig(stat.std_error)),
    ];
    let summary = format!("worst-case / stationary = {} (need >= 20)", fmt_sig(ratio));
    Ok(CriterionOutcome::new(11, ratio >= 20.0, summary, details))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn settings_round_trip() {
        let s = AcceptanceSettings::default();
        let text = serde_json::to_string(&s).unwrap();
        let back: AcceptanceSettings = serde_json::from_str(&text).unwrap();
        assert_eq!(s, back);
        let partial: AcceptanceSettings = serde_json::from_str(r#"{"master_seed": 5}"#).unwrap();
        assert_eq!(partial.trials, 400);
    }

    #[test]
    fn unknown_criterion_is_an_error() {
        assert!(run_criterion(12, &AcceptanceSettings::default()).is_err());
    }

    #[test]
    fn small_graph_checks_pass_on_a_few_graphs() {
        let mut tally = Tally::default();
        for (gi, g) in connected_graphs_up_to(2, 4).unwrap().iter().enumerate() {
            small_graph_checks(gi, g, &mut tally).unwrap();
        }
        assert!(tally.violations.is_empty(), "{:?}", tally.violations);
        assert!(tally.checks > 1000);
    }
}
