use serde::{Deserialize, Serialize};

use super::report::Quantity;
use crate::chain::{
    conductance, large_hit_times, relaxation_time, return_sums, stationary_hitting_times, transition_matrix,
    ConductanceMode, CrossingSearch, Laziness, SetSelection, TransitionMatrix, DENSE_GUARD,
    EXHAUSTIVE_CONDUCTANCE_GUARD, EXHAUSTIVE_HIT_GUARD,
};
use crate::error::Result;
use crate::graph::{canonical_hard_sets, FamilySpec, WeightedGraph};
use crate::Provenance;

/// Per-`(k_tilde, k)` mixing quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialEntry {
    pub k_tilde: u64,
    pub k: u64,
    /// Partial mixing time.
    pub partial_mixing: Option<Quantity>,
    /// Large-hit time.
    pub large_hit: Option<Quantity>,
    /// `t_mix(1 - k_tilde/k)` in total variation.
    pub mixing_at_threshold: Option<Quantity>,
}

/// Worst ratios of return sums against the two return-growth hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReturnProfile {
    /// `max_{v, t <= t_rel} sum_{i<=t} P^i(v,v) / (1 + t pi(v))`
    pub constant_return_ratio: f64,
    /// `max_{v, 2 <= t <= n ln^2 n} sum_{i<=t} P^i(v,v) / (t/n + ln t)`
    pub subharmonic_return_ratio: f64,
}

/// Graph-level inputs to the bound evaluators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphQuantities {
    pub family: String,
    pub n: usize,
    pub m: f64,
    pub d_min: usize,
    pub pi_max: f64,
    pub pi_min: f64,
    pub regular: bool,
    pub t_rel: Option<Quantity>,
    /// `t_mix(1/4)`.
    pub t_mix: Option<Quantity>,
    /// `max_v E_pi[tau_v]`.
    pub max_stationary_hitting: Option<Quantity>,
    pub conductance: Option<Quantity>,
    pub partial: Vec<PartialEntry>,
    /// `(k_tilde, stationary cover time of k_tilde walks)`.
    pub stationary_cover: Vec<(u64, Quantity)>,
    pub returns: Option<ReturnProfile>,
}

impl GraphQuantities {
    /// Structural quantities only; everything else left empty.
    pub fn structural(graph: &WeightedGraph, family: &str) -> Self {
        let pi = crate::graph::stationary_distribution(graph);
        Self {
            family: family.to_string(),
            n: graph.vertex_count(),
            m: graph.total_edge_weight(),
            d_min: graph.min_degree(),
            pi_max: pi.iter().copied().fold(0.0, f64::max),
            pi_min: pi.iter().copied().fold(1.0, f64::min),
            regular: graph.min_degree() == graph.max_degree() && graph.is_unit_weight(),
            t_rel: None,
            t_mix: None,
            max_stationary_hitting: None,
            conductance: None,
            partial: Vec::new(),
            stationary_cover: Vec::new(),
            returns: None,
        }
    }

    pub fn partial_entry(&self, k_tilde: u64, k: u64) -> Option<&PartialEntry> {
        self.partial.iter().find(|e| e.k_tilde == k_tilde && e.k == k)
    }

    pub fn stationary_cover_of(&self, k_tilde: u64) -> Option<Quantity> {
        self.stationary_cover
            .iter()
            .find(|(kt, _)| *kt == k_tilde)
            .map(|(_, q)| *q)
    }
}

/// Options for [`exact_quantities`].
#[derive(Debug, Clone)]
pub struct ExactOptions {
    pub laziness: Laziness,
    /// `(k_tilde, k)` pairs for the partial tables.
    pub pairs: Vec<(u64, u64)>,
    /// Largest time examined by crossing searches.
    pub time_cap: u64,
    /// Vertices at which return sums are evaluated; all vertices if empty.
    pub return_vertices: Vec<usize>,
    pub with_returns: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            laziness: Laziness::Lazy,
            pairs: Vec::new(),
            time_cap: 1 << 26,
            return_vertices: Vec::new(),
            with_returns: false,
        }
    }
}

/// Computes every dense-matrix quantity that fits within the guards.
/// Quantities beyond a guard are left as `None`.
pub fn exact_quantities(
    graph: &WeightedGraph,
    spec: Option<&FamilySpec>,
    opts: &ExactOptions,
) -> Result<GraphQuantities> {
    let family = spec.map(|s| s.to_string()).unwrap_or_else(|| "custom".into());
    let mut q = GraphQuantities::structural(graph, &family);
    if graph.vertex_count() > DENSE_GUARD || graph.vertex_count() < 2 {
        return Ok(q);
    }
    let p = transition_matrix(graph, opts.laziness)?;
    let spectral = relaxation_time(&p).ok();
    q.t_rel = spectral.map(|s| Quantity::exact(s.t_rel));
    let mut search = CrossingSearch::new(&p, opts.time_cap);
    q.t_mix = search.mixing_time(0.25).map(|t| Quantity::exact(t as f64));
    q.max_stationary_hitting = stationary_hitting_times(&p)
        .ok()
        .map(|h| Quantity::exact(h.into_iter().fold(0.0, f64::max)));
    q.conductance = graph_conductance(&p, graph, spec);

    let catalog = spec.map(|s| canonical_hard_sets(graph, s));
    let selection = if p.size() <= EXHAUSTIVE_HIT_GUARD {
        Some(SetSelection::Exhaustive)
    } else {
        catalog
            .as_ref()
            .filter(|c| !c.sets.is_empty())
            .map(SetSelection::Catalog)
    };
    let hits = match &selection {
        Some(sel) if !opts.pairs.is_empty() => Some(large_hit_times(&p, &opts.pairs, sel, opts.time_cap)?),
        _ => None,
    };
    for (i, &(k_tilde, k)) in opts.pairs.iter().enumerate() {
        let partial = search
            .partial_mixing_time(k_tilde, k)?
            .map(|t| Quantity::exact(t as f64));
        let eps = 1.0 - k_tilde as f64 / k as f64;
        let at_threshold = search.mixing_time(eps).map(|t| Quantity::exact(t as f64));
        let large_hit = hits
            .as_ref()
            .and_then(|h| h[i].time.map(|t| Quantity::with_provenance(t as f64, h[i].provenance)));
        q.partial.push(PartialEntry {
            k_tilde,
            k,
            partial_mixing: partial,
            large_hit,
            mixing_at_threshold: at_threshold,
        });
    }
    if opts.with_returns {
        let t_rel = q.t_rel.map(|t| t.value).unwrap_or(1.0);
        let vertices: Vec<usize> = if opts.return_vertices.is_empty() {
            (0..p.size()).collect()
        } else {
            opts.return_vertices.clone()
        };
        q.returns = Some(return_profile(&p, &vertices, t_rel));
    }
    Ok(q)
}

fn graph_conductance(p: &TransitionMatrix, graph: &WeightedGraph, spec: Option<&FamilySpec>) -> Option<Quantity> {
    if p.size() <= EXHAUSTIVE_CONDUCTANCE_GUARD {
        return conductance(p, ConductanceMode::Exhaustive).ok().map(Quantity::exact);
    }
    // half of a catalog set's complement is a natural bottleneck candidate;
    // the minimum over candidates only bounds the true conductance from above
    let spec = spec?;
    let catalog = canonical_hard_sets(graph, spec);
    let mut best: Option<f64> = None;
    for set in &catalog.sets {
        let inside: std::collections::BTreeSet<usize> = set.vertices.iter().copied().collect();
        let complement: Vec<usize> = (0..p.size()).filter(|v| !inside.contains(v)).collect();
        for candidate in [&set.vertices, &complement] {
            if let Ok(phi) = conductance(p, ConductanceMode::OfSet(candidate)) {
                best = Some(best.map_or(phi, |b: f64| b.min(phi)));
            }
        }
    }
    best.map(|b| Quantity::with_provenance(b, Provenance::CatalogUpperBoundOnMin))
}

pub fn return_profile(p: &TransitionMatrix, vertices: &[usize], t_rel: f64) -> ReturnProfile {
    let n = p.size() as f64;
    let ln_n = n.ln();
    let horizon = (n * ln_n * ln_n).ceil().max(2.0) as u64;
    let rel = t_rel.floor().max(1.0) as u64;
    let mut constant = 0.0f64;
    let mut subharmonic = 0.0f64;
    for &v in vertices {
        let sums = return_sums(p, v, horizon.max(rel));
        let pv = p.stationary()[v];
        for (t, &s) in sums.iter().enumerate().take(rel as usize + 1) {
            constant = constant.max(s / (1.0 + t as f64 * pv));
        }
        for (t, &s) in sums.iter().enumerate().take(horizon as usize + 1).skip(2) {
            subharmonic = subharmonic.max(s / (t as f64 / n + (t as f64).ln()));
        }
    }
    ReturnProfile {
        constant_return_ratio: constant,
        subharmonic_return_ratio: subharmonic,
    }
}
