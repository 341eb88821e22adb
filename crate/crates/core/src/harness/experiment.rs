use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, SlopeQuantity, Suite};
use super::slope::{fit_loglog_slope, SlopeFit, SlopeWindow};
use crate::bounds::{
    eval_char_lower, eval_char_upper, eval_geometric_bounds, eval_hitting_relaxation, eval_partial_mixing_bounds,
    eval_stationary_lower, eval_stationary_upper, exact_quantities, table1_reference, BoundReport, ExactOptions,
    GraphQuantities, LowerVariant, Quantity, ScalingFamily,
};
use crate::chain::DENSE_GUARD;
use crate::error::Result;
use crate::graph::{build_family, FamilySpec, WeightedGraph};
use crate::sim::{
    derive_seed, estimate_cover_time, screened_worst_case, single_source_worst_case, EstimateWithCI, StartSpec,
    TrialPlan,
};
use crate::{fmt_sig, Provenance};

/// Return sums are evaluated at every vertex only up to this size.
const ALL_VERTEX_RETURNS_LIMIT: usize = 128;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub quantity: String,
    pub family: String,
    pub n: usize,
    pub k: u64,
    pub start: String,
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
    pub truncated: usize,
    pub unreliable: bool,
    pub seed: u64,
    pub provenance: Provenance,
}

impl EstimateRecord {
    fn new(quantity: &str, family: &str, n: usize, k: u64, start: String, e: &EstimateWithCI) -> Self {
        Self {
            quantity: quantity.to_string(),
            family: family.to_string(),
            n,
            k,
            start,
            mean: e.mean,
            std_error: e.std_error,
            trials: e.trials,
            truncated: e.truncated,
            unreliable: e.unreliable,
            seed: e.master_seed,
            provenance: Provenance::Estimated,
        }
    }

    fn quantity_value(&self) -> Quantity {
        Quantity::estimated(self.mean, self.std_error)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactRecord {
    pub quantity: String,
    pub family: String,
    pub n: usize,
    pub k: Option<u64>,
    pub k_tilde: Option<u64>,
    /// `None` when the threshold was not reached within the time cap.
    pub value: Option<f64>,
    /// Master seed of the run; exact values do not depend on it.
    pub seed: u64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    #[serde(flatten)]
    pub report: BoundReport,
    pub seed: u64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeRecord {
    pub quantity: String,
    pub family: String,
    pub n: usize,
    pub k_values: Vec<u64>,
    pub fit: Option<SlopeFit>,
    pub window: Option<SlopeWindow>,
    pub pass: Option<bool>,
    pub note: String,
    pub seed: u64,
    pub provenance: Provenance,
}

/// A measured value next to its closed-form scaling reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRecord {
    pub quantity: String,
    pub family: String,
    pub n: usize,
    pub k: u64,
    pub measured: f64,
    pub reference: f64,
    pub ratio: f64,
    pub regime: String,
    pub seed: u64,
    pub provenance: Provenance,
}

/// A stage refused by a guard or failing for one family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkippedRecord {
    pub family: String,
    pub stage: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub config: ExperimentConfig,
    pub estimates: Vec<EstimateRecord>,
    pub exact: Vec<ExactRecord>,
    pub bounds: Vec<BoundRecord>,
    pub slopes: Vec<SlopeRecord>,
    pub references: Vec<ReferenceRecord>,
    pub skipped: Vec<SkippedRecord>,
}

/// Seed for one record, derived from the master seed and a textual key so
/// that a record is reproduced whenever the same key is run again.
pub fn record_seed(master: u64, key: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in key.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    derive_seed(master, h)
}

fn pairs_for(cfg: &ExperimentConfig) -> Vec<(u64, u64)> {
    let mut set = BTreeSet::new();
    for &k in &cfg.k_grid {
        for &kt in &cfg.k_tilde_grid {
            if kt < k {
                set.insert((kt, k));
                if 4 * kt < k {
                    set.insert((4 * kt, k));
                }
            }
        }
    }
    set.into_iter().collect()
}

fn return_vertices(spec: &FamilySpec, n: usize) -> Option<Vec<usize>> {
    if spec.is_vertex_transitive() {
        Some(vec![0])
    } else if n <= ALL_VERTEX_RETURNS_LIMIT {
        Some((0..n).collect())
    } else if !spec.is_random() {
        Some(spec.start_representatives())
    } else {
        None
    }
}

struct FamilyRun<'a> {
    cfg: &'a ExperimentConfig,
    spec: &'a FamilySpec,
    name: String,
    bundle: &'a mut ReportBundle,
}

impl FamilyRun<'_> {
    fn skip(&mut self, stage: &str, reason: impl Into<String>) {
        self.bundle.skipped.push(SkippedRecord {
            family: self.name.clone(),
            stage: stage.to_string(),
            reason: reason.into(),
        });
    }

    fn plan(&self, key: &str) -> TrialPlan {
        TrialPlan {
            trials: self.cfg.trials,
            horizon: self.cfg.horizon.steps(),
            master_seed: record_seed(self.cfg.master_seed, &format!("{}|{key}", self.name)),
        }
    }

    fn exact(&mut self, graph: &WeightedGraph) -> GraphQuantities {
        let n = graph.vertex_count();
        if n > DENSE_GUARD {
            self.skip(
                "exact",
                format!("dense transition matrix: size {n} exceeds guard {DENSE_GUARD}; exact checks skipped"),
            );
            return GraphQuantities::structural(graph, &self.name);
        }
        let wants_returns = self.cfg.runs(Suite::Stationary);
        let rv = return_vertices(self.spec, n);
        if wants_returns && rv.is_none() {
            self.skip("returns", format!("return sums at all {n} vertices of a random graph"));
        }
        let opts = ExactOptions {
            laziness: self.cfg.laziness,
            pairs: pairs_for(self.cfg),
            time_cap: self.cfg.time_cap,
            with_returns: wants_returns && rv.is_some(),
            return_vertices: rv.unwrap_or_default(),
        };
        match exact_quantities(graph, Some(self.spec), &opts) {
            Ok(q) => {
                self.record_exact(&q);
                q
            }
            Err(e) => {
                self.skip("exact", e.to_string());
                GraphQuantities::structural(graph, &self.name)
            }
        }
    }

    fn record_exact(&mut self, q: &GraphQuantities) {
        let mut push = |quantity: &str, k: Option<u64>, k_tilde: Option<u64>, v: Option<Quantity>| {
            self.bundle.exact.push(ExactRecord {
                quantity: quantity.to_string(),
                family: self.name.clone(),
                n: q.n,
                k,
                k_tilde,
                value: v.map(|x| x.value),
                seed: self.cfg.master_seed,
                provenance: v.map_or(Provenance::Exact, |x| x.provenance),
            });
        };
        push("t_rel", None, None, q.t_rel);
        push("t_mix", None, None, q.t_mix);
        push("max_stationary_hitting", None, None, q.max_stationary_hitting);
        push("conductance", None, None, q.conductance);
        for e in &q.partial {
            push("partial_mixing", Some(e.k), Some(e.k_tilde), e.partial_mixing);
            push("large_hit", Some(e.k), Some(e.k_tilde), e.large_hit);
            push("mixing_at_threshold", Some(e.k), Some(e.k_tilde), e.mixing_at_threshold);
        }
    }

    fn estimate_stationary(&mut self, graph: &WeightedGraph, k: u64) -> Option<EstimateRecord> {
        let plan = self.plan(&format!("stationary_cover|{k}"));
        match estimate_cover_time(
            graph,
            k as usize,
            &StartSpec::StationaryProduct,
            self.cfg.laziness,
            &plan,
        ) {
            Ok(e) => {
                let rec = EstimateRecord::new(
                    "stationary_cover",
                    &self.name,
                    graph.vertex_count(),
                    k,
                    "stationary".into(),
                    &e,
                );
                self.bundle.estimates.push(rec.clone());
                Some(rec)
            }
            Err(err) => {
                self.skip(&format!("stationary_cover k={k}"), err.to_string());
                None
            }
        }
    }

    fn estimate_worst(&mut self, graph: &WeightedGraph, k: u64) -> Option<EstimateRecord> {
        let plan = self.plan(&format!("worst_case_cover|{k}"));
        let reps = self.spec.start_representatives();
        let result = match self.cfg.pilot_trials {
            Some(p) => screened_worst_case(graph, k as usize, &reps, self.cfg.laziness, &plan, p),
            None => single_source_worst_case(graph, k as usize, &reps, self.cfg.laziness, &plan),
        };
        match result {
            Ok(w) => {
                let rec = EstimateRecord::new(
                    "worst_case_cover",
                    &self.name,
                    graph.vertex_count(),
                    k,
                    format!("vertex:{}", w.vertex),
                    &w.estimate,
                );
                self.bundle.estimates.push(rec.clone());
                Some(rec)
            }
            Err(err) => {
                self.skip(&format!("worst_case_cover k={k}"), err.to_string());
                None
            }
        }
    }

    fn push_bound(&mut self, report: BoundReport, lhs: Provenance) {
        let provenance = if report.note.contains("catalog-derived") {
            Provenance::CatalogUpperBoundOnMin
        } else {
            lhs
        };
        self.bundle.bounds.push(BoundRecord {
            report,
            seed: self.cfg.master_seed,
            provenance,
        });
    }

    fn slope(&mut self, quantity: SlopeQuantity, n: usize, records: &[EstimateRecord]) {
        let points: Vec<(f64, f64)> = records.iter().map(|r| (r.k as f64, r.mean)).collect();
        let window = self.cfg.slope_window(self.spec.tag(), quantity);
        let (fit, note) = match fit_loglog_slope(&points) {
            Ok(f) => (Some(f), String::new()),
            Err(e) => (None, e.to_string()),
        };
        let pass = match (fit, window) {
            (Some(f), Some(w)) => Some(w.contains(f.slope)),
            _ => None,
        };
        self.bundle.slopes.push(SlopeRecord {
            quantity: quantity.name().to_string(),
            family: self.name.clone(),
            n,
            k_values: records.iter().map(|r| r.k).collect(),
            fit,
            window,
            pass,
            note,
            seed: self.cfg.master_seed,
            provenance: Provenance::Estimated,
        });
    }

    fn run(&mut self) {
        let graph = match build_family(self.spec) {
            Ok(g) => g,
            Err(e) => return self.skip("generate", e.to_string()),
        };
        let n = graph.vertex_count();
        let cfg = self.cfg;
        let mut q = self.exact(&graph);

        let mut counts: BTreeSet<u64> = cfg.k_grid.iter().copied().collect();
        if cfg.runs(Suite::Characterization) {
            counts.extend(cfg.k_tilde_grid.iter().copied());
        }
        let mut stationary = Vec::new();
        for k in counts {
            if let Some(rec) = self.estimate_stationary(&graph, k) {
                q.stationary_cover.push((k, rec.quantity_value()));
                if cfg.k_grid.contains(&k) {
                    stationary.push(rec);
                }
            }
        }
        let mut worst = Vec::new();
        if cfg.runs(Suite::Characterization) || cfg.runs(Suite::Scaling) {
            for &k in &cfg.k_grid {
                if let Some(rec) = self.estimate_worst(&graph, k) {
                    worst.push(rec);
                }
            }
        }

        if cfg.runs(Suite::Stationary) {
            self.push_bound(eval_hitting_relaxation(&q), Provenance::Exact);
            for rec in &stationary {
                for r in eval_stationary_upper(&q, rec.k, rec.quantity_value(), &cfg.constants) {
                    self.push_bound(r, Provenance::Estimated);
                }
                let r = eval_stationary_lower(&q, rec.k, rec.quantity_value(), &cfg.constants);
                self.push_bound(r, Provenance::Estimated);
            }
        }
        if cfg.runs(Suite::Characterization) {
            for rec in &worst {
                self.push_bound(eval_char_upper(&q, rec.k, rec.quantity_value()), Provenance::Estimated);
                for variant in [LowerVariant::Hit, LowerVariant::Regular] {
                    let r = eval_char_lower(&q, rec.k, rec.quantity_value(), variant, &[], &cfg.constants);
                    self.push_bound(r, Provenance::Estimated);
                }
            }
        }
        let grid_pairs: Vec<(u64, u64)> = pairs_for(cfg)
            .into_iter()
            .filter(|(kt, _)| cfg.k_tilde_grid.contains(kt))
            .collect();
        if cfg.runs(Suite::PartialMixing) {
            for &(kt, k) in &grid_pairs {
                for r in eval_partial_mixing_bounds(&q, kt, k, &cfg.constants) {
                    self.push_bound(r, Provenance::Exact);
                }
            }
        }
        if cfg.runs(Suite::Geometric) {
            for &(kt, k) in &grid_pairs {
                for r in eval_geometric_bounds(&q, kt, k, self.spec, &cfg.constants) {
                    self.push_bound(r, Provenance::Exact);
                }
            }
        }
        if cfg.runs(Suite::Scaling) {
            self.slope(SlopeQuantity::StationaryCover, n, &stationary);
            self.slope(SlopeQuantity::WorstCaseCover, n, &worst);
            match ScalingFamily::of(self.spec) {
                Ok(family) => {
                    for (rec, pick_worst) in stationary
                        .iter()
                        .map(|r| (r, false))
                        .chain(worst.iter().map(|r| (r, true)))
                    {
                        match table1_reference(family, n, rec.k) {
                            Ok(reference) => {
                                let (value, regime) = if pick_worst {
                                    (reference.worst_case, reference.worst_case_regime)
                                } else {
                                    (reference.stationary, reference.stationary_regime)
                                };
                                self.bundle.references.push(ReferenceRecord {
                                    quantity: rec.quantity.clone(),
                                    family: self.name.clone(),
                                    n,
                                    k: rec.k,
                                    measured: rec.mean,
                                    reference: value,
                                    ratio: rec.mean / value,
                                    regime: regime.to_string(),
                                    seed: rec.seed,
                                    provenance: Provenance::ClosedForm,
                                });
                            }
                            Err(e) => self.skip(&format!("reference k={}", rec.k), e.to_string()),
                        }
                    }
                }
                Err(e) => self.skip("reference", e.to_string()),
            }
        }
    }
}

/// Runs every configured family through generation, exact analysis,
/// Monte-Carlo estimation and the selected bound suites. Stages refused by a
/// guard are recorded as skipped; the bundle is always produced.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ReportBundle> {
    cfg.validate()?;
    let mut bundle = ReportBundle {
        config: cfg.clone(),
        estimates: Vec::new(),
        exact: Vec::new(),
        bounds: Vec::new(),
        slopes: Vec::new(),
        references: Vec::new(),
        skipped: Vec::new(),
    };
    for spec in &cfg.families {
        FamilyRun {
            cfg,
            spec,
            name: spec.to_string(),
            bundle: &mut bundle,
        }
        .run();
    }
    bundle.sort();
    Ok(bundle)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt_num<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn opt_f(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

pub const ESTIMATE_CSV_HEADER: &str =
    "quantity,family,n,k,start,mean,std_error,trials,truncated,unreliable,seed,provenance";
pub const EXACT_CSV_HEADER: &str = "quantity,family,n,k,k_tilde,value,seed,provenance";
pub const BOUND_CSV_HEADER: &str =
    "bound_id,family,n,k,k_tilde,rhs,lhs,constant,pass,margin,advisory,seed,provenance,note";
pub const SLOPE_CSV_HEADER: &str =
    "quantity,family,n,k_values,slope,intercept,residual,window,pass,seed,provenance,note";
pub const REFERENCE_CSV_HEADER: &str = "quantity,family,n,k,measured,reference,ratio,regime,seed,provenance";
pub const SKIPPED_CSV_HEADER: &str = "family,stage,reason";

impl ReportBundle {
    /// Orders every table by its key columns so output never depends on
    /// evaluation order.
    pub fn sort(&mut self) {
        self.estimates
            .sort_by(|a, b| (&a.family, &a.quantity, a.k, &a.start).cmp(&(&b.family, &b.quantity, b.k, &b.start)));
        self.exact
            .sort_by(|a, b| (&a.family, &a.quantity, a.k, a.k_tilde).cmp(&(&b.family, &b.quantity, b.k, b.k_tilde)));
        self.bounds.sort_by(|a, b| {
            let (x, y) = (&a.report, &b.report);
            (&x.family, &x.bound_id, x.k, x.k_tilde).cmp(&(&y.family, &y.bound_id, y.k, y.k_tilde))
        });
        self.slopes
            .sort_by(|a, b| (&a.family, &a.quantity).cmp(&(&b.family, &b.quantity)));
        self.references
            .sort_by(|a, b| (&a.family, &a.quantity, a.k).cmp(&(&b.family, &b.quantity, b.k)));
        self.skipped.sort();
    }

    /// Non-advisory bound failures plus slope fits outside their window.
    pub fn hard_failures(&self) -> usize {
        self.bounds.iter().filter(|b| b.report.is_hard_failure()).count()
            + self.slopes.iter().filter(|s| s.pass == Some(false)).count()
    }

    /// Concatenates bundles into one, dropping exact duplicates. The config
    /// of the first bundle is kept.
    pub fn merge(bundles: Vec<ReportBundle>) -> Option<ReportBundle> {
        let mut iter = bundles.into_iter();
        let mut out = iter.next()?;
        for b in iter {
            out.estimates.extend(b.estimates);
            out.exact.extend(b.exact);
            out.bounds.extend(b.bounds);
            out.slopes.extend(b.slopes);
            out.references.extend(b.references);
            out.skipped.extend(b.skipped);
        }
        out.sort();
        out.estimates.dedup();
        out.exact.dedup();
        out.bounds.dedup();
        out.slopes.dedup();
        out.references.dedup();
        out.skipped.dedup();
        Some(out)
    }

    pub fn estimates_csv(&self) -> String {
        let mut out = format!("{ESTIMATE_CSV_HEADER}\n");
        for r in &self.estimates {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.quantity,
                csv_field(&r.family),
                r.n,
                r.k,
                csv_field(&r.start),
                fmt_sig(r.mean),
                fmt_sig(r.std_error),
                r.trials,
                r.truncated,
                r.unreliable,
                r.seed,
                r.provenance
            ));
        }
        out
    }

    pub fn exact_csv(&self) -> String {
        let mut out = format!("{EXACT_CSV_HEADER}\n");
        for r in &self.exact {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.quantity,
                csv_field(&r.family),
                r.n,
                opt_num(r.k),
                opt_num(r.k_tilde),
                opt_f(r.value),
                r.seed,
                r.provenance
            ));
        }
        out
    }

    pub fn bounds_csv(&self) -> String {
        let mut out = format!("{BOUND_CSV_HEADER}\n");
        for b in &self.bounds {
            let r = &b.report;
            let pass = match r.pass {
                Some(true) => "pass",
                Some(false) if r.advisory => "advisory_fail",
                Some(false) => "fail",
                None => "skipped",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.bound_id,
                csv_field(&r.family),
                r.n,
                r.k,
                opt_num(r.k_tilde),
                opt_f(r.rhs),
                opt_f(r.lhs),
                fmt_sig(r.constant),
                pass,
                opt_f(r.margin),
                r.advisory,
                b.seed,
                b.provenance,
                csv_field(&r.note)
            ));
        }
        out
    }

    pub fn slopes_csv(&self) -> String {
        let mut out = format!("{SLOPE_CSV_HEADER}\n");
        for s in &self.slopes {
            let ks: Vec<String> = s.k_values.iter().map(|k| k.to_string()).collect();
            let pass = match s.pass {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                s.quantity,
                csv_field(&s.family),
                s.n,
                ks.join(";"),
                opt_f(s.fit.map(|f| f.slope)),
                opt_f(s.fit.map(|f| f.intercept)),
                opt_f(s.fit.map(|f| f.residual)),
                csv_field(&s.window.map(|w| w.to_string()).unwrap_or_default()),
                pass,
                s.seed,
                s.provenance,
                csv_field(&s.note)
            ));
        }
        out
    }

    pub fn references_csv(&self) -> String {
        let mut out = format!("{REFERENCE_CSV_HEADER}\n");
        for r in &self.references {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.quantity,
                csv_field(&r.family),
                r.n,
                r.k,
                fmt_sig(r.measured),
                fmt_sig(r.reference),
                fmt_sig(r.ratio),
                csv_field(&r.regime),
                r.seed,
                r.provenance
            ));
        }
        out
    }

    pub fn skipped_csv(&self) -> String {
        let mut out = format!("{SKIPPED_CSV_HEADER}\n");
        for s in &self.skipped {
            out.push_str(&format!(
                "{},{},{}\n",
                csv_field(&s.family),
                csv_field(&s.stage),
                csv_field(&s.reason)
            ));
        }
        out
    }

    /// Two-column `k mean` data per (family, quantity), for gnuplot.
    pub fn plot_files(&self) -> Vec<(String, String)> {
        let mut files: Vec<(String, String)> = Vec::new();
        for r in &self.estimates {
            let name = format!("{}_{}.dat", r.family.replace(':', "_"), r.quantity);
            let line = format!("{} {}\n", r.k, fmt_sig(r.mean));
            match files.iter_mut().find(|(f, _)| *f == name) {
                Some((_, body)) => body.push_str(&line),
                None => files.push((name, format!("# k mean ({} on {})\n{line}", r.quantity, r.family))),
            }
        }
        files
    }

    /// Writes the CSV tables, the JSON bundle and the plot data into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let tables = [
            ("estimates.csv", self.estimates_csv()),
            ("exact.csv", self.exact_csv()),
            ("bounds.csv", self.bounds_csv()),
            ("slopes.csv", self.slopes_csv()),
            ("references.csv", self.references_csv()),
            ("skipped.csv", self.skipped_csv()),
            ("bundle.json", serde_json::to_string_pretty(self)?),
        ];
        for (name, body) in tables {
            std::fs::write(dir.join(name), body)?;
        }
        let plots = dir.join("plots");
        std::fs::create_dir_all(&plots)?;
        for (name, body) in self.plot_files() {
            std::fs::write(plots.join(name), body)?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(vec![FamilySpec::Cycle { n: 16 }], vec![1, 4], 11);
        cfg.trials = 40;
        cfg.k_tilde_grid = vec![1, 2];
        cfg
    }

    #[test]
    fn bundle_has_estimates_and_stationary_reports() {
        let b = run_experiment(&small_config()).unwrap();
        let stationary = b.estimates.iter().filter(|e| e.quantity == "stationary_cover").count();
        assert_eq!(stationary, 3); // k = 1, 2, 4
        assert!(b.bounds.iter().any(|r| r.report.bound_id == "stationary_lower_general"));
        assert!(b.exact.iter().any(|r| r.quantity == "t_mix"));
        assert!(b.skipped.is_empty(), "{:?}", b.skipped);
    }

    #[test]
    fn csv_is_deterministic_and_keyed() {
        let a = run_experiment(&small_config()).unwrap();
        let b = run_experiment(&small_config()).unwrap();
        assert_eq!(a.estimates_csv(), b.estimates_csv());
        assert_eq!(a.bounds_csv(), b.bounds_csv());
        // a single suite reproduces the same estimate rows
        let mut only = small_config();
        only.suites = vec![Suite::Characterization];
        let c = run_experiment(&only).unwrap();
        for row in c.estimates.iter().filter(|e| e.quantity == "stationary_cover") {
            assert!(a.estimates.contains(row));
        }
    }

    #[test]
    fn guard_refusal_is_recorded_not_fatal() {
        let mut cfg = ExperimentConfig::new(vec![FamilySpec::Cycle { n: DENSE_GUARD + 4 }], vec![64], 3);
        cfg.trials = 2;
        cfg.suites = vec![Suite::Stationary];
        let b = run_experiment(&cfg).unwrap();
        assert!(b
            .skipped
            .iter()
            .any(|s| s.stage == "exact" && s.reason.contains("guard")));
        assert_eq!(b.estimates.len(), 1);
    }

    #[test]
    fn merge_drops_duplicates() {
        let a = run_experiment(&small_config()).unwrap();
        let merged = ReportBundle::merge(vec![a.clone(), a.clone()]).unwrap();
        assert_eq!(merged.estimates, a.estimates);
        assert_eq!(merged.bounds_csv(), a.bounds_csv());
    }

    #[test]
    fn record_seeds_depend_on_key() {
        assert_ne!(record_seed(1, "a"), record_seed(1, "b"));
        assert_eq!(record_seed(1, "a"), record_seed(1, "a"));
    }
}
