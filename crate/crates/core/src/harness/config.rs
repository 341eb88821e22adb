//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "families": ["cycle:64", "torus:2:16"],
//!   "k_grid": [1, 4],
//!   "k_tilde_grid": [1, 2],
//!   "laziness": "lazy",
//!   "trials": 100,
//!   "horizon": "default",
//!   "master_seed": 7,
//!   "suites": ["stationary", "partial_mixing"],
//!   "output": "out",
//!   "slope_windows": [{"family": "cycle", "quantity": "stationary_cover", "window": {"min": -2.3, "max": -1.6}}]
//! }
//! ```
//!
//! Families use the command-line shorthand of [`FamilySpec`]. `horizon` is
//! `"default"` (`64 n^3 / k`) or `{"steps": N}`. Every field except
//! `families`, `k_grid` and `master_seed` has a default.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::slope::SlopeWindow;
use crate::bounds::BoundConstants;
use crate::chain::Laziness;
use crate::error::{invalid, Error, Result};
use crate::graph::FamilySpec;
use crate::sim::DEFAULT_TRIALS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Stationary cover-time upper and lower bounds.
    Stationary,
    /// Min-max characterization of the worst-case cover time.
    Characterization,
    /// Partial mixing and large-hit sandwiches.
    PartialMixing,
    /// Conductance and family-specific partial mixing bounds.
    Geometric,
    /// Log-log slope fits and closed-form scaling references.
    Scaling,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Stationary,
        Suite::Characterization,
        Suite::PartialMixing,
        Suite::Geometric,
        Suite::Scaling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Stationary => "stationary",
            Suite::Characterization => "characterization",
            Suite::PartialMixing => "partial_mixing",
            Suite::Geometric => "geometric",
            Suite::Scaling => "scaling",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum HorizonPolicy {
    /// `64 n^3 / k` steps.
    #[default]
    Default,
    Steps(u64),
}

impl HorizonPolicy {
    pub fn steps(self) -> Option<u64> {
        match self {
            HorizonPolicy::Default => None,
            HorizonPolicy::Steps(s) => Some(s),
        }
    }
}

/// Which estimated quantity a slope fit is taken over, against `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeQuantity {
    StationaryCover,
    WorstCaseCover,
}

impl SlopeQuantity {
    pub fn name(self) -> &'static str {
        match self {
            SlopeQuantity::StationaryCover => "stationary_cover",
            SlopeQuantity::WorstCaseCover => "worst_case_cover",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeWindowEntry {
    /// Family tag, e.g. `cycle`.
    pub family: String,
    pub quantity: SlopeQuantity,
    pub window: SlopeWindow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(serialize_with = "families_out", deserialize_with = "families_in")]
    pub families: Vec<FamilySpec>,
    pub k_grid: Vec<u64>,
    #[serde(default = "default_k_tilde_grid")]
    pub k_tilde_grid: Vec<u64>,
    #[serde(default)]
    pub laziness: Laziness,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub horizon: HorizonPolicy,
    pub master_seed: u64,
    #[serde(default = "default_suites")]
    pub suites: Vec<Suite>,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default)]
    pub slope_windows: Vec<SlopeWindowEntry>,
    #[serde(default)]
    pub constants: BoundConstants,
    /// Trials per start vertex when screening single-source starts; the
    /// full trial count is then spent on the worst one only. `None` runs
    /// every start at full count.
    #[serde(default)]
    pub pilot_trials: Option<usize>,
    /// Largest time examined by exact threshold searches.
    #[serde(default = "default_time_cap")]
    pub time_cap: u64,
}

fn default_k_tilde_grid() -> Vec<u64> {
    vec![1, 2, 4, 8, 16, 32]
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

fn default_suites() -> Vec<Suite> {
    Suite::ALL.to_vec()
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

fn default_time_cap() -> u64 {
    1 << 26
}

fn families_out<S: Serializer>(families: &[FamilySpec], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(families.iter().map(|f| f.to_string()))
}

fn families_in<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<FamilySpec>, D::Error> {
    let raw = Vec::<String>::deserialize(d)?;
    raw.iter()
        .map(|s| s.parse().map_err(serde::de::Error::custom))
        .collect()
}

impl ExperimentConfig {
    /// Minimal config: the given families and `k` grid, everything else default.
    pub fn new(families: Vec<FamilySpec>, k_grid: Vec<u64>, master_seed: u64) -> Self {
        Self {
            families,
            k_grid,
            k_tilde_grid: default_k_tilde_grid(),
            laziness: Laziness::Lazy,
            trials: DEFAULT_TRIALS,
            horizon: HorizonPolicy::Default,
            master_seed,
            suites: default_suites(),
            output: default_output(),
            slope_windows: Vec::new(),
            constants: BoundConstants::default(),
            pilot_trials: None,
            time_cap: default_time_cap(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.families.is_empty() {
            return invalid("config: families must be nonempty");
        }
        if self.k_grid.is_empty() || self.k_tilde_grid.is_empty() {
            return invalid("config: k and k_tilde grids must be nonempty");
        }
        if self.k_grid.contains(&0) || self.k_tilde_grid.contains(&0) {
            return invalid("config: grid entries must be at least 1");
        }
        if self.trials < 2 || self.pilot_trials.is_some_and(|p| p < 2) {
            return invalid("config: need at least two trials");
        }
        if self.horizon == HorizonPolicy::Steps(0) || self.time_cap == 0 {
            return invalid("config: horizon and time cap must be positive");
        }
        for w in &self.slope_windows {
            if let (Some(lo), Some(hi)) = (w.window.min, w.window.max) {
                if lo > hi {
                    return invalid(format!("config: empty slope window for {}", w.family));
                }
            }
        }
        Ok(())
    }

    pub fn runs(&self, suite: Suite) -> bool {
        self.suites.contains(&suite)
    }

    pub fn slope_window(&self, family: &str, quantity: SlopeQuantity) -> Option<SlopeWindow> {
        self.slope_windows
            .iter()
            .find(|w| w.family == family && w.quantity == quantity)
            .map(|w| w.window)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "families": ["cycle:64", "torus:2:8", "random_regular:4:32:9"],
        "k_grid": [1, 4],
        "trials": 100,
        "horizon": {"steps": 5000},
        "master_seed": 7,
        "suites": ["stationary"],
        "slope_windows": [{"family": "cycle", "quantity": "stationary_cover", "window": {"min": -2.3, "max": -1.6}}],
        "pilot_trials": 20
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = ExperimentConfig::from_json(SAMPLE).unwrap();
        assert_eq!(cfg.families[1], FamilySpec::Torus { d: 2, side: 8 });
        assert_eq!(cfg.horizon.steps(), Some(5000));
        assert_eq!(cfg.k_tilde_grid, default_k_tilde_grid());
        let text = cfg.to_json();
        let again = ExperimentConfig::from_json(&text).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(text, again.to_json());
        assert_eq!(
            cfg.slope_window("cycle", SlopeQuantity::StationaryCover),
            Some(SlopeWindow::between(-2.3, -1.6))
        );
    }

    #[test]
    fn seed_is_mandatory() {
        let err = ExperimentConfig::from_json(r#"{"families": ["cycle:8"], "k_grid": [1]}"#).unwrap_err();
        assert!(err.to_string().contains("master_seed"));
    }

    #[test]
    fn rejects_empty_grids_and_unknown_fields() {
        assert!(ExperimentConfig::from_json(r#"{"families": ["cycle:8"], "k_grid": [], "master_seed": 1}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"families": [], "k_grid": [1], "master_seed": 1}"#).is_err());
        assert!(ExperimentConfig::from_json(
            r#"{"families": ["cycle:8"], "k_grid": [1], "master_seed": 1, "typo": 2}"#
        )
        .is_err());
        assert!(ExperimentConfig::from_json(r#"{"families": ["blob:8"], "k_grid": [1], "master_seed": 1}"#).is_err());
    }

    #[test]
    fn default_horizon_serializes_as_a_word() {
        let cfg = ExperimentConfig::new(vec![FamilySpec::Cycle { n: 8 }], vec![1], 0);
        assert!(cfg.to_json().contains("\"horizon\": \"default\""));
    }
}
