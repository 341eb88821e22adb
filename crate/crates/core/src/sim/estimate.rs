use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Fraction of truncated trials above which an estimate is flagged.
pub const UNRELIABLE_TRUNCATION_FRACTION: f64 = 0.01;

pub const DEFAULT_TRIALS: usize = 400;

/// Result of one trial: the stopping time, or the horizon if it was not
/// reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Stopped(u64),
    Truncated(u64),
}

impl Outcome {
    pub fn value(self) -> u64 {
        match self {
            Outcome::Stopped(t) | Outcome::Truncated(t) => t,
        }
    }

    pub fn is_truncated(self) -> bool {
        matches!(self, Outcome::Truncated(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithCI {
    /// Sample mean; truncated trials contribute the horizon.
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`.
    pub std_error: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub truncated: usize,
    pub unreliable: bool,
}

impl EstimateWithCI {
    pub fn from_outcomes(outcomes: &[Outcome], master_seed: u64) -> Result<Self> {
        let trials = outcomes.len();
        if trials < 2 {
            return invalid("need at least two trials");
        }
        let values: Vec<f64> = outcomes.iter().map(|o| o.value() as f64).collect();
        let mean = values.iter().sum::<f64>() / trials as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        let truncated = outcomes.iter().filter(|o| o.is_truncated()).count();
        Ok(Self {
            mean,
            std_error: (var / trials as f64).sqrt(),
            trials,
            master_seed,
            truncated,
            unreliable: truncated as f64 > UNRELIABLE_TRUNCATION_FRACTION * trials as f64,
        })
    }

    /// `|mean - value| <= sigmas * std_error`, treating `other_error` as an
    /// independent error on `value`.
    pub fn agrees_with(&self, value: f64, other_error: f64, sigmas: f64) -> bool {
        let combined = (self.std_error.powi(2) + other_error.powi(2)).sqrt();
        (self.mean - value).abs() <= sigmas * combined
    }
}

/// Number of trials and RNG seed shared by every Monte-Carlo estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialPlan {
    pub trials: usize,
    /// Step cap per trial; `None` uses the estimator's default.
    pub horizon: Option<u64>,
    pub master_seed: u64,
}

impl TrialPlan {
    pub fn new(trials: usize, master_seed: u64) -> Self {
        Self {
            trials,
            horizon: None,
            master_seed,
        }
    }

    pub fn with_horizon(mut self, horizon: u64) -> Self {
        self.horizon = Some(horizon);
        self
    }

    /// Same plan under an independent seed derived from `tag`.
    pub fn derived(&self, tag: u64) -> Self {
        Self {
            master_seed: derive_seed(self.master_seed, tag),
            ..*self
        }
    }
}

/// Cover-time step cap: `64 n^3 / k`.
pub fn default_horizon(n: usize, k: usize) -> u64 {
    let n = n as u64;
    (64 * n.saturating_mul(n).saturating_mul(n) / k.max(1) as u64).max(1)
}

/// RNG for one trial: ChaCha8 keyed by the master seed, stream = trial index.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// Mixes a tag into a seed (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed
        ^ tag
            .wrapping_add(0x9E37_79B9_7F4A_7C15)
            .wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs `trial` once per index in parallel; results come back in index order,
/// so any downstream reduction is independent of the thread count.
pub fn run_trials<T, F>(trials: usize, master_seed: u64, trial: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    (0..trials as u64)
        .into_par_iter()
        .map(|i| trial(&mut trial_rng(master_seed, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn summary_statistics() {
        let o = [Outcome::Stopped(1), Outcome::Stopped(3), Outcome::Truncated(5)];
        let e = EstimateWithCI::from_outcomes(&o, 9).unwrap();
        assert_eq!(e.mean, 3.0);
        assert!((e.std_error - (4.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(e.truncated, 1);
        assert!(e.unreliable);
        assert!(EstimateWithCI::from_outcomes(&o[..1], 0).is_err());
    }

    #[test]
    fn trials_are_independent_of_pool_size() {
        let draw = |r: &mut ChaCha8Rng| r.random::<u64>();
        let a = run_trials(64, 5, draw);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| run_trials(64, 5, draw));
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
        assert_eq!(derive_seed(3, 4), derive_seed(3, 4));
    }
}
