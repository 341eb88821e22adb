//! Reference scaling values for the `k`-walk cover times of standard graph
//! families, evaluated with natural logarithms and no constants.
//!
//! Logarithms of ratios that can fall below `e` are clamped to at least 1 so
//! that both sides of every regime split agree at the threshold.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::FamilySpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingFamily {
    BinaryTree,
    Cycle,
    Torus2,
    /// Torus of dimension at least 3.
    TorusHigh(usize),
    Hypercube,
    Expander,
    PreferentialAttachment,
    Barbell,
}

impl ScalingFamily {
    pub fn of(spec: &FamilySpec) -> Result<Self> {
        Ok(match spec {
            FamilySpec::BinaryTree { .. } => Self::BinaryTree,
            FamilySpec::Cycle { .. } => Self::Cycle,
            FamilySpec::Torus { d: 1, .. } => Self::Cycle,
            FamilySpec::Torus { d: 2, .. } => Self::Torus2,
            FamilySpec::Torus { d, .. } => Self::TorusHigh(*d),
            FamilySpec::Hypercube { .. } => Self::Hypercube,
            FamilySpec::RandomRegular { .. } => Self::Expander,
            FamilySpec::PreferentialAttachment { .. } => Self::PreferentialAttachment,
            FamilySpec::Barbell { .. } => Self::Barbell,
            other => return Err(Error::Unsupported(format!("no scaling reference for {other}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReference {
    pub family: ScalingFamily,
    pub n: usize,
    pub k: u64,
    pub worst_case: f64,
    pub stationary: f64,
    pub worst_case_regime: &'static str,
    pub stationary_regime: &'static str,
}

fn lg(x: f64) -> f64 {
    x.ln().max(1.0)
}

/// Single-walk cover time scaling.
pub fn single_walk_cover(family: ScalingFamily, n: usize) -> f64 {
    let nf = n as f64;
    let l = nf.ln();
    match family {
        ScalingFamily::BinaryTree | ScalingFamily::Torus2 => nf * l * l,
        ScalingFamily::Cycle | ScalingFamily::Barbell => nf * nf,
        ScalingFamily::TorusHigh(_)
        | ScalingFamily::Hypercube
        | ScalingFamily::Expander
        | ScalingFamily::PreferentialAttachment => nf * l,
    }
}

/// Reference worst-case and stationary cover times for `k` walks.
pub fn table1_reference(family: ScalingFamily, n: usize, k: u64) -> Result<ScalingReference> {
    if k == 0 || n < 2 {
        return Err(Error::InvalidParameter("need k >= 1 and n >= 2".into()));
    }
    let nf = n as f64;
    let kf = k as f64;
    let l = nf.ln();
    let reference = |worst, stationary, wr, sr| ScalingReference {
        family,
        n,
        k,
        worst_case: worst,
        stationary,
        worst_case_regime: wr,
        stationary_regime: sr,
    };
    if k == 1 {
        let c = single_walk_cover(family, n);
        return Ok(reference(c, c, "single walk", "single walk"));
    }
    let tree_stationary = {
        let x = nf * l / kf;
        x * lg(x)
    };
    Ok(match family {
        ScalingFamily::BinaryTree => {
            let (w, wr) = if kf <= l * l {
                (nf / kf * l * l, "k <= ln^2 n")
            } else {
                (nf / kf.sqrt() * l, "k > ln^2 n")
            };
            reference(w, tree_stationary, wr, "all k")
        }
        ScalingFamily::Cycle => reference(nf * nf / lg(kf), (nf / kf).powi(2) * lg(kf).powi(2), "all k", "all k"),
        ScalingFamily::Torus2 => {
            let (w, wr) = if kf <= l * l {
                (nf / kf * l * l, "k <= ln^2 n")
            } else {
                (nf / lg(kf / (l * l)), "k > ln^2 n")
            };
            reference(w, tree_stationary, wr, "all k")
        }
        ScalingFamily::TorusHigh(d) => {
            let threshold = nf.powf(1.0 - 2.0 / d as f64) * l;
            let (w, wr) = if kf <= threshold {
                (nf / kf * l, "k <= n^(1-2/d) ln n")
            } else {
                (nf.powf(2.0 / d as f64) / lg(kf / threshold), "k > n^(1-2/d) ln n")
            };
            reference(w, nf / kf * l, wr, "all k")
        }
        ScalingFamily::Hypercube => {
            let threshold = nf / l.ln();
            let (w, wr) = if kf <= threshold {
                (nf / kf * l, "k <= n / ln ln n")
            } else {
                (l * l.ln(), "k > n / ln ln n")
            };
            reference(w, nf / kf * l, wr, "all k")
        }
        ScalingFamily::Expander | ScalingFamily::PreferentialAttachment => {
            reference(nf / kf * l, nf / kf * l, "all k", "all k")
        }
        ScalingFamily::Barbell => {
            let stationary = 2f64.powf(-kf) * nf * nf / kf + nf * l / kf;
            reference(nf * nf / kf, stationary, "all k", "all k")
        }
    })
}

/// The regime threshold in `k` for families with a worst-case split.
pub fn regime_threshold(family: ScalingFamily, n: usize) -> Option<f64> {
    let nf = n as f64;
    let l = nf.ln();
    match family {
        ScalingFamily::BinaryTree | ScalingFamily::Torus2 => Some(l * l),
        ScalingFamily::TorusHigh(d) => Some(nf.powf(1.0 - 2.0 / d as f64) * l),
        ScalingFamily::Hypercube => Some(nf / l.ln()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_reference_values() {
        let r = table1_reference(ScalingFamily::Cycle, 256, 16).unwrap();
        assert!((r.stationary - 1967.6).abs() < 0.5, "{}", r.stationary);
        assert!((r.worst_case - 23637.0).abs() < 5.0, "{}", r.worst_case);
    }

    #[test]
    fn regimes() {
        let r = table1_reference(ScalingFamily::BinaryTree, 2047, 4).unwrap();
        assert_eq!(r.worst_case_regime, "k <= ln^2 n");
        let l = 2047f64.ln();
        assert!((r.worst_case - 2047.0 / 4.0 * l * l).abs() < 1e-6);
        let r = table1_reference(ScalingFamily::Hypercube, 1024, 1024).unwrap();
        assert_eq!(r.worst_case_regime, "k > n / ln ln n");
    }

    #[test]
    fn branches_agree_at_thresholds() {
        for fam in [
            ScalingFamily::BinaryTree,
            ScalingFamily::Torus2,
            ScalingFamily::TorusHigh(3),
            ScalingFamily::TorusHigh(4),
            ScalingFamily::Hypercube,
        ] {
            for e in 8..=12 {
                let n = 1usize << e;
                let th = regime_threshold(fam, n).unwrap();
                let below = table1_reference(fam, n, th.floor() as u64).unwrap().worst_case;
                let above = table1_reference(fam, n, th.floor() as u64 + 1).unwrap().worst_case;
                let ratio = below / above;
                assert!((1.0 / 8.0..=8.0).contains(&ratio), "{fam:?} n={n} ratio {ratio}");
            }
        }
    }

    #[test]
    fn unsupported_family() {
        assert!(ScalingFamily::of(&FamilySpec::Clique { n: 4 }).is_err());
        assert!(table1_reference(ScalingFamily::Cycle, 8, 0).is_err());
    }
}
