use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::transition::TransitionMatrix;
use crate::error::{invalid, Result};

/// Slack used when comparing a distance against a threshold, so that exact
/// ties (common on small chains with dyadic entries) are not lost to rounding.
pub const THRESHOLD_SLACK: f64 = 1e-12;

/// Total-variation and separation distances of `P^t` for `t = 0..=t_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub tv: Vec<f64>,
    pub separation: Vec<f64>,
}

impl DistanceProfile {
    pub fn t_max(&self) -> u64 {
        (self.tv.len() - 1) as u64
    }

    /// First `t` with `d(t) <= eps`, if reached within the profile.
    pub fn mixing_time(&self, eps: f64) -> Option<u64> {
        first_at_or_below(&self.tv, eps, 0)
    }

    /// First `t` with `s(t) <= eps`, if reached within the profile.
    pub fn separation_time(&self, eps: f64) -> Option<u64> {
        first_at_or_below(&self.separation, eps, 0)
    }

    /// Smallest `t >= 1` with `s(t) <= 1 - k_tilde/k`.
    pub fn partial_mixing_time(&self, k_tilde: u64, k: u64) -> Result<Option<u64>> {
        let eps = partial_threshold(k_tilde, k)?;
        Ok(first_at_or_below(&self.separation, eps, 1))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,d,s\n");
        for (t, (d, s)) in self.tv.iter().zip(&self.separation).enumerate() {
            out.push_str(&format!("{t},{},{}\n", crate::fmt_sig(*d), crate::fmt_sig(*s)));
        }
        out
    }
}

pub(crate) fn partial_threshold(k_tilde: u64, k: u64) -> Result<f64> {
    if k_tilde == 0 || k_tilde >= k {
        return invalid(format!("need 1 <= k_tilde < k, got k_tilde={k_tilde}, k={k}"));
    }
    Ok(1.0 - k_tilde as f64 / k as f64)
}

fn first_at_or_below(curve: &[f64], eps: f64, from: usize) -> Option<u64> {
    curve
        .iter()
        .enumerate()
        .skip(from)
        .find(|(_, &v)| v <= eps + THRESHOLD_SLACK)
        .map(|(t, _)| t as u64)
}

fn tv_of_rows(rows: &[Vec<f64>], pi: &[f64]) -> f64 {
    rows.iter()
        .map(|r| 0.5 * r.iter().zip(pi).map(|(p, q)| (p - q).abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn sep_of_rows(rows: &[Vec<f64>], pi: &[f64]) -> f64 {
    rows.iter()
        .flat_map(|r| r.iter().zip(pi).map(|(p, q)| 1.0 - p / q))
        .fold(0.0, f64::max)
}

/// Exact distance profile by propagating every row of `P^t` one step at a time.
pub fn distance_profile(p: &TransitionMatrix, t_max: u64) -> Result<DistanceProfile> {
    if t_max == 0 {
        return invalid("t_max must be at least 1");
    }
    let n = p.size();
    let pi = p.stationary();
    let mut rows: Vec<Vec<f64>> = (0..n)
        .map(|x| {
            let mut r = vec![0.0; n];
            r[x] = 1.0;
            r
        })
        .collect();
    let mut scratch = vec![0.0; n];
    let mut tv = Vec::with_capacity(t_max as usize + 1);
    let mut separation = Vec::with_capacity(t_max as usize + 1);
    tv.push(tv_of_rows(&rows, pi));
    separation.push(sep_of_rows(&rows, pi));
    for _ in 0..t_max {
        for r in rows.iter_mut() {
            p.propagate(r, &mut scratch);
            r.copy_from_slice(&scratch);
        }
        tv.push(tv_of_rows(&rows, pi));
        separation.push(sep_of_rows(&rows, pi));
    }
    Ok(DistanceProfile { tv, separation })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    TotalVariation,
    Separation,
}

/// Threshold-crossing search on matrix powers: squares `P` until the distance
/// drops below the threshold, then binary-searches between the last two
/// checkpoints. Relies on both distances being non-increasing in `t`.
#[derive(Debug, Clone)]
pub struct CrossingSearch<'a> {
    chain: &'a TransitionMatrix,
    /// `powers[j] = P^(2^j)`
    powers: Vec<DMatrix<f64>>,
    cap: u64,
}

impl<'a> CrossingSearch<'a> {
    /// `cap` bounds the largest time examined; crossings beyond it are
    /// reported as not reached.
    pub fn new(chain: &'a TransitionMatrix, cap: u64) -> Self {
        Self {
            chain,
            powers: vec![chain.dense().clone()],
            cap: cap.max(1),
        }
    }

    fn metric(&self, m: &DMatrix<f64>, which: Distance) -> f64 {
        let pi = self.chain.stationary();
        let n = pi.len();
        match which {
            Distance::TotalVariation => (0..n)
                .map(|x| 0.5 * (0..n).map(|y| (m[(x, y)] - pi[y]).abs()).sum::<f64>())
                .fold(0.0, f64::max),
            Distance::Separation => (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| 1.0 - m[(x, y)] / pi[y])
                .fold(0.0, f64::max),
        }
    }

    fn power(&mut self, j: usize) -> &DMatrix<f64> {
        while self.powers.len() <= j {
            let last = self.powers.last().unwrap();
            let next = last * last;
            self.powers.push(next);
        }
        &self.powers[j]
    }

    /// Smallest `t >= 1` with distance `<= eps`, or `None` if beyond the cap.
    pub fn first_below(&mut self, which: Distance, eps: f64) -> Option<u64> {
        let hit = |v: f64| v <= eps + THRESHOLD_SLACK;
        let mut j = 0usize;
        loop {
            let m = self.power(j).clone();
            if hit(self.metric(&m, which)) {
                break;
            }
            if (1u64 << (j + 1)) > self.cap {
                return None;
            }
            j += 1;
        }
        if j == 0 {
            return Some(1);
        }
        // invariant: distance at `t` is above eps, distance at `t + 2^(i+1)` is not
        let mut t = 1u64 << (j - 1);
        let mut current = self.powers[j - 1].clone();
        for i in (0..j - 1).rev() {
            let cand = &current * &self.powers[i];
            if !hit(self.metric(&cand, which)) {
                current = cand;
                t += 1 << i;
            }
        }
        let answer = t + 1;
        (answer <= self.cap).then_some(answer)
    }

    /// `t_mix(eps)`, first time with `d(t) <= eps` (`t >= 1`).
    pub fn mixing_time(&mut self, eps: f64) -> Option<u64> {
        self.first_below(Distance::TotalVariation, eps)
    }

    /// Partial mixing time: first `t >= 1` with `s(t) <= 1 - k_tilde/k`.
    pub fn partial_mixing_time(&mut self, k_tilde: u64, k: u64) -> Result<Option<u64>> {
        let eps = partial_threshold(k_tilde, k)?;
        Ok(self.first_below(Distance::Separation, eps))
    }
}
