use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::profile::{partial_threshold, THRESHOLD_SLACK};
use super::transition::{TransitionMatrix, DENSE_GUARD};
use crate::error::{invalid, Error, Result};
use crate::graph::HardSetCatalog;
use crate::Provenance;

/// Largest `n` for which all subsets are scanned when computing large-hit times.
pub const EXHAUSTIVE_HIT_GUARD: usize = 16;

/// `P_u(tau_S <= t)` for every start `u`. Starting inside `S` counts as a hit
/// at time 0.
pub fn hit_probability_within(p: &TransitionMatrix, set: &[usize], t: u64) -> Result<Vec<f64>> {
    let inside = membership(p.size(), set)?;
    let mut h: Vec<f64> = inside.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
    let mut next = vec![0.0; h.len()];
    for _ in 0..t {
        absorbed_step(p, &inside, &h, &mut next);
        std::mem::swap(&mut h, &mut next);
    }
    Ok(h)
}

fn membership(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    if set.is_empty() {
        return invalid("target set must be nonempty");
    }
    let mut inside = vec![false; n];
    for &v in set {
        if v >= n {
            return invalid(format!("vertex {v} out of range for n={n}"));
        }
        inside[v] = true;
    }
    Ok(inside)
}

fn absorbed_step(p: &TransitionMatrix, inside: &[bool], h: &[f64], out: &mut [f64]) {
    for (u, o) in out.iter_mut().enumerate() {
        *o = if inside[u] {
            1.0
        } else {
            p.row(u).iter().map(|&(v, q)| q * h[v]).sum()
        };
    }
}

/// Which sets the large-hit minimum ranges over.
#[derive(Debug, Clone)]
pub enum SetSelection<'a> {
    /// Caller-supplied sets; the minimum is over these only.
    Explicit(&'a [Vec<usize>]),
    /// Every set with stationary mass at least 1/4 (`n <= 16`).
    Exhaustive,
    /// Family catalog; gives an upper bound on the true minimum probability,
    /// hence a lower bound on the true large-hit time.
    Catalog(&'a HardSetCatalog),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LargeHitTime {
    pub k_tilde: u64,
    pub k: u64,
    /// `None` if the threshold was not reached within the cap.
    pub time: Option<u64>,
    pub provenance: Provenance,
    pub sets_examined: usize,
}

/// Large-hit time for a single `(k_tilde, k)` pair.
pub fn large_hit_time(
    p: &TransitionMatrix,
    k_tilde: u64,
    k: u64,
    sets: &SetSelection<'_>,
    cap: u64,
) -> Result<LargeHitTime> {
    Ok(large_hit_times(p, &[(k_tilde, k)], sets, cap)?.remove(0))
}

/// Smallest `t >= 1` such that every start hits every selected set within `t`
/// steps with probability at least `k_tilde / k`, for several pairs at once.
pub fn large_hit_times(
    p: &TransitionMatrix,
    pairs: &[(u64, u64)],
    sets: &SetSelection<'_>,
    cap: u64,
) -> Result<Vec<LargeHitTime>> {
    let thresholds: Vec<f64> = pairs
        .iter()
        .map(|&(kt, k)| partial_threshold(kt, k).map(|e| 1.0 - e))
        .collect::<Result<_>>()?;
    let (family, provenance) = match sets {
        SetSelection::Explicit(list) => (list.to_vec(), Provenance::Exact),
        SetSelection::Exhaustive => (minimal_large_sets(p)?, Provenance::Exact),
        SetSelection::Catalog(cat) => {
            if cat.sets.is_empty() {
                return Err(Error::Unsupported(format!(
                    "empty hard-set catalog{}",
                    cat.diagnostic.as_deref().map(|d| format!(": {d}")).unwrap_or_default()
                )));
            }
            (
                cat.sets.iter().map(|s| s.vertices.clone()).collect(),
                Provenance::CatalogUpperBoundOnMin,
            )
        }
    };
    if family.is_empty() {
        return invalid("no sets to examine");
    }
    let mut worst: Vec<Option<u64>> = vec![Some(1); thresholds.len()];
    for set in &family {
        let crossing = set_crossings(p, set, &thresholds, cap)?;
        for (w, c) in worst.iter_mut().zip(crossing) {
            *w = match (*w, c) {
                (Some(a), Some(b)) => Some(a.max(b)),
                _ => None,
            };
        }
    }
    Ok(pairs
        .iter()
        .zip(worst)
        .map(|(&(k_tilde, k), time)| LargeHitTime {
            k_tilde,
            k,
            time,
            provenance,
            sets_examined: family.len(),
        })
        .collect())
}

/// First `t >= 1` with `min_u P_u(tau_S <= t) >= theta`, per threshold.
fn set_crossings(p: &TransitionMatrix, set: &[usize], thresholds: &[f64], cap: u64) -> Result<Vec<Option<u64>>> {
    let inside = membership(p.size(), set)?;
    let mut h: Vec<f64> = inside.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
    let mut next = vec![0.0; h.len()];
    let mut out = vec![None; thresholds.len()];
    let mut open = thresholds.len();
    let mut t = 0u64;
    while open > 0 && t < cap {
        absorbed_step(p, &inside, &h, &mut next);
        std::mem::swap(&mut h, &mut next);
        t += 1;
        let low = h.iter().copied().fold(f64::INFINITY, f64::min);
        for (o, &theta) in out.iter_mut().zip(thresholds) {
            if o.is_none() && low >= theta - THRESHOLD_SLACK {
                *o = Some(t);
                open -= 1;
            }
        }
    }
    Ok(out)
}

/// Sets with `pi(S) >= 1/4` that lose that property when any vertex is
/// removed. Hitting probabilities are monotone in `S`, so these attain the
/// minimum over all large sets.
fn minimal_large_sets(p: &TransitionMatrix) -> Result<Vec<Vec<usize>>> {
    let n = p.size();
    if n > EXHAUSTIVE_HIT_GUARD {
        return Err(Error::GuardExceeded {
            what: "exhaustive large-hit scan",
            size: n,
            limit: EXHAUSTIVE_HIT_GUARD,
            hint: "; use catalog mode",
        });
    }
    let pi = p.stationary();
    let large = |mask: u32| -> bool {
        let mass: f64 = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| pi[v]).sum();
        mass >= 0.25 - THRESHOLD_SLACK
    };
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if large(mask) && (0..n).filter(|&v| mask >> v & 1 == 1).all(|v| !large(mask & !(1 << v))) {
            out.push((0..n).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    Ok(out)
}

/// `sum_{i=0}^{t} P^i(v, v)`.
pub fn return_sum(p: &TransitionMatrix, v: usize, t: u64) -> f64 {
    *return_sums(p, v, t).last().unwrap()
}

/// Cumulative return sums `sum_{i=0}^{s} P^i(v,v)` for `s = 0..=t`.
pub fn return_sums(p: &TransitionMatrix, v: usize, t: u64) -> Vec<f64> {
    let n = p.size();
    let mut x = vec![0.0; n];
    let mut next = vec![0.0; n];
    x[v] = 1.0;
    let mut acc = 1.0;
    let mut out = Vec::with_capacity(t as usize + 1);
    out.push(acc);
    for _ in 0..t {
        p.propagate(&x, &mut next);
        std::mem::swap(&mut x, &mut next);
        acc += x[v];
        out.push(acc);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HittingTimes {
    pub target: usize,
    /// `E_u[tau_target]` for every `u`.
    pub from: Vec<f64>,
    /// `E_pi[tau_target]`.
    pub from_stationary: f64,
}

/// Expected hitting times of `target` by a linear solve with `target` absorbing.
pub fn hitting_expectation(p: &TransitionMatrix, target: usize) -> Result<HittingTimes> {
    let n = p.size();
    if n > DENSE_GUARD {
        return Err(Error::GuardExceeded {
            what: "hitting-time solve",
            size: n,
            limit: DENSE_GUARD,
            hint: "",
        });
    }
    if target >= n {
        return invalid(format!("target {target} out of range"));
    }
    let others: Vec<usize> = (0..n).filter(|&u| u != target).collect();
    let m = others.len();
    let mut from = vec![0.0; n];
    if m > 0 {
        let a = DMatrix::from_fn(m, m, |i, j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            delta - p.get(others[i], others[j])
        });
        let b = DVector::from_element(m, 1.0);
        let sol = a
            .lu()
            .solve(&b)
            .ok_or_else(|| Error::Singular("hitting system (is the chain irreducible?)".into()))?;
        for (i, &u) in others.iter().enumerate() {
            from[u] = sol[i];
        }
    }
    let from_stationary = from.iter().zip(p.stationary()).map(|(h, q)| h * q).sum();
    Ok(HittingTimes {
        target,
        from,
        from_stationary,
    })
}

/// `E_pi[tau_v]` for every `v` from one inversion of `I - P + 1 pi^T`:
/// `E_pi[tau_v] = Z(v,v) / pi(v)` with `Z = sum_t (P^t - 1 pi^T)`.
pub fn stationary_hitting_times(p: &TransitionMatrix) -> Result<Vec<f64>> {
    let n = p.size();
    if n > DENSE_GUARD {
        return Err(Error::GuardExceeded {
            what: "fundamental matrix",
            size: n,
            limit: DENSE_GUARD,
            hint: "",
        });
    }
    let pi = p.stationary();
    let a = DMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - p.get(i, j) + pi[j]
    });
    let inv = a
        .try_inverse()
        .ok_or_else(|| Error::Singular("I - P + 1 pi^T".into()))?;
    Ok((0..n).map(|v| (inv[(v, v)] - pi[v]) / pi[v]).collect())
}
