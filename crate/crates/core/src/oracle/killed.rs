//! Exact single-walk quantities from killed-chain propagation.

use crate::chain::{return_sums, TransitionMatrix};
use crate::error::{invalid, Error, Result};

/// Largest `n` for inclusion-exclusion over vertex subsets.
pub const INCLUSION_EXCLUSION_GUARD: usize = 16;

/// Mass of `start` that has avoided `avoid` at every time `0..=s`, for
/// `s = 0..=t`.
pub fn avoidance_curve(p: &TransitionMatrix, start: &[f64], avoid: &[bool], t: u64) -> Vec<f64> {
    let mut x: Vec<f64> = start
        .iter()
        .zip(avoid)
        .map(|(&m, &a)| if a { 0.0 } else { m })
        .collect();
    let mut next = vec![0.0; x.len()];
    let mut out = Vec::with_capacity(t as usize + 1);
    out.push(x.iter().sum());
    for _ in 0..t {
        p.propagate(&x, &mut next);
        for (v, m) in next.iter_mut().enumerate() {
            if avoid[v] {
                *m = 0.0;
            }
        }
        std::mem::swap(&mut x, &mut next);
        out.push(x.iter().sum());
    }
    out
}

/// `P_{pi^k}(tau_cov > s)` for `s = 0..=t` by inclusion-exclusion over the
/// set of unvisited vertices: `sum_{U nonempty} (-1)^{|U|+1} q_s(U)^k` with
/// `q_s(U)` the probability that one stationary walk avoids `U` up to time `s`.
pub fn stationary_cover_tail(p: &TransitionMatrix, k: u32, t: u64) -> Result<Vec<f64>> {
    let n = p.size();
    if n > INCLUSION_EXCLUSION_GUARD {
        return Err(Error::GuardExceeded {
            what: "inclusion-exclusion cover tail",
            size: n,
            limit: INCLUSION_EXCLUSION_GUARD,
            hint: "",
        });
    }
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let mut tail = vec![0.0; t as usize + 1];
    for mask in 1u32..(1 << n) {
        let avoid: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let sign = if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
        for (acc, q) in tail.iter_mut().zip(avoidance_curve(p, p.stationary(), &avoid, t)) {
            *acc += sign * q.powi(k as i32);
        }
    }
    Ok(tail.into_iter().map(|x| x.clamp(0.0, 1.0)).collect())
}

/// Visit statistics of a single vertex by a stationary walk over the first
/// `t` times `0..t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisitStats {
    /// `P_pi(X_v(t) >= 1)`, from the killed chain.
    pub at_least_once: f64,
    /// `E_pi[X_v(t) | X_v(t) >= 1]`, from the first-visit distribution and
    /// return sums.
    pub conditional_mean: f64,
    /// `sum_{i=0}^{t} P^i(v, v)`.
    pub return_sum: f64,
}

pub fn visit_stats(p: &TransitionMatrix, v: usize, t: u64) -> Result<VisitStats> {
    let n = p.size();
    if v >= n || t == 0 {
        return invalid("need a valid vertex and t >= 1");
    }
    let mut avoid = vec![false; n];
    avoid[v] = true;
    let survive = avoidance_curve(p, p.stationary(), &avoid, t - 1);
    let returns = return_sums(p, v, t);
    let at_least_once = 1.0 - survive[t as usize - 1];
    // first visit at time s has probability survive[s-1] - survive[s]
    let mut weighted = 0.0;
    for s in 0..t as usize {
        let before = if s == 0 { 1.0 } else { survive[s - 1] };
        let first = before - survive[s];
        weighted += first * returns[t as usize - 1 - s];
    }
    Ok(VisitStats {
        at_least_once,
        conditional_mean: weighted / at_least_once,
        return_sum: returns[t as usize],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{transition_matrix, Laziness};
    use crate::graph::{build_family, FamilySpec};
    use crate::oracle::exact_cover_tail;
    use crate::sim::StartSpec;

    #[test]
    fn inclusion_exclusion_matches_product_chain() {
        for spec in [
            FamilySpec::Cycle { n: 5 },
            FamilySpec::Path { n: 4 },
            FamilySpec::Clique { n: 4 },
        ] {
            let g = build_family(&spec).unwrap();
            let p = transition_matrix(&g, Laziness::Lazy).unwrap();
            for k in 1..=2 {
                let a = stationary_cover_tail(&p, k, 40).unwrap();
                let b = exact_cover_tail(&g, k as usize, &StartSpec::StationaryProduct, Laziness::Lazy, 40).unwrap();
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).abs() < 1e-12, "{spec} k={k}");
                }
            }
        }
    }

    #[test]
    fn expected_visits_identity() {
        // E[X] = t pi(v) = P(X >= 1) E[X | X >= 1]
        let g = build_family(&FamilySpec::BinaryTree { height: 2 }).unwrap();
        let p = transition_matrix(&g, Laziness::Lazy).unwrap();
        for v in 0..7 {
            for t in [1, 2, 5, 17] {
                let s = visit_stats(&p, v, t).unwrap();
                let lhs = s.at_least_once * s.conditional_mean;
                assert!((lhs - t as f64 * p.stationary()[v]).abs() < 1e-12);
            }
        }
    }
}
