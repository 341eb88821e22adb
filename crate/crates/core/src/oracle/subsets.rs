//! Brute-force minima over vertex subsets, written independently of the
//! chain-exact routines they are used to check.

use crate::chain::TransitionMatrix;
use crate::error::{invalid, Error, Result};

pub const LARGE_HIT_ORACLE_GUARD: usize = 16;
pub const CONDUCTANCE_ORACLE_GUARD: usize = 20;

const SLACK: f64 = 1e-12;

/// Large-hit time over every set with `pi(S) >= 1/4`: for each such set the
/// killed distributions from every start are pushed forward until all have
/// lost at least `k_tilde / k` of their mass.
pub fn exhaustive_large_hit(p: &TransitionMatrix, k_tilde: u64, k: u64, cap: u64) -> Result<Option<u64>> {
    let n = p.size();
    if n > LARGE_HIT_ORACLE_GUARD {
        return Err(Error::GuardExceeded {
            what: "large-hit oracle",
            size: n,
            limit: LARGE_HIT_ORACLE_GUARD,
            hint: "",
        });
    }
    if k_tilde == 0 || k_tilde >= k {
        return invalid("need 1 <= k_tilde < k");
    }
    let need = k_tilde as f64 / k as f64;
    let pi = p.stationary();
    let mut worst = 1u64;
    for mask in 1u32..(1 << n) {
        let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let mass: f64 = (0..n).filter(|&v| inside[v]).map(|v| pi[v]).sum();
        if mass < 0.25 - SLACK {
            continue;
        }
        let mut rows: Vec<Vec<f64>> = (0..n)
            .map(|u| {
                let mut r = vec![0.0; n];
                if !inside[u] {
                    r[u] = 1.0;
                }
                r
            })
            .collect();
        let mut scratch = vec![0.0; n];
        let mut t = 0;
        loop {
            if t >= 1 && rows.iter().all(|r| 1.0 - r.iter().sum::<f64>() >= need - SLACK) {
                break;
            }
            if t == cap {
                return Ok(None);
            }
            for r in rows.iter_mut() {
                p.propagate(r, &mut scratch);
                for (v, x) in scratch.iter().enumerate() {
                    r[v] = if inside[v] { 0.0 } else { *x };
                }
            }
            t += 1;
        }
        worst = worst.max(t);
    }
    Ok(Some(worst))
}

/// `min Phi(S)` over `0 < pi(S) <= 1/2`, visiting subsets in Gray-code order
/// and updating the boundary flow by the toggled vertex only.
pub fn exhaustive_conductance(p: &TransitionMatrix) -> Result<f64> {
    let n = p.size();
    if n > CONDUCTANCE_ORACLE_GUARD {
        return Err(Error::GuardExceeded {
            what: "conductance oracle",
            size: n,
            limit: CONDUCTANCE_ORACLE_GUARD,
            hint: "",
        });
    }
    let pi = p.stationary();
    let mut inside = vec![false; n];
    let mut mass = 0.0;
    let mut flow = 0.0;
    let mut best = f64::INFINITY;
    for i in 1u64..(1 << n) {
        let v = i.trailing_zeros() as usize;
        // flow out of v to vertices not in S, and into v from vertices in S
        let mut to_out = 0.0;
        let mut from_in = 0.0;
        for &(w, q) in p.row(v) {
            if w == v {
                continue;
            }
            if inside[w] {
                from_in += pi[w] * p.get(w, v);
            } else {
                to_out += pi[v] * q;
            }
        }
        if inside[v] {
            inside[v] = false;
            mass -= pi[v];
            flow += from_in - to_out;
        } else {
            inside[v] = true;
            mass += pi[v];
            flow += to_out - from_in;
        }
        if mass > SLACK && mass <= 0.5 + SLACK {
            best = best.min(flow / mass);
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        invalid("no set with 0 < pi(S) <= 1/2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{conductance, large_hit_time, transition_matrix, ConductanceMode, Laziness, SetSelection};
    use crate::graph::{build_family, small::connected_graphs, FamilySpec};

    fn lazy(spec: FamilySpec) -> TransitionMatrix {
        transition_matrix(&build_family(&spec).unwrap(), Laziness::Lazy).unwrap()
    }

    #[test]
    fn cycle4_values() {
        let p = lazy(FamilySpec::Cycle { n: 4 });
        assert!((exhaustive_conductance(&p).unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(exhaustive_large_hit(&p, 1, 4, 100).unwrap(), Some(3));
    }

    #[test]
    fn clique5_conductance_is_the_floor_half_split() {
        let n = 5;
        let p = lazy(FamilySpec::Clique { n });
        // |S| = 2: 6 cut edges, each pi (1/2)/(n-1), over pi(S) = 2/5
        let closed = 6.0 * (1.0 / 5.0) * 0.5 / 4.0 / 0.4;
        assert!((exhaustive_conductance(&p).unwrap() - closed).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_chain_exact_on_small_graphs() {
        for n in 2..=6 {
            for g in connected_graphs(n).unwrap() {
                let p = transition_matrix(&g, Laziness::Lazy).unwrap();
                let a = exhaustive_conductance(&p).unwrap();
                let b = conductance(&p, ConductanceMode::Exhaustive).unwrap();
                assert!((a - b).abs() < 1e-12);
                for (kt, k) in [(1, 2), (1, 8), (3, 4)] {
                    let a = exhaustive_large_hit(&p, kt, k, 10_000).unwrap();
                    let b = large_hit_time(&p, kt, k, &SetSelection::Exhaustive, 10_000)
                        .unwrap()
                        .time;
                    assert_eq!(a, b);
                }
            }
        }
    }
}
