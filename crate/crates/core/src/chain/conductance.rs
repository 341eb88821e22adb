use super::transition::TransitionMatrix;
use crate::error::{invalid, Error, Result};

/// Largest `n` for which all subsets are scanned.
pub const EXHAUSTIVE_CONDUCTANCE_GUARD: usize = 20;

const MASS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub enum ConductanceMode<'a> {
    /// Minimum of `Phi(S)` over all `S` with `0 < pi(S) <= 1/2`.
    Exhaustive,
    /// `Phi(S) = Q(S, S^c) / pi(S)` for one set.
    OfSet(&'a [usize]),
}

/// Conductance with ergodic flow `Q(A, B) = sum pi(a) P(a, b)`.
pub fn conductance(p: &TransitionMatrix, mode: ConductanceMode<'_>) -> Result<f64> {
    let n = p.size();
    match mode {
        ConductanceMode::OfSet(set) => {
            let mut inside = vec![false; n];
            for &v in set {
                if v >= n {
                    return invalid(format!("vertex {v} out of range for n={n}"));
                }
                inside[v] = true;
            }
            let (mass, flow) = mass_and_flow(p, |v| inside[v]);
            if !(mass > 0.0 && mass <= 0.5 + MASS_SLACK) {
                return invalid(format!("conductance needs 0 < pi(S) <= 1/2, got {mass}"));
            }
            Ok(flow / mass)
        }
        ConductanceMode::Exhaustive => {
            if n > EXHAUSTIVE_CONDUCTANCE_GUARD {
                return Err(Error::GuardExceeded {
                    what: "exhaustive conductance",
                    size: n,
                    limit: EXHAUSTIVE_CONDUCTANCE_GUARD,
                    hint: "; evaluate specific sets instead",
                });
            }
            let mut best = f64::INFINITY;
            for mask in 1u32..(1u32 << n) {
                let (mass, flow) = mass_and_flow(p, |v| mask >> v & 1 == 1);
                if mass <= 0.5 + MASS_SLACK {
                    best = best.min(flow / mass);
                }
            }
            if best.is_finite() {
                Ok(best)
            } else {
                invalid("no set with 0 < pi(S) <= 1/2")
            }
        }
    }
}

fn mass_and_flow(p: &TransitionMatrix, inside: impl Fn(usize) -> bool) -> (f64, f64) {
    let pi = p.stationary();
    let mut mass = 0.0;
    let mut flow = 0.0;
    for u in (0..p.size()).filter(|&u| inside(u)) {
        mass += pi[u];
        for &(v, q) in p.row(u) {
            if !inside(v) {
                flow += pi[u] * q;
            }
        }
    }
    (mass, flow)
}
