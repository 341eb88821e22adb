use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::transition::TransitionMatrix;
use crate::error::{Error, Result};

const RESIDUAL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    /// Second-largest eigenvalue of the transition matrix.
    pub lambda2: f64,
    /// `1 / (1 - lambda2)`.
    pub t_rel: f64,
    /// `|A x - lambda2 x|` for the symmetrized matrix `A` and unit eigenvector `x`.
    pub residual: f64,
}

/// Relaxation time from the eigendecomposition of `D^(1/2) P D^(-1/2)`,
/// `D = diag(pi)`, which is symmetric for reversible chains.
pub fn relaxation_time(p: &TransitionMatrix) -> Result<SpectralSummary> {
    let n = p.size();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "relaxation time needs at least two states".into(),
        ));
    }
    let root: Vec<f64> = p.stationary().iter().map(|q| q.sqrt()).collect();
    let a = DMatrix::from_fn(n, n, |i, j| {
        let v = p.get(i, j) * root[i] / root[j];
        let w = p.get(j, i) * root[j] / root[i];
        0.5 * (v + w)
    });
    let eig = a.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let idx = order[1];
    let lambda2 = eig.eigenvalues[idx];
    let x: DVector<f64> = eig.eigenvectors.column(idx).into_owned();
    let residual = (&a * &x - &x * lambda2).norm() / x.norm();
    if residual.is_nan() || residual > RESIDUAL_TOLERANCE {
        return Err(Error::NotConverged { residual });
    }
    Ok(SpectralSummary {
        lambda2,
        t_rel: 1.0 / (1.0 - lambda2),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{transition_matrix, Laziness};
    use crate::graph::{build_family, FamilySpec};

    fn summary(spec: FamilySpec, laziness: Laziness) -> SpectralSummary {
        relaxation_time(&transition_matrix(&build_family(&spec).unwrap(), laziness).unwrap()).unwrap()
    }

    #[test]
    fn k2_lazy_is_rank_one() {
        let s = summary(FamilySpec::Clique { n: 2 }, Laziness::Lazy);
        assert!(s.lambda2.abs() < 1e-12);
        assert!((s.t_rel - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cycle4_lazy() {
        let s = summary(FamilySpec::Cycle { n: 4 }, Laziness::Lazy);
        assert!((s.lambda2 - 0.5).abs() < 1e-12);
        assert!((s.t_rel - 2.0).abs() < 1e-10);
    }

    #[test]
    fn clique_against_closed_form() {
        // non-lazy K_n has eigenvalues 1 and -1/(n-1); lazy maps l to (1+l)/2
        for n in [3, 5, 10] {
            let s = summary(FamilySpec::Clique { n }, Laziness::Lazy);
            let l2 = 0.5 * (1.0 - 1.0 / (n as f64 - 1.0));
            assert!((s.lambda2 - l2).abs() < 1e-12);
            assert!(s.t_rel >= 1.0);
        }
    }

    #[test]
    fn cycle_spectrum() {
        let n = 12;
        let s = summary(FamilySpec::Cycle { n }, Laziness::Lazy);
        let l2 = 0.5 * (1.0 + (2.0 * std::f64::consts::PI / n as f64).cos());
        assert!((s.lambda2 - l2).abs() < 1e-12);
        assert!(s.lambda2 >= 0.5);
    }
}
