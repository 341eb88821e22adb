//! Cover, hitting and mixing quantities for `k` independent random walks on a
//! graph: exact dense-matrix analysis for small chains, seeded Monte-Carlo
//! estimation for large ones, brute-force oracles, and closed-form bound
//! evaluators that put measured values next to theoretical right-hand sides.

pub mod bounds;
pub mod chain;
pub mod error;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod sim;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

/// How a reported quantity was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Computed exactly from the transition matrix (up to floating point).
    Exact,
    /// Monte-Carlo estimate.
    Estimated,
    /// Minimum taken over a catalog of candidate sets only, so the
    /// probability is an upper bound on the true minimum.
    CatalogUpperBoundOnMin,
    /// Closed-form expression, not measured.
    ClosedForm,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Exact => "exact",
            Provenance::Estimated => "estimated",
            Provenance::CatalogUpperBoundOnMin => "catalog_upper_bound_on_min",
            Provenance::ClosedForm => "closed_form",
        })
    }
}

/// Formats a float with at most nine significant digits and no trailing zeros.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.8e}");
        let (mantissa, e) = s.split_once('e').unwrap();
        format!("{}e{e}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
