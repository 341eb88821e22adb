use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub points: usize,
}

impl SlopeFit {
    /// Fitted `y` at `x`.
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Ordinary least squares on logarithms. Needs at least three points with
/// positive coordinates and a non-degenerate spread of `x`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.len() < 3 {
        return invalid(format!("slope fit needs at least 3 points, got {}", points.len()));
    }
    if let Some(&(x, y)) = points
        .iter()
        .find(|(x, y)| !(*x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite()))
    {
        return invalid(format!("slope fit needs positive finite values, got ({x}, {y})"));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 1e-12 * len {
        return invalid("slope fit: x values span a degenerate range");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = logs.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    Ok(SlopeFit {
        slope,
        intercept,
        residual: (sse / len).sqrt(),
        points: logs.len(),
    })
}

/// Acceptance window for a fitted slope; either side may be open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct SlopeWindow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
}

impl SlopeWindow {
    pub fn between(min: f64, max: f64) -> Self {
        Self {
            min: Some(min),
            max: Some(max),
        }
    }

    pub fn contains(&self, slope: f64) -> bool {
        self.min.is_none_or(|m| slope >= m) && self.max.is_none_or(|m| slope <= m)
    }
}

impl std::fmt::Display for SlopeWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = |x: Option<f64>, open: &str| x.map(crate::fmt_sig).unwrap_or_else(|| open.to_string());
        write!(f, "[{}, {}]", side(self.min, "-inf"), side(self.max, "inf"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let sq: Vec<(f64, f64)> = [1.0, 2.0, 5.0, 9.0].iter().map(|&x| (x, x * x)).collect();
        let fit = fit_loglog_slope(&sq).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-9);
        assert!(fit.residual < 1e-12);
        let inv: Vec<(f64, f64)> = [1.0, 3.0, 10.0].iter().map(|&x| (x, 7.0 / x)).collect();
        let fit = fit_loglog_slope(&inv).unwrap();
        assert!((fit.slope + 1.0).abs() < 1e-9);
        assert!((fit.predict(2.0) - 3.5).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_loglog_slope(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_loglog_slope(&[(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)]).is_err());
        assert!(fit_loglog_slope(&[(1.0, 1.0), (2.0, 0.0), (3.0, 3.0)]).is_err());
    }

    #[test]
    fn residual_is_reported() {
        let fit = fit_loglog_slope(&[(1.0, 1.0), (2.0, 4.0), (4.0, 8.0)]).unwrap();
        assert!(fit.residual > 0.01);
    }

    #[test]
    fn windows() {
        let w = SlopeWindow::between(-2.3, -1.6);
        assert!(w.contains(-2.0));
        assert!(!w.contains(-1.5));
        let open = SlopeWindow {
            min: None,
            max: Some(-0.8),
        };
        assert!(open.contains(-5.0));
        assert_eq!(open.to_string(), "[-inf, -0.8]");
    }
}
