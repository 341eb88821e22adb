use serde::{Deserialize, Serialize};

use crate::fmt_sig;
use crate::Provenance;

/// Monte-Carlo error allowance, in standard errors, applied to estimated
/// inputs before a bound check is declared failed.
pub const SIGMA_ALLOWANCE: f64 = 3.0;

/// A number with its origin and (for estimates) its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub std_error: f64,
    pub provenance: Provenance,
}

impl Quantity {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            std_error: 0.0,
            provenance: Provenance::Exact,
        }
    }

    pub fn estimated(value: f64, std_error: f64) -> Self {
        Self {
            value,
            std_error,
            provenance: Provenance::Estimated,
        }
    }

    pub fn catalog(value: f64) -> Self {
        Self {
            value,
            std_error: 0.0,
            provenance: Provenance::CatalogUpperBoundOnMin,
        }
    }

    pub fn with_provenance(value: f64, provenance: Provenance) -> Self {
        Self {
            value,
            std_error: 0.0,
            provenance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `lhs <= constant * rhs`
    Upper,
    /// `lhs >= constant * rhs`
    Lower,
}

/// One bound evaluated against one measured quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_id: String,
    pub family: String,
    pub n: usize,
    pub k: u64,
    pub k_tilde: Option<u64>,
    pub direction: Direction,
    pub rhs: Option<f64>,
    pub lhs: Option<f64>,
    pub constant: f64,
    /// `None` when the bound could not be evaluated (see `note`).
    pub pass: Option<bool>,
    /// `constant * rhs / lhs` for upper bounds and `lhs / (constant * rhs)`
    /// for lower bounds; at least 1 when the inequality holds outright.
    pub margin: Option<f64>,
    /// Advisory reports never fail a run: their constants are harness
    /// choices for asymptotic statements, or their inputs are one-sided
    /// proxies.
    pub advisory: bool,
    pub note: String,
}

pub(crate) struct Check<'a> {
    pub bound_id: &'a str,
    pub family: &'a str,
    pub n: usize,
    pub k: u64,
    pub k_tilde: Option<u64>,
    pub direction: Direction,
    pub constant: f64,
    pub advisory: bool,
}

impl Check<'_> {
    pub fn evaluate(&self, lhs: Quantity, rhs: Quantity, note: impl Into<String>) -> BoundReport {
        let scaled = self.constant * rhs.value;
        let (holds, margin) = match self.direction {
            Direction::Upper => (
                lhs.value - SIGMA_ALLOWANCE * lhs.std_error
                    <= self.constant * (rhs.value + SIGMA_ALLOWANCE * rhs.std_error) * (1.0 + 1e-12),
                scaled / lhs.value,
            ),
            Direction::Lower => (
                lhs.value + SIGMA_ALLOWANCE * lhs.std_error
                    >= self.constant * (rhs.value - SIGMA_ALLOWANCE * rhs.std_error) * (1.0 - 1e-12),
                lhs.value / scaled,
            ),
        };
        let one_sided = [lhs.provenance, rhs.provenance].contains(&Provenance::CatalogUpperBoundOnMin);
        let mut note = note.into();
        if one_sided {
            if !note.is_empty() {
                note.push_str("; ");
            }
            note.push_str("catalog-derived input");
        }
        BoundReport {
            bound_id: self.bound_id.to_string(),
            family: self.family.to_string(),
            n: self.n,
            k: self.k,
            k_tilde: self.k_tilde,
            direction: self.direction,
            rhs: Some(rhs.value),
            lhs: Some(lhs.value),
            constant: self.constant,
            pass: Some(holds),
            margin: Some(margin),
            advisory: self.advisory || one_sided,
            note,
        }
    }

    pub fn not_evaluable(&self, reason: impl Into<String>) -> BoundReport {
        BoundReport {
            bound_id: self.bound_id.to_string(),
            family: self.family.to_string(),
            n: self.n,
            k: self.k,
            k_tilde: self.k_tilde,
            direction: self.direction,
            rhs: None,
            lhs: None,
            constant: self.constant,
            pass: None,
            margin: None,
            advisory: self.advisory,
            note: reason.into(),
        }
    }
}

impl BoundReport {
    /// A non-advisory report whose inequality failed.
    pub fn is_hard_failure(&self) -> bool {
        self.pass == Some(false) && !self.advisory
    }
}

pub const REPORT_CSV_HEADER: &str = "bound_id,family,n,k,k_tilde,rhs,lhs,constant,pass";

fn opt(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

/// Flat CSV with the fixed column order of [`REPORT_CSV_HEADER`].
pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for r in reports {
        let pass = match r.pass {
            Some(true) => "pass",
            Some(false) if r.advisory => "advisory_fail",
            Some(false) => "fail",
            None => "not_evaluable",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.bound_id,
            r.family,
            r.n,
            r.k,
            r.k_tilde.map(|x| x.to_string()).unwrap_or_default(),
            opt(r.rhs),
            opt(r.lhs),
            fmt_sig(r.constant),
            pass
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(direction: Direction) -> Check<'static> {
        Check {
            bound_id: "demo",
            family: "cycle",
            n: 8,
            k: 2,
            k_tilde: None,
            direction,
            constant: 2.0,
            advisory: false,
        }
    }

    #[test]
    fn upper_and_lower() {
        let r = check(Direction::Upper).evaluate(Quantity::exact(3.0), Quantity::exact(2.0), "");
        assert_eq!(r.pass, Some(true));
        assert!((r.margin.unwrap() - 4.0 / 3.0).abs() < 1e-15);
        let r = check(Direction::Upper).evaluate(Quantity::exact(5.0), Quantity::exact(2.0), "");
        assert!(r.is_hard_failure());
        let r = check(Direction::Lower).evaluate(Quantity::estimated(3.9, 0.1), Quantity::exact(2.0), "");
        assert_eq!(r.pass, Some(true));
    }

    #[test]
    fn catalog_inputs_are_advisory() {
        let r = check(Direction::Lower).evaluate(Quantity::exact(1.0), Quantity::catalog(5.0), "");
        assert_eq!(r.pass, Some(false));
        assert!(r.advisory);
        assert!(!r.is_hard_failure());
    }

    #[test]
    fn csv_layout() {
        let r = check(Direction::Upper).evaluate(Quantity::exact(1.0), Quantity::exact(0.25), "");
        let nr = check(Direction::Upper).not_evaluable("guard");
        let csv = reports_to_csv(&[r, nr]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], REPORT_CSV_HEADER);
        assert_eq!(lines[1], "demo,cycle,8,2,,0.25,1,2,fail");
        assert_eq!(lines[2], "demo,cycle,8,2,,,,2,not_evaluable");
    }
}
