use serde::{Deserialize, Serialize};

use super::quantities::GraphQuantities;
use super::report::{BoundReport, Check, Direction, Quantity};
use crate::chain::{return_sum, TransitionMatrix};
use crate::graph::FamilySpec;
use crate::sim::TailFrequency;

/// Constants used where a statement only holds up to an unspecified factor.
/// Every default here is a harness choice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoundConstants {
    /// Factor allowed on the right-hand side of asymptotic upper bounds.
    pub upper: f64,
    /// Factor for the general `(n/k) ln n` lower bound.
    pub general_lower: f64,
    /// Factor for the regular-graph min-max lower bound.
    pub regular_lower: f64,
    /// Exponent `delta` restricting `k_tilde >= n^delta` in that bound.
    pub regular_delta: f64,
    /// Factor for the linear-in-`k_tilde/k` lower bounds on partial mixing
    /// and large-hit times.
    pub linear_lower: f64,
    /// Factor for the logarithmic large-hit upper bound.
    pub large_hit_upper: f64,
    /// Factor for family-specific asymptotic bounds.
    pub family: f64,
    /// Applicability gate: `pi_min >= gate_pi_min / n`.
    pub gate_pi_min: f64,
    /// Applicability gate: `t_mix <= gate_t_mix * n`.
    pub gate_t_mix: f64,
    /// Applicability gate on return-sum ratios.
    pub gate_returns: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self {
            upper: 8.0,
            general_lower: 0.01,
            regular_lower: 1e-2,
            regular_delta: 0.1,
            linear_lower: 1e-3,
            large_hit_upper: 8.0,
            family: 8.0,
            gate_pi_min: 0.25,
            gate_t_mix: 8.0,
            gate_returns: 8.0,
        }
    }
}

fn check<'a>(
    id: &'a str,
    q: &'a GraphQuantities,
    k: u64,
    k_tilde: Option<u64>,
    direction: Direction,
    constant: f64,
    advisory: bool,
) -> Check<'a> {
    Check {
        bound_id: id,
        family: &q.family,
        n: q.n,
        k,
        k_tilde,
        direction,
        constant,
        advisory,
    }
}

/// Upper bounds on the stationary `k`-walk cover time. `lhs` is the
/// measured stationary cover time of `k` walks.
pub fn eval_stationary_upper(q: &GraphQuantities, k: u64, lhs: Quantity, c: &BoundConstants) -> Vec<BoundReport> {
    let n = q.n as f64;
    let ln_n = n.ln();
    let kf = k as f64;
    let mut out = Vec::new();

    let degree = check("stationary_upper_degree", q, k, None, Direction::Upper, c.upper, true);
    let ratio = q.m / (kf * q.d_min as f64);
    out.push(degree.evaluate(lhs, Quantity::exact(ratio * ratio * ln_n * ln_n), ""));

    let hitting = check("stationary_upper_hitting", q, k, None, Direction::Upper, c.upper, true);
    out.push(match q.max_stationary_hitting {
        Some(h) => hitting.evaluate(lhs, Quantity::with_provenance(h.value * ln_n / kf, h.provenance), ""),
        None => hitting.not_evaluable("max stationary hitting time unavailable"),
    });

    let spectral = check(
        "stationary_upper_relaxation",
        q,
        k,
        None,
        Direction::Upper,
        c.upper,
        true,
    );
    out.push(match q.t_rel {
        Some(t) => spectral.evaluate(lhs, Quantity::exact(ratio * t.value.sqrt() * ln_n), ""),
        None => spectral.not_evaluable("relaxation time unavailable"),
    });

    let constant = check(
        "stationary_upper_constant_return",
        q,
        k,
        None,
        Direction::Upper,
        c.upper,
        true,
    );
    out.push(match constant_return_gate(q, c) {
        Err(why) => constant.not_evaluable(why),
        Ok(()) if k as usize > q.n => constant.not_evaluable("needs k <= n"),
        Ok(()) => constant.evaluate(lhs, Quantity::exact(n / kf * ln_n), ""),
    });

    let sub = check(
        "stationary_upper_subharmonic_return",
        q,
        k,
        None,
        Direction::Upper,
        c.upper,
        true,
    );
    let x = n * ln_n / kf;
    out.push(match subharmonic_gate(q, c) {
        Err(why) => sub.not_evaluable(why),
        Ok(()) if 3.0 * kf > n * ln_n => sub.not_evaluable("needs k <= n ln n / 3"),
        Ok(()) => sub.evaluate(lhs, Quantity::exact(x * x.ln().max(1.0)), ""),
    });
    out
}

fn t_mix_gate(q: &GraphQuantities, c: &BoundConstants) -> Result<(), String> {
    if q.pi_min * (q.n as f64) < c.gate_pi_min {
        return Err(format!(
            "gate: pi_min * n = {:.3} below {}",
            q.pi_min * q.n as f64,
            c.gate_pi_min
        ));
    }
    match q.t_mix {
        Some(t) if t.value <= c.gate_t_mix * q.n as f64 => Ok(()),
        Some(t) => Err(format!("gate: t_mix = {} exceeds {} n", t.value, c.gate_t_mix)),
        None => Err("gate: t_mix unavailable".into()),
    }
}

fn constant_return_gate(q: &GraphQuantities, c: &BoundConstants) -> Result<(), String> {
    t_mix_gate(q, c)?;
    match q.returns {
        Some(r) if r.constant_return_ratio <= c.gate_returns => Ok(()),
        Some(r) => Err(format!(
            "gate: return ratio {:.3} exceeds {}",
            r.constant_return_ratio, c.gate_returns
        )),
        None => Err("gate: return sums unavailable".into()),
    }
}

fn subharmonic_gate(q: &GraphQuantities, c: &BoundConstants) -> Result<(), String> {
    let t_mix_ok = matches!(q.t_mix, Some(t) if t.value <= c.gate_t_mix * q.n as f64);
    if !t_mix_ok {
        return Err("gate: t_mix unavailable or above the linear gate".into());
    }
    match q.returns {
        Some(r) if r.subharmonic_return_ratio <= c.gate_returns => Ok(()),
        Some(r) => Err(format!(
            "gate: sub-harmonic return ratio {:.3} exceeds {}",
            r.subharmonic_return_ratio, c.gate_returns
        )),
        None => Err("gate: return sums unavailable".into()),
    }
}

/// `max_v E_pi[tau_v] <= 20 m sqrt(t_rel + 1) / d_min`.
pub fn eval_hitting_relaxation(q: &GraphQuantities) -> BoundReport {
    let c = check(
        "stationary_hitting_relaxation",
        q,
        1,
        None,
        Direction::Upper,
        1.0,
        false,
    );
    match (q.max_stationary_hitting, q.t_rel) {
        (Some(h), Some(t)) => c.evaluate(
            h,
            Quantity::exact(20.0 * q.m * (t.value + 1.0).sqrt() / q.d_min as f64),
            "",
        ),
        _ => c.not_evaluable("hitting or relaxation time unavailable"),
    }
}

/// `t_cov^(k)(pi) >= c (n/k) ln n`, evaluated only for `k <= c n ln n`.
pub fn eval_stationary_lower(q: &GraphQuantities, k: u64, lhs: Quantity, c: &BoundConstants) -> BoundReport {
    let n = q.n as f64;
    let chk = check(
        "stationary_lower_general",
        q,
        k,
        None,
        Direction::Lower,
        c.general_lower,
        false,
    );
    if k as f64 > c.general_lower * n * n.ln() {
        return chk.not_evaluable("regime guard: k > c n ln n");
    }
    chk.evaluate(lhs, Quantity::exact(n / k as f64 * n.ln()), "")
}

/// Worst-case cover time against `16 min_{k_tilde} max(partial mixing,
/// stationary cover of k_tilde walks)` over the available grid. The chosen
/// `k_tilde` is the minimiser.
pub fn eval_char_upper(q: &GraphQuantities, k: u64, worst_case: Quantity) -> BoundReport {
    let mut best: Option<(u64, Quantity)> = None;
    for e in q.partial.iter().filter(|e| e.k == k && e.k_tilde < k) {
        let (Some(mix), Some(cov)) = (e.partial_mixing, q.stationary_cover_of(e.k_tilde)) else {
            continue;
        };
        let larger = if mix.value >= cov.value { mix } else { cov };
        if best.is_none_or(|(_, b)| larger.value < b.value) {
            best = Some((e.k_tilde, larger));
        }
    }
    match best {
        Some((kt, rhs)) => check("char_upper_min_max", q, k, Some(kt), Direction::Upper, 16.0, false).evaluate(
            worst_case,
            rhs,
            "single-source worst case",
        ),
        None => {
            check("char_upper_min_max", q, k, None, Direction::Upper, 16.0, false).not_evaluable("empty k_tilde grid")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerVariant {
    /// `(1/16) max min(t_large_hit, 1/(k_tilde pi_max))`
    Hit,
    /// Regular graphs: `C max_{k_tilde >= n^delta} min(t_large_hit, n ln n / k_tilde)`
    Regular,
    /// `(1/4) max min(t_large_hit, t_large_cov)`
    Cover,
}

/// Worst-case cover time against a max-min lower characterization. For the
/// cover variant, `large_cover` lists `(k_tilde, set cover time)` estimates.
pub fn eval_char_lower(
    q: &GraphQuantities,
    k: u64,
    worst_case: Quantity,
    variant: LowerVariant,
    large_cover: &[(u64, Quantity)],
    c: &BoundConstants,
) -> BoundReport {
    let n = q.n as f64;
    let (id, constant, advisory) = match variant {
        LowerVariant::Hit => ("char_lower_hit", 1.0 / 16.0, false),
        LowerVariant::Regular => ("char_lower_regular", c.regular_lower, true),
        LowerVariant::Cover => ("char_lower_cover", 0.25, true),
    };
    if variant == LowerVariant::Regular && !q.regular {
        return check(id, q, k, None, Direction::Lower, constant, advisory).not_evaluable("graph is not regular");
    }
    let mut best: Option<(u64, Quantity)> = None;
    for e in q.partial.iter().filter(|e| e.k == k && e.k_tilde < k) {
        let Some(hit) = e.large_hit else { continue };
        let kt = e.k_tilde as f64;
        let other = match variant {
            LowerVariant::Hit => Quantity::exact(1.0 / (kt * q.pi_max)),
            LowerVariant::Regular => {
                if kt < n.powf(c.regular_delta) {
                    continue;
                }
                Quantity::exact(n * n.ln() / kt)
            }
            LowerVariant::Cover => match large_cover.iter().find(|(x, _)| *x == e.k_tilde) {
                Some((_, q)) => *q,
                None => continue,
            },
        };
        let smaller = if hit.value <= other.value { hit } else { other };
        if best.is_none_or(|(_, b)| smaller.value > b.value) {
            best = Some((e.k_tilde, smaller));
        }
    }
    match best {
        Some((kt, rhs)) => check(id, q, k, Some(kt), Direction::Lower, constant, advisory).evaluate(
            worst_case,
            rhs,
            "single-source worst case",
        ),
        None => check(id, q, k, None, Direction::Lower, constant, advisory).not_evaluable("no usable k_tilde"),
    }
}

/// Ceiling of `log_4(x)` for `x >= 1`, computed without floating-point
/// rounding at exact powers of four.
fn ceil_log4(x: f64) -> f64 {
    let mut e = 0;
    let mut p = 1.0;
    while p < x * (1.0 - 1e-12) {
        p *= 4.0;
        e += 1;
    }
    e as f64
}

/// Sandwich bounds relating partial mixing and large-hit times to `t_mix`.
pub fn eval_partial_mixing_bounds(q: &GraphQuantities, k_tilde: u64, k: u64, c: &BoundConstants) -> Vec<BoundReport> {
    let mut out = Vec::new();
    let Some(e) = q.partial_entry(k_tilde, k) else {
        return out;
    };
    let (kt, kf) = (k_tilde as f64, k as f64);
    let ctx = |id, dir, constant, advisory| check(id, q, k, Some(k_tilde), dir, constant, advisory);

    let doubling = ctx("partial_mixing_upper_doubling", Direction::Upper, 1.0, false);
    out.push(match (e.partial_mixing, q.t_mix) {
        (Some(lhs), Some(tm)) => {
            let rhs = 2.0 * tm.value * ceil_log4(4.0 * kf / (kf - kt));
            doubling.evaluate(lhs, Quantity::exact(rhs), "base-4 logarithm")
        }
        _ => doubling.not_evaluable("partial mixing or t_mix not reached"),
    });

    let threshold = ctx("partial_mixing_lower_threshold", Direction::Lower, 1.0, false);
    out.push(match (e.partial_mixing, e.mixing_at_threshold) {
        (Some(lhs), Some(rhs)) => threshold.evaluate(lhs, rhs, ""),
        _ => threshold.not_evaluable("profile did not reach the threshold"),
    });

    let linear = ctx("partial_mixing_lower_linear", Direction::Lower, c.linear_lower, true);
    out.push(match (e.partial_mixing, q.t_mix) {
        (Some(lhs), Some(tm)) => linear.evaluate(lhs, Quantity::exact(kt / kf * tm.value), ""),
        _ => linear.not_evaluable("partial mixing or t_mix not reached"),
    });

    let hit_linear = ctx("large_hit_lower_linear", Direction::Lower, c.linear_lower, true);
    out.push(match (e.large_hit, q.t_mix) {
        (Some(lhs), Some(tm)) => hit_linear.evaluate(lhs, Quantity::exact(kt / kf * tm.value), ""),
        _ => hit_linear.not_evaluable("large-hit time or t_mix unavailable"),
    });

    let hit_upper = ctx("large_hit_upper_mixing", Direction::Upper, c.large_hit_upper, true);
    out.push(match (e.large_hit, q.t_mix) {
        (Some(lhs), Some(tm)) => hit_upper.evaluate(lhs, Quantity::exact(tm.value * (kf / (kf - kt)).ln()), ""),
        _ => hit_upper.not_evaluable("large-hit time or t_mix unavailable"),
    });

    if 4 * k_tilde < k {
        let four = q.partial_entry(4 * k_tilde, k).and_then(|e| e.partial_mixing);
        let plus_one = ctx("large_hit_upper_partial_mixing", Direction::Upper, 1.0, false);
        let doubled = ctx("large_hit_upper_partial_mixing_doubled", Direction::Upper, 2.0, false);
        match (e.large_hit, four) {
            (Some(lhs), Some(m4)) => {
                out.push(plus_one.evaluate(lhs, Quantity::exact(m4.value + 1.0), "rhs is t_mix(4 k_tilde, k) + 1"));
                out.push(doubled.evaluate(lhs, m4, "rhs is t_mix(4 k_tilde, k)"));
            }
            _ => {
                out.push(plus_one.not_evaluable("needs large-hit and partial mixing at 4 k_tilde"));
                out.push(doubled.not_evaluable("needs large-hit and partial mixing at 4 k_tilde"));
            }
        }
    }
    out
}

/// Conductance lower bound on the large-hit time and family-specific
/// partial-mixing upper bounds.
pub fn eval_geometric_bounds(
    q: &GraphQuantities,
    k_tilde: u64,
    k: u64,
    family: &FamilySpec,
    c: &BoundConstants,
) -> Vec<BoundReport> {
    let mut out = Vec::new();
    let Some(e) = q.partial_entry(k_tilde, k) else {
        return out;
    };
    let (kt, kf, n) = (k_tilde as f64, k as f64, q.n as f64);
    let ctx = |id, dir, constant, advisory| check(id, q, k, Some(k_tilde), dir, constant, advisory);

    let cond = ctx("large_hit_lower_conductance", Direction::Lower, 1.0, false);
    out.push(match (e.large_hit, q.conductance) {
        (Some(lhs), Some(phi)) => cond.evaluate(
            lhs,
            Quantity::with_provenance(kt / kf * 2.0 / phi.value, phi.provenance),
            "",
        ),
        _ => cond.not_evaluable("large-hit time or conductance unavailable"),
    });

    let log_ratio = (kf / kt).ln();
    match family {
        FamilySpec::Cycle { .. } => {
            let r = ctx("cycle_partial_mixing", Direction::Upper, 1.0, false);
            out.push(match e.partial_mixing {
                Some(lhs) => r.evaluate(lhs, Quantity::exact(n * n / log_ratio), "natural logarithm"),
                None => r.not_evaluable("partial mixing not reached"),
            });
        }
        FamilySpec::Torus { d, .. } => {
            let r = ctx("torus_partial_mixing", Direction::Upper, c.family, true);
            out.push(if 2 * k_tilde > k {
                r.not_evaluable("needs k_tilde <= k/2")
            } else {
                match e.partial_mixing {
                    Some(lhs) => r.evaluate(lhs, Quantity::exact(n.powf(2.0 / *d as f64) / log_ratio), ""),
                    None => r.not_evaluable("partial mixing not reached"),
                }
            });
        }
        FamilySpec::BinaryTree { .. } => {
            let r = ctx("tree_partial_mixing", Direction::Upper, c.family, true);
            out.push(if 2 * k_tilde > k {
                r.not_evaluable("needs k_tilde <= k/2")
            } else {
                match e.partial_mixing {
                    Some(lhs) => r.evaluate(lhs, Quantity::exact(kt / kf * n + n.ln()), ""),
                    None => r.not_evaluable("partial mixing not reached"),
                }
            });
        }
        _ => {}
    }
    out
}

/// Displacement tail on a `d`-dimensional torus (cycle for `d = 1`):
/// `P(max_{s <= t} dist(X_0, X_s) >= D) <= 2d exp(-D^2 / (2 t d^2))`.
pub fn eval_displacement(
    family: &str,
    n: usize,
    d: usize,
    distance: usize,
    t: u64,
    observed: TailFrequency,
) -> BoundReport {
    let q = GraphQuantities {
        family: family.to_string(),
        n,
        m: 0.0,
        d_min: 0,
        pi_max: 0.0,
        pi_min: 0.0,
        regular: true,
        t_rel: None,
        t_mix: None,
        max_stationary_hitting: None,
        conductance: None,
        partial: Vec::new(),
        stationary_cover: Vec::new(),
        returns: None,
    };
    let c = check("displacement_tail", &q, 1, None, Direction::Upper, 1.0, false);
    let side = (n as f64).powf(1.0 / d as f64);
    if distance as f64 > side / 2.0 || t == 0 {
        return c.not_evaluable("needs D <= side/2 and t >= 1");
    }
    let df = d as f64;
    let dist = distance as f64;
    let rhs = 2.0 * df * (-dist * dist / (2.0 * t as f64 * df * df)).exp();
    c.evaluate(
        Quantity::estimated(observed.frequency, observed.std_error),
        Quantity::exact(rhs),
        format!("D={distance}, t={t}"),
    )
}

/// Whether `sum_{s<=t} P^s(u,u) >= 32 t pi(u) k` holds for every `u` in `set`.
pub fn oblivious_hypothesis(p: &TransitionMatrix, set: &[usize], t: u64, k: u64) -> bool {
    set.iter()
        .all(|&u| return_sum(p, u, t) >= 32.0 * t as f64 * p.stationary()[u] * k as f64)
}

/// Set cover lower bound for oblivious starts: when the return hypothesis
/// holds with `k >= 100`, `k/8` walks need at least `t/5` steps on average.
pub fn eval_oblivious_set_cover(
    q: &GraphQuantities,
    k: u64,
    t: u64,
    hypothesis: bool,
    estimate: Quantity,
) -> BoundReport {
    let c = check(
        "set_cover_lower_oblivious",
        q,
        k,
        Some(k / 8),
        Direction::Lower,
        0.2,
        false,
    );
    if k < 100 || t < 2 {
        return c.not_evaluable("needs k >= 100 and t >= 2");
    }
    if !hypothesis {
        return c.not_evaluable("return-sum hypothesis fails");
    }
    c.evaluate(estimate, Quantity::exact(t as f64), format!("t={t}"))
}

/// Leaf-to-root hitting on the binary tree: `P_leaf(tau_root <= t) = O(t/n)`.
pub fn eval_tree_leaf_root(q: &GraphQuantities, t: u64, probability: f64, c: &BoundConstants) -> BoundReport {
    check("tree_leaf_root_hit", q, 1, None, Direction::Upper, c.family, true).evaluate(
        Quantity::exact(probability),
        Quantity::exact(t as f64 / q.n as f64),
        format!("t={t}"),
    )
}

/// Hypercube large-hit lower bound `Omega(ln n ln ln n)` at `k = n`.
pub fn eval_hypercube_large_hit(q: &GraphQuantities, k_tilde: u64, large_hit: Quantity, constant: f64) -> BoundReport {
    let n = q.n as f64;
    check(
        "hypercube_large_hit_lower",
        q,
        q.n as u64,
        Some(k_tilde),
        Direction::Lower,
        constant,
        true,
    )
    .evaluate(large_hit, Quantity::exact(n.ln() * n.ln().ln()), "")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{exact_quantities, ExactOptions};
    use crate::graph::build_family;

    fn cycle_quantities(n: usize, pairs: Vec<(u64, u64)>) -> GraphQuantities {
        let spec = FamilySpec::Cycle { n };
        let g = build_family(&spec).unwrap();
        exact_quantities(
            &g,
            Some(&spec),
            &ExactOptions {
                pairs,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn ceil_log4_is_exact_at_powers() {
        assert_eq!(ceil_log4(1.0), 0.0);
        assert_eq!(ceil_log4(4.0), 1.0);
        assert_eq!(ceil_log4(4.5), 2.0);
        assert_eq!(ceil_log4(16.0), 2.0);
    }

    #[test]
    fn cycle64_degree_bound_rhs() {
        let q = cycle_quantities(64, vec![]);
        let r = &eval_stationary_upper(&q, 8, Quantity::estimated(500.0, 10.0), &BoundConstants::default())[0];
        // m = 64 edges, d_min = 2: (64 / 16)^2 ln^2 64
        let want = 64.0f64.ln().powi(2) * 16.0;
        assert!((r.rhs.unwrap() - want).abs() < 1e-9);
        assert_eq!(r.pass, Some(true));
    }

    #[test]
    fn general_lower_guard() {
        let q = cycle_quantities(64, vec![]);
        let c = BoundConstants::default();
        let r = eval_stationary_lower(&q, 3, Quantity::exact(1.0), &c);
        assert_eq!(r.pass, None);
        let r = eval_stationary_lower(&q, 1, Quantity::exact(30.0), &c);
        assert_eq!(r.pass, Some(true));
    }

    #[test]
    fn cycle4_char_lower_hit() {
        let q = cycle_quantities(4, vec![(1, 4), (2, 4), (3, 4)]);
        let c = BoundConstants::default();
        let r = eval_char_lower(&q, 4, Quantity::exact(10.0), LowerVariant::Hit, &[], &c);
        assert!(r.rhs.unwrap() >= 3.0);
        let e = q.partial_entry(1, 4).unwrap();
        // (1/16) min(3, 1/(1 * 1/4)) = 3/16 at k_tilde = 1
        assert_eq!(e.large_hit.unwrap().value, 3.0);
        assert_eq!(r.pass, Some(true));
    }

    #[test]
    fn char_upper_argmin_is_scale_invariant() {
        let mut q = cycle_quantities(16, vec![(1, 8), (2, 8), (4, 8)]);
        q.stationary_cover = vec![
            (1, Quantity::exact(400.0)),
            (2, Quantity::exact(150.0)),
            (4, Quantity::exact(60.0)),
        ];
        let a = eval_char_upper(&q, 8, Quantity::exact(100.0));
        for e in q.partial.iter_mut() {
            e.partial_mixing = e.partial_mixing.map(|x| Quantity::exact(x.value * 3.0));
        }
        for (_, c) in q.stationary_cover.iter_mut() {
            c.value *= 3.0;
        }
        let b = eval_char_upper(&q, 8, Quantity::exact(100.0));
        assert_eq!(a.k_tilde, b.k_tilde);
        assert!((b.rhs.unwrap() - 3.0 * a.rhs.unwrap()).abs() < 1e-9);
    }

    #[test]
    fn partial_mixing_bounds_hold_on_cycle() {
        let pairs: Vec<(u64, u64)> = (1..16).map(|kt| (kt, 16)).collect();
        let q = cycle_quantities(12, pairs.clone());
        let c = BoundConstants::default();
        for (kt, k) in pairs {
            for r in eval_partial_mixing_bounds(&q, kt, k, &c) {
                assert!(!r.is_hard_failure(), "{r:?}");
            }
        }
    }

    #[test]
    fn displacement_rhs() {
        let r = eval_displacement("torus", 1024, 2, 8, 16, TailFrequency::new(0, 100));
        assert!((r.rhs.unwrap() - 4.0 * (-0.5f64).exp()).abs() < 1e-12);
        assert_eq!(r.pass, Some(true));
        assert_eq!(
            eval_displacement("torus", 64, 2, 8, 16, TailFrequency::new(0, 10)).pass,
            None
        );
    }
}
