use approx::assert_relative_eq;
use proptest::prelude::*;

use multiwalk::chain::{distance_profile, transition_matrix, CrossingSearch, Distance, Laziness};
use multiwalk::fmt_sig;
use multiwalk::graph::{stationary_distribution, WeightedGraph};
use multiwalk::harness::fit_loglog_slope;
use multiwalk::sim::{estimate_cover_time, StartSpec, TrialPlan};

/// Connected weighted graph: a random spanning tree plus extra edges.
fn connected_graph() -> impl Strategy<Value = WeightedGraph> {
    (2usize..9)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            let extra = proptest::collection::vec((0..n, 0..n, 0.1f64..5.0), 0..2 * n);
            let weights = proptest::collection::vec(0.1f64..5.0, n - 1);
            (Just(n), parents, extra, weights)
        })
        .prop_map(|(n, parents, extra, weights)| {
            let mut edges: Vec<(usize, usize, f64)> = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for (v, (p, w)) in parents.into_iter().zip(weights).enumerate() {
                seen.insert((p, v + 1));
                edges.push((p, v + 1, w));
            }
            for (a, b, w) in extra {
                let key = (a.min(b), a.max(b));
                if a != b && seen.insert(key) {
                    edges.push((key.0, key.1, w));
                }
            }
            WeightedGraph::from_edges(n, edges).expect("spanning tree keeps it connected")
        })
}

fn laziness() -> impl Strategy<Value = Laziness> {
    prop_oneof![Just(Laziness::Lazy), Just(Laziness::NonLazy)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transition_rows_are_stochastic_and_reversible(g in connected_graph(), lz in laziness()) {
        let p = transition_matrix(&g, lz).unwrap();
        prop_assert!(p.row_sum_residual() < 1e-12);
        prop_assert!(p.reversibility_residual() < 1e-12);
        let pi = stationary_distribution(&g);
        assert_relative_eq!(pi.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        let mut next = vec![0.0; pi.len()];
        p.propagate(&pi, &mut next);
        for (a, b) in pi.iter().zip(&next) {
            assert_relative_eq!(*a, *b, epsilon = 1e-12);
        }
    }

    #[test]
    fn tv_is_below_separation_and_both_decay(g in connected_graph()) {
        let p = transition_matrix(&g, Laziness::Lazy).unwrap();
        let prof = distance_profile(&p, 64).unwrap();
        for t in 0..prof.tv.len() {
            prop_assert!(prof.tv[t] <= prof.separation[t] + 1e-12);
            if t > 0 {
                prop_assert!(prof.tv[t] <= prof.tv[t - 1] + 1e-12);
                prop_assert!(prof.separation[t] <= prof.separation[t - 1] + 1e-12);
            }
        }
    }

    #[test]
    fn crossing_search_matches_the_profile(g in connected_graph(), k in 2u64..17) {
        let p = transition_matrix(&g, Laziness::Lazy).unwrap();
        let prof = distance_profile(&p, 512).unwrap();
        let mut search = CrossingSearch::new(&p, 512);
        for kt in 1..k {
            prop_assert_eq!(search.partial_mixing_time(kt, k).unwrap(), prof.partial_mixing_time(kt, k).unwrap());
        }
        prop_assert_eq!(search.first_below(Distance::TotalVariation, 0.25).map(|t| t.max(1)),
                        prof.mixing_time(0.25).map(|t| t.max(1)));
    }

    #[test]
    fn estimates_repeat_under_the_same_seed(g in connected_graph(), k in 1usize..4, seed in any::<u64>()) {
        let plan = TrialPlan::new(8, seed);
        let a = estimate_cover_time(&g, k, &StartSpec::StationaryProduct, Laziness::Lazy, &plan).unwrap();
        let b = estimate_cover_time(&g, k, &StartSpec::StationaryProduct, Laziness::Lazy, &plan).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn formatted_floats_round_trip_to_nine_digits(x in -1e20f64..1e20) {
        let back: f64 = fmt_sig(x).parse().unwrap();
        assert_relative_eq!(back, x, max_relative = 1e-8);
    }

    #[test]
    fn slope_fit_recovers_exact_power_laws(a in -3.0f64..3.0, c in 0.01f64..100.0) {
        let pts: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0, 32.0].iter().map(|&x| (x, c * f64::powf(x, a))).collect();
        let fit = fit_loglog_slope(&pts).unwrap();
        assert_relative_eq!(fit.slope, a, epsilon = 1e-9);
        prop_assert!(fit.residual < 1e-9);
    }
}
