"""Smoke test for the multiwalk Python extension.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import json
import math

import multiwalk


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    # Hand-built graph: a path 0-1-2 with one heavier edge.
    g = multiwalk.Graph(3, [(0, 1), (1, 2, 3.0)])
    assert g.n == 3 and g.edge_count == 2
    pi = g.stationary()
    assert close(sum(pi), 1.0)
    assert close(pi[1], 4.0 / 8.0)

    p = multiwalk.transition_matrix(g)
    for row in p:
        assert close(sum(row), 1.0)
    assert close(p[0][0], 0.5)

    cycle = multiwalk.Graph.family("cycle:16")
    assert repr(cycle) == "Graph.family('cycle:16')"
    tv, sep = multiwalk.distance_profile(cycle, 200)
    assert len(tv) == 201
    assert all(d <= s + 1e-12 for d, s in zip(tv, sep))

    t_mix = multiwalk.mixing_time(cycle)
    assert t_mix == next(t for t in range(1, len(tv)) if tv[t] <= 0.25 + 1e-12)
    t_part = multiwalk.partial_mixing_time(cycle, 1, 4)
    assert t_part is not None and t_part <= t_mix

    q = multiwalk.analyze(cycle, k=[2, 4])
    assert q["n"] == 16
    assert len(q["partial"]) == 1 + 3

    est = multiwalk.estimate_cover_time(cycle, 4, trials=100, seed=7)
    again = multiwalk.estimate_cover_time(cycle, 4, trials=100, seed=7)
    assert est == again
    single = multiwalk.estimate_cover_time(cycle, 1, trials=200, seed=7)
    # A single lazy walk covers the n-cycle in n(n-1) steps on average.
    assert abs(single["mean"] - 2 * 16 * 15 / 2) < 4 * single["std_error"]
    assert est["mean"] < single["mean"]

    start = multiwalk.estimate_cover_time(cycle, 2, start="vertex:0", trials=50, seed=1)
    assert start["trials"] == 50
    try:
        multiwalk.estimate_cover_time(cycle, 2, start="vertex:99")
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-range start accepted")

    config = {
        "families": ["cycle:12"],
        "k_grid": [1, 2, 4],
        "trials": 40,
        "master_seed": 3,
        "suites": ["stationary"],
    }
    bundle = multiwalk.run_experiment(json.dumps(config))
    assert len(bundle["estimates"]) > 0 and len(bundle["bounds"]) > 0

    outcome = multiwalk.run_criterion(7)
    assert outcome["id"] == 7 and isinstance(outcome["pass"], bool)
    print("criterion 7:", "PASS" if outcome["pass"] else "FAIL", outcome["summary"])

    assert math.isfinite(est["mean"])
    print("python smoke test ok")


if __name__ == "__main__":
    main()
