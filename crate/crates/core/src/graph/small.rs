//! Exhaustive enumeration of small connected graphs up to isomorphism.
//!
//! Every connected graph on `n` vertices has a non-cut vertex, so it arises
//! from a connected graph on `n - 1` vertices plus one vertex with a nonempty
//! neighbourhood. Candidates are deduplicated by a canonical code: colour
//! refinement splits the vertices into ordered cells, then the maximum
//! adjacency code over all cell-respecting orderings is taken.

use std::collections::BTreeSet;

use super::weighted::WeightedGraph;
use crate::error::{Error, Result};

pub const MAX_ENUMERATED_ORDER: usize = 8;

/// All connected unit-weight graphs on `n` vertices, one per isomorphism class,
/// in a deterministic order.
pub fn connected_graphs(n: usize) -> Result<Vec<WeightedGraph>> {
    if n == 0 || n > MAX_ENUMERATED_ORDER {
        return Err(Error::GuardExceeded {
            what: "small graph enumeration",
            size: n,
            limit: MAX_ENUMERATED_ORDER,
            hint: "",
        });
    }
    let codes = codes_for(n);
    codes
        .into_iter()
        .map(|code| {
            let edges = decode(n, code).into_iter().map(|(u, v)| (u, v, 1.0));
            WeightedGraph::from_edges(n, edges)
        })
        .collect()
}

/// All connected graphs with `lo <= n <= hi` vertices.
pub fn connected_graphs_up_to(lo: usize, hi: usize) -> Result<Vec<WeightedGraph>> {
    let mut out = Vec::new();
    for n in lo..=hi {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}

fn codes_for(n: usize) -> BTreeSet<u64> {
    if n == 1 {
        return BTreeSet::from([0]);
    }
    let mut out = BTreeSet::new();
    for code in codes_for(n - 1) {
        let base = rows(n - 1, code);
        for nb in 1u16..(1 << (n - 1)) {
            let mut adj = base.clone();
            adj.push(nb);
            for (u, row) in adj.iter_mut().enumerate().take(n - 1) {
                if nb >> u & 1 == 1 {
                    *row |= 1 << (n - 1);
                }
            }
            out.insert(canonical_code(&adj));
        }
    }
    out
}

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    // bit index of pair (i, j), i < j, in lexicographic order
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

fn decode(n: usize, code: u64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if code >> pair_bit(n, i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn rows(n: usize, code: u64) -> Vec<u16> {
    let mut adj = vec![0u16; n];
    for (i, j) in decode(n, code) {
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    adj
}

fn refine(adj: &[u16]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = adj.iter().map(|r| r.count_ones() as usize).collect();
    let mut distinct = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        colors = sigs.iter().map(|s| uniq.binary_search(s).unwrap()).collect();
        if uniq.len() == distinct {
            return colors;
        }
        distinct = uniq.len();
    }
}

fn canonical_code(adj: &[u16]) -> u64 {
    let n = adj.len();
    let colors = refine(adj);
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by_key(|&v| colors[v]);
    let slot_colors: Vec<usize> = slots.iter().map(|&v| colors[v]).collect();
    let mut order = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut best = 0u64;
    search(adj, &colors, &slot_colors, 0, &mut order, &mut used, &mut best);
    best
}

fn search(
    adj: &[u16],
    colors: &[usize],
    slot_colors: &[usize],
    pos: usize,
    order: &mut [usize],
    used: &mut [bool],
    best: &mut u64,
) {
    let n = adj.len();
    if pos == n {
        let mut code = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                if adj[order[i]] >> order[j] & 1 == 1 {
                    code |= 1 << pair_bit(n, i, j);
                }
            }
        }
        *best = (*best).max(code);
        return;
    }
    for v in 0..n {
        if !used[v] && colors[v] == slot_colors[pos] {
            used[v] = true;
            order[pos] = v;
            search(adj, colors, slot_colors, pos + 1, order, used, best);
            used[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // OEIS A001349
        let expected = [1, 1, 2, 6, 21, 112, 853];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(connected_graphs(i + 1).unwrap().len(), e, "n = {}", i + 1);
        }
    }

    #[test]
    fn canonical_code_is_label_invariant() {
        // path 0-1-2-3 under two labelings
        let a = vec![0b0010, 0b0101, 0b1010, 0b0100];
        let b = vec![0b1100, 0b1000, 0b0001, 0b0011]; // 2-0-3-1
        assert_eq!(canonical_code(&a), canonical_code(&b));
        let star = vec![0b1110, 0b0001, 0b0001, 0b0001];
        assert_ne!(canonical_code(&a), canonical_code(&star));
    }

    #[test]
    fn guard() {
        assert!(connected_graphs(9).is_err());
        assert!(connected_graphs(0).is_err());
    }
}
