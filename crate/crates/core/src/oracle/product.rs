//! The `k`-walk process as a Markov chain on (positions, visited set).

use nalgebra::{DMatrix, DVector};

use crate::chain::{transition_matrix, Laziness, TransitionMatrix};
use crate::error::{invalid, Error, Result};
use crate::graph::{stationary_distribution, WeightedGraph};
use crate::sim::{SetMeasure, StartSpec};

/// Largest `n^k * 2^n` state space the product chain will build.
pub const PRODUCT_STATE_GUARD: usize = 1_000_000;
/// Largest `n^k` (per visited-set block) solved densely.
pub const PRODUCT_BLOCK_GUARD: usize = 1024;

struct Product<'a> {
    p: &'a TransitionMatrix,
    n: usize,
    k: usize,
    tuples: usize,
}

impl<'a> Product<'a> {
    fn new(p: &'a TransitionMatrix, k: usize) -> Result<Self> {
        let n = p.size();
        if k == 0 {
            return invalid("k must be at least 1");
        }
        let tuples = (n as u128).pow(k as u32);
        let states = tuples.saturating_mul(1u128 << n.min(100));
        if n >= 64 || states > PRODUCT_STATE_GUARD as u128 || tuples > PRODUCT_BLOCK_GUARD as u128 {
            return Err(Error::GuardExceeded {
                what: "product-chain state space",
                size: states.min(usize::MAX as u128) as usize,
                limit: PRODUCT_STATE_GUARD,
                hint: "; reduce n or k",
            });
        }
        Ok(Self {
            p,
            n,
            k,
            tuples: tuples as usize,
        })
    }

    fn decode(&self, mut code: usize) -> Vec<usize> {
        (0..self.k)
            .map(|_| {
                let v = code % self.n;
                code /= self.n;
                v
            })
            .collect()
    }

    fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().rev().fold(0, |acc, &v| acc * self.n + v)
    }

    fn mask_of(&self, code: usize) -> u64 {
        self.decode(code).iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Calls `f(successor_code, successor_mask_bits, probability)`.
    fn successors(&self, code: usize, f: &mut impl FnMut(usize, u64, f64)) {
        let tuple = self.decode(code);
        self.expand(&tuple, 0, 0, 1, 0, 1.0, f);
    }

    #[allow(clippy::too_many_arguments)]
    fn expand(
        &self,
        tuple: &[usize],
        i: usize,
        code: usize,
        place: usize,
        bits: u64,
        prob: f64,
        f: &mut impl FnMut(usize, u64, f64),
    ) {
        if i == tuple.len() {
            f(code, bits, prob);
            return;
        }
        for &(v, q) in self.p.row(tuple[i]) {
            self.expand(
                tuple,
                i + 1,
                code + v * place,
                place * self.n,
                bits | 1 << v,
                prob * q,
                f,
            );
        }
    }
}

/// Start distribution over position tuples.
pub fn start_distribution(graph: &WeightedGraph, k: usize, start: &StartSpec) -> Result<Vec<(Vec<usize>, f64)>> {
    let n = graph.vertex_count();
    let single: Vec<(usize, f64)> = match start {
        StartSpec::AllAtVertex { vertex } if *vertex < n => return Ok(vec![(vec![*vertex; k], 1.0)]),
        StartSpec::ExplicitTuple { vertices } if vertices.len() == k && vertices.iter().all(|&v| v < n) => {
            return Ok(vec![(vertices.clone(), 1.0)])
        }
        StartSpec::StationaryProduct => stationary_distribution(graph).into_iter().enumerate().collect(),
        StartSpec::DistributionOnSet {
            set,
            measure: SetMeasure::PointMass { vertex },
        } if set.contains(vertex) => return Ok(vec![(vec![*vertex; k], 1.0)]),
        StartSpec::DistributionOnSet {
            set,
            measure: SetMeasure::UniformOnBoundary,
        } if !set.is_empty() => {
            let mut support = graph.boundary(set);
            if support.is_empty() {
                support = set.clone();
                support.sort_unstable();
                support.dedup();
            }
            let w = 1.0 / support.len() as f64;
            support.into_iter().map(|v| (v, w)).collect()
        }
        _ => return invalid(format!("start {start} is not valid for n={n}, k={k}")),
    };
    let mut out = vec![(Vec::new(), 1.0)];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|(t, p)| {
                single.iter().map(move |&(v, q)| {
                    let mut t = t.clone();
                    t.push(v);
                    (t, p * q)
                })
            })
            .collect();
    }
    Ok(out)
}

/// Exact `E[tau_cov]` for `k` walks by solving for absorption times of the
/// product chain, one visited-set block at a time from the largest sets down.
pub fn exact_multiwalk_cover_expectation(
    graph: &WeightedGraph,
    k: usize,
    start: &StartSpec,
    laziness: Laziness,
) -> Result<f64> {
    let p = transition_matrix(graph, laziness)?;
    let chain = Product::new(&p, k)?;
    let n = chain.n;
    let full: u64 = (1u64 << n) - 1;
    let mut expect = vec![0.0; chain.tuples << n];
    let idx = |mask: u64, code: usize| (mask as usize) * chain.tuples + code;
    for mask in (1..full).rev() {
        let members: Vec<usize> = (0..chain.tuples).filter(|&c| chain.mask_of(c) & !mask == 0).collect();
        if members.is_empty() {
            continue;
        }
        let mut local = vec![usize::MAX; chain.tuples];
        for (i, &c) in members.iter().enumerate() {
            local[c] = i;
        }
        let m = members.len();
        let mut a = DMatrix::<f64>::identity(m, m);
        let mut b = DVector::<f64>::from_element(m, 1.0);
        for (i, &c) in members.iter().enumerate() {
            chain.successors(c, &mut |next, bits, q| {
                let grown = mask | bits;
                if grown == mask {
                    a[(i, local[next])] -= q;
                } else if grown != full {
                    b[i] += q * expect[idx(grown, next)];
                }
            });
        }
        let sol = a
            .lu()
            .solve(&b)
            .ok_or_else(|| Error::Singular("product-chain block".into()))?;
        for (i, &c) in members.iter().enumerate() {
            expect[idx(mask, c)] = sol[i];
        }
    }
    let mut total = 0.0;
    for (tuple, prob) in start_distribution(graph, k, start)? {
        let code = chain.encode(&tuple);
        let mask = chain.mask_of(code);
        if mask != full {
            total += prob * expect[idx(mask, code)];
        }
    }
    Ok(total)
}

/// `P(tau_cov > s)` for `s = 0..=t`, by propagating the product-chain
/// distribution.
pub fn exact_cover_tail(
    graph: &WeightedGraph,
    k: usize,
    start: &StartSpec,
    laziness: Laziness,
    t: u64,
) -> Result<Vec<f64>> {
    let p = transition_matrix(graph, laziness)?;
    let chain = Product::new(&p, k)?;
    let full: u64 = (1u64 << chain.n) - 1;
    let size = chain.tuples << chain.n;
    let mut dist = vec![0.0; size];
    for (tuple, prob) in start_distribution(graph, k, start)? {
        let code = chain.encode(&tuple);
        let mask = chain.mask_of(code);
        if mask != full {
            dist[mask as usize * chain.tuples + code] += prob;
        }
    }
    let mut tails = Vec::with_capacity(t as usize + 1);
    tails.push(dist.iter().sum());
    let mut next = vec![0.0; size];
    for _ in 0..t {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (state, &mass) in dist.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            let mask = (state / chain.tuples) as u64;
            let code = state % chain.tuples;
            chain.successors(code, &mut |succ, bits, q| {
                let grown = mask | bits;
                if grown != full {
                    next[grown as usize * chain.tuples + succ] += mass * q;
                }
            });
        }
        std::mem::swap(&mut dist, &mut next);
        tails.push(dist.iter().sum());
    }
    Ok(tails)
}
