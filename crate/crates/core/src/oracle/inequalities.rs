//! Randomized and grid checks of two elementary inequalities.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A tail `P(X > x)` for `x = 0..len`, zero beyond, with an integer `c`
/// such that `P(X > l c) <= P(X > c)^l` for all `l >= 0`.
#[derive(Debug, Clone)]
pub struct SubmultiplicativeTail {
    pub tail: Vec<f64>,
    pub c: usize,
}

impl SubmultiplicativeTail {
    pub fn mean(&self) -> f64 {
        self.tail.iter().sum()
    }

    pub fn exceeds(&self, a: f64) -> f64 {
        if a < 0.0 {
            return 1.0;
        }
        self.tail.get(a.floor() as usize).copied().unwrap_or(0.0)
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let c = rng.random_range(1..=12);
        let len = c * rng.random_range(2..=12);
        let mut tail = Vec::with_capacity(len);
        let mut g: f64 = 1.0;
        for _ in 0..len {
            g *= rng.random_range(0.5..=1.0);
            tail.push(g);
        }
        let base = tail[c];
        for l in 2..=len / c {
            if l * c < len {
                tail[l * c] = tail[l * c].min(base.powi(l as i32));
            }
        }
        for x in 1..len {
            tail[x] = tail[x].min(tail[x - 1]);
        }
        Self { tail, c }
    }

    pub fn is_submultiplicative(&self) -> bool {
        let base = self.exceeds(self.c as f64);
        (0..=self.tail.len() / self.c + 1).all(|l| self.exceeds((l * self.c) as f64) <= base.powi(l as i32) + 1e-15)
    }
}

/// Checks `P(X > a) >= (b - a) / (b + 2c)` on random instances with
/// `b <= E[X]` and `0 <= a < c`; returns the number of violations.
pub fn check_tail_lower_bound(instances: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    for _ in 0..instances {
        let x = SubmultiplicativeTail::random(&mut rng);
        debug_assert!(x.is_submultiplicative());
        let b = x.mean() * rng.random_range(0.0..=1.0);
        let a = rng.random_range(0.0..x.c as f64);
        let c = x.c as f64;
        if x.exceeds(a) < (b - a) / (b + 2.0 * c) - 1e-12 {
            violations += 1;
        }
    }
    violations
}

/// Checks `(1 + x/n)^n >= e^x (1 - x^2/n)` for `n = 1..=n_max` on a grid of
/// `steps + 1` points covering `-n <= x <= n`; returns the number of violations.
pub fn check_exponential_approximation(n_max: u32, steps: u32) -> usize {
    let mut violations = 0;
    for n in 1..=n_max {
        let nf = n as f64;
        for i in 0..=steps {
            let x = -nf + 2.0 * nf * i as f64 / steps as f64;
            let lhs = (1.0 + x / nf).powi(n as i32);
            let rhs = x.exp() * (1.0 - x * x / nf);
            if lhs < rhs - 1e-12 * rhs.abs().max(1.0) {
                violations += 1;
            }
        }
    }
    violations
}
