//! Seeded random streams.
//!
//! Every stochastic routine in the crate draws from an [`RngStream`], a thin
//! wrapper around ChaCha8 seeded through `SeedableRng::seed_from_u64`. ChaCha8
//! output is specified bit-for-bit, so a seed reproduces the same run on every
//! platform.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Clone, Debug)]
pub struct RngStream {
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform draw in `[-1, 1)`, the `rand(-1,1)` coefficient of the
    /// neighbourhood search operators.
    pub fn symmetric(&mut self) -> f64 {
        2.0 * self.unit() - 1.0
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        self.inner.random_range(0..n)
    }

    /// Uniform index in `0..n` different from `skip`. Requires `n >= 2`.
    pub fn index_except(&mut self, n: usize, skip: usize) -> usize {
        debug_assert!(n >= 2 && skip < n);
        let j = self.index(n - 1);
        if j >= skip {
            j + 1
        } else {
            j
        }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        for _ in 0..100 {
            assert_eq!(a.unit().to_bits(), b.unit().to_bits());
            assert_eq!(a.standard_normal().to_bits(), b.standard_normal().to_bits());
        }
    }

    #[test]
    fn ranges_hold() {
        let mut r = RngStream::new(1);
        for _ in 0..10_000 {
            let s = r.symmetric();
            assert!((-1.0..1.0).contains(&s));
            let u = r.uniform(-100.0, 100.0);
            assert!((-100.0..100.0).contains(&u));
            let j = r.index_except(5, 2);
            assert!(j < 5 && j != 2);
        }
    }

    #[test]
    fn index_except_covers_all_others() {
        let mut r = RngStream::new(9);
        let mut seen = [false; 4];
        for _ in 0..1000 {
            seen[r.index_except(4, 1)] = true;
        }
        assert_eq!(seen, [true, false, true, true]);
    }
}
