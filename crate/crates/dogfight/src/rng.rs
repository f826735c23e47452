//! Seedable random streams with a fixed draw discipline.
//!
//! Every optimizer in this crate draws from [`RunRng`], a ChaCha12 stream
//! wrapped so that the mapping from raw output to uniform doubles is pinned
//! here rather than inherited from `rand`'s distribution internals. A run is
//! reproducible from its seed alone, and per-run streams for a battery are
//! derived by mixing the run index into the root seed, so parallel and serial
//! executions of the same battery produce identical results.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for run `index` of an experiment rooted at `root_seed`.
///
/// Streams for distinct indices are independent for practical purposes, and
/// the derivation depends only on (root, index), never on execution order.
pub fn derive_run_seed(root_seed: u64, index: u64) -> u64 {
    let mut s = root_seed ^ index.wrapping_mul(GOLDEN_GAMMA);
    splitmix64(&mut s)
}

/// Deterministic uniform random stream for one optimizer run.
#[derive(Clone, Debug)]
pub struct RunRng {
    inner: ChaCha12Rng,
}

impl RunRng {
    pub fn new(seed: u64) -> Self {
        let mut state = seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        Self {
            inner: ChaCha12Rng::from_seed(key),
        }
    }

    /// Uniform double in `[0, 1)` built from the top 53 bits of the stream.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform double in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform index in `0..n`. Panics if `n == 0`.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index() requires a non-empty range");
        let i = (self.uniform() * n as f64) as usize;
        i.min(n - 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}

/// Returns the deterministic stream for `seed` (contract entry point).
pub fn seeded_rng(seed: u64) -> RunRng {
    RunRng::new(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_identical_stream() {
        let mut a = seeded_rng(42);
        let mut b = seeded_rng(42);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn different_seeds_diverge_quickly() {
        let mut a = seeded_rng(1);
        let mut b = seeded_rng(2);
        let diverged = (0..10).any(|_| a.next_u64() != b.next_u64());
        assert!(diverged);
    }

    #[test]
    fn uniform_mean_close_to_half() {
        let mut rng = seeded_rng(7);
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| rng.uniform()).sum::<f64>() / n as f64;
        assert!((0.49..=0.51).contains(&mean), "mean {mean}");
    }

    #[test]
    fn uniform_stays_in_unit_interval() {
        let mut rng = seeded_rng(3);
        for _ in 0..10_000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn derived_streams_do_not_collide() {
        let s0 = derive_run_seed(99, 0);
        let s1 = derive_run_seed(99, 1);
        assert_ne!(s0, s1);
        // run-index derivation must not depend on draw order elsewhere
        assert_eq!(derive_run_seed(99, 1), s1);
    }

    #[test]
    fn index_covers_range() {
        let mut rng = seeded_rng(11);
        let mut seen = [false; 5];
        for _ in 0..500 {
            seen[rng.index(5)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
