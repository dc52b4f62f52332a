use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

/// Seeded 64-bit generator owned by a single trial.
///
/// Backed by xoshiro256++, seeded through SplitMix64 expansion of a `u64`.
/// Every primitive below consumes exactly one 64-bit draw.
#[derive(Clone, Debug)]
pub struct RandomSource {
    inner: Xoshiro256PlusPlus,
}

impl RandomSource {
    /// Identifier written next to results produced with this generator.
    pub const ALGORITHM: &'static str = "xoshiro256++/splitmix64-seed";

    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform index in `0..len` from one draw (multiply-shift, bias below `len / 2^64`).
    #[inline]
    pub fn index(&mut self, len: usize) -> usize {
        debug_assert!(len > 0);
        ((self.next_u64() as u128 * len as u128) >> 64) as usize
    }

    /// One Bernoulli trial with success probability `1 / denominator`.
    #[inline]
    pub fn one_in(&mut self, threshold: OneIn) -> bool {
        (self.next_u64() as u128) < threshold.0
    }
}

/// Precomputed acceptance threshold for probability `1/d`: a draw `u`
/// succeeds iff `u < 2^64 / d`.
#[derive(Clone, Copy, Debug)]
pub struct OneIn(u128);

impl OneIn {
    pub fn new(denominator: usize) -> Self {
        debug_assert!(denominator > 0);
        Self((1u128 << 64) / denominator as u128)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = RandomSource::new(42);
        let mut b = RandomSource::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        assert_ne!(RandomSource::new(1).next_u64(), RandomSource::new(2).next_u64());
    }

    #[test]
    fn one_in_one_always_succeeds() {
        let mut rng = RandomSource::new(7);
        assert!((0..1000).all(|_| rng.one_in(OneIn::new(1))));
    }

    #[test]
    fn index_stays_in_range() {
        let mut rng = RandomSource::new(3);
        let mut seen = [0usize; 5];
        for _ in 0..10_000 {
            seen[rng.index(5)] += 1;
        }
        assert!(seen.iter().all(|&c| (1800..2200).contains(&c)), "{seen:?}");
    }
}
