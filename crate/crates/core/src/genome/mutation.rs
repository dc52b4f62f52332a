use super::rng::OneIn;
use super::{BitString, RandomSource};
use crate::error::{invalid, Result};

/// Uniform random string of `n` bits. Consumes `ceil(n / 64)` draws; bit `i`
/// is bit `i % 64` of draw `i / 64`.
pub fn random_bitstring(n: usize, rng: &mut RandomSource) -> Result<BitString> {
    if n == 0 {
        return Err(invalid("bitstring length must be at least 1"));
    }
    let words = (0..n.div_ceil(64)).map(|_| rng.next_u64()).collect();
    BitString::from_words(words, n)
}

/// Standard bit mutation: every bit flips independently with probability `1/n`.
///
/// Consumes exactly `n` draws, one per bit, left to right.
pub fn standard_mutation(x: &BitString, rng: &mut RandomSource) -> BitString {
    let mut child = x.clone();
    flip_range(&mut child, 0, x.len(), rng);
    child
}

/// Mutates only block `block` (zero-based) of length `block_len`, flipping
/// each bit in it with probability `1/block_len`. Consumes `block_len` draws.
pub fn block_mutation(
    x: &BitString,
    block: usize,
    block_len: usize,
    rng: &mut RandomSource,
) -> Result<BitString> {
    if block_len == 0 || !x.len().is_multiple_of(block_len) {
        return Err(invalid(format!(
            "block length {block_len} does not divide string length {}",
            x.len()
        )));
    }
    let blocks = x.len() / block_len;
    if block >= blocks {
        return Err(invalid(format!(
            "block index {block} out of range for {blocks} blocks"
        )));
    }
    let mut child = x.clone();
    flip_range(&mut child, block * block_len, block_len, rng);
    Ok(child)
}

#[inline]
fn flip_range(s: &mut BitString, start: usize, len: usize, rng: &mut RandomSource) {
    let rate = OneIn::new(len);
    for i in start..start + len {
        if rng.one_in(rate) {
            s.flip(i);
        }
    }
}
