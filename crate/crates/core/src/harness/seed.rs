/// SplitMix64 output function; a bijection on `u64`.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// Seed of one trial, a pure function of the cell and the run index.
///
/// The fields are absorbed in order `base_seed, n, k, r, algorithm_id,
/// t_epoch, run_index` via `h ← mix((h + γ) ^ field)` starting from
/// `h = mix(base_seed ^ γ)`. Each step is a bijection in `field` for a fixed
/// `h`, so distinct run indices of one cell never share a seed.
pub fn derive_seed(
    base_seed: u64,
    n: u64,
    k: u64,
    r: u64,
    algorithm_id: u64,
    t_epoch: u64,
    run_index: u64,
) -> u64 {
    [n, k, r, algorithm_id, t_epoch, run_index]
        .into_iter()
        .fold(mix(base_seed ^ GAMMA), |h, field| mix(h.wrapping_add(GAMMA) ^ field))
}
