//! The blockwise bi-objective LeadingOnes benchmark `f_{nkr}`.
//!
//! A string of `n = k·ℓ` bits is cut into `k` blocks. Every block is scored
//! against two targets, `z¹ = 1^ℓ` and `z² = 1^{ℓ-r}0^r`, by the length of
//! its leading agreement with each. The two per-block base values are
//!
//! ```text
//! f1B = (ℓ+1)·LO_z¹ + LO_z²        f2B = (ℓ+1)·LO_z² + LO_z¹
//! ```
//!
//! and the objectives weight block `b` (1-based) by `(ℓ+1)^{2(k-b)}`. Every
//! base value is below `(ℓ+1)²`, so the vector of per-block pairs is the exact
//! base-`(ℓ+1)²` digit expansion of `(f1, f2)`. [`ObjectiveKey`] stores those
//! digits and [`compare`] orders them lexicographically without ever forming
//! the (potentially huge) scalars.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid, Result};
use crate::genome::BitString;

/// Largest `k` for which [`pareto_front`] materialises all `2^k` profiles.
pub const MAX_FRONT_BLOCKS: usize = 24;

/// One member `(n, k, r)` of the benchmark family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProblemParams {
    n: usize,
    k: usize,
    r: usize,
    block_len: usize,
}

impl ProblemParams {
    /// Validates `k | n`, `1 ≤ r ≤ ℓ` and that the scalar objectives fit in
    /// 126 bits, i.e. `(ℓ+1)^{2k} ≤ 2^126`.
    pub fn new(n: usize, k: usize, r: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(invalid(format!("n={n} and k={k} must both be positive")));
        }
        if !n.is_multiple_of(k) {
            return Err(invalid(format!("k={k} does not divide n={n}")));
        }
        let block_len = n / k;
        if r == 0 || r > block_len {
            return Err(invalid(format!("r={r} must lie in 1..={block_len}")));
        }
        // Digits are stored as u64, so (ℓ+1)² must fit.
        let base = block_len as u128 + 1;
        if base > 1 << 32 {
            return Err(invalid(format!("block length {block_len} is too large")));
        }
        const LIMIT: u128 = 1 << 126;
        let mut power: u128 = 1;
        for _ in 0..2 * k {
            power = match power.checked_mul(base) {
                Some(p) if p <= LIMIT => p,
                _ => {
                    return Err(invalid(format!(
                        "(n={n}, k={k}) exceeds the 128-bit scalarization bound 2k·log2(ℓ+1) ≤ 126"
                    )))
                }
            };
        }
        Ok(Self { n, k, r, block_len })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Block length `ℓ = n / k`.
    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// `(z¹, z²)` for one block.
    pub fn targets(&self) -> (BitString, BitString) {
        let l = self.block_len;
        let z1 = BitString::ones(l).expect("block length is positive");
        let z2 = BitString::from_bits(&(0..l).map(|i| i < l - self.r).collect::<Vec<_>>())
            .expect("block length is positive");
        (z1, z2)
    }

    /// Base-value pair of the block equal to `z¹`.
    pub fn first_target_values(&self) -> BaseValuePair {
        let l = self.block_len as u64;
        let shared = l - self.r as u64;
        BaseValuePair::from_leading_matches(self, l, shared)
    }

    /// Base-value pair of the block equal to `z²`.
    pub fn second_target_values(&self) -> BaseValuePair {
        let l = self.block_len as u64;
        let shared = l - self.r as u64;
        BaseValuePair::from_leading_matches(self, shared, l)
    }

    fn weight(&self) -> u64 {
        self.block_len as u64 + 1
    }
}

impl fmt::Display for ProblemParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={} r={}", self.n, self.k, self.r)
    }
}

/// Per-block values `(f1B, f2B)`, both in `0..(ℓ+1)²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseValuePair {
    pub f1: u64,
    pub f2: u64,
}

impl BaseValuePair {
    pub const fn new(f1: u64, f2: u64) -> Self {
        Self { f1, f2 }
    }

    fn from_leading_matches(params: &ProblemParams, lo1: u64, lo2: u64) -> Self {
        let w = params.weight();
        Self {
            f1: w * lo1 + lo2,
            f2: w * lo2 + lo1,
        }
    }
}

impl From<(u64, u64)> for BaseValuePair {
    fn from((f1, f2): (u64, u64)) -> Self {
        Self { f1, f2 }
    }
}

/// The objective vector as its per-block digits, block 1 first.
///
/// The derived `Ord` is lexicographic over blocks and is only used to give
/// collections a deterministic order; dominance is [`compare`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectiveKey {
    blocks: Box<[BaseValuePair]>,
}

impl ObjectiveKey {
    pub fn new(blocks: Vec<BaseValuePair>) -> Self {
        Self {
            blocks: blocks.into_boxed_slice(),
        }
    }

    pub fn blocks(&self) -> &[BaseValuePair] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl fmt::Debug for ObjectiveKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", b.f1, b.f2)?;
        }
        f.write_str("]")
    }
}

impl<P: Into<BaseValuePair>> FromIterator<P> for ObjectiveKey {
    fn from_iter<I: IntoIterator<Item = P>>(iter: I) -> Self {
        Self::new(iter.into_iter().map(Into::into).collect())
    }
}

/// Outcome of comparing two objective vectors under maximisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dominance {
    FirstDominates,
    SecondDominates,
    Equal,
    Incomparable,
}

impl Dominance {
    /// Combines the per-objective orderings of `a` relative to `b`.
    pub fn from_orderings(first: Ordering, second: Ordering) -> Self {
        use Ordering::*;
        match (first, second) {
            (Equal, Equal) => Dominance::Equal,
            (Greater | Equal, Greater | Equal) => Dominance::FirstDominates,
            (Less | Equal, Less | Equal) => Dominance::SecondDominates,
            _ => Dominance::Incomparable,
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            Dominance::FirstDominates => Dominance::SecondDominates,
            Dominance::SecondDominates => Dominance::FirstDominates,
            other => other,
        }
    }

    /// `a ⪰ b`.
    pub fn first_weakly_dominates(self) -> bool {
        matches!(self, Dominance::FirstDominates | Dominance::Equal)
    }
}

/// Number of leading positions where `block` agrees with `target`.
pub fn leading_match(block: &BitString, target: &BitString) -> Result<usize> {
    if block.len() != target.len() {
        return Err(invalid(format!(
            "block has {} bits but target has {}",
            block.len(),
            target.len()
        )));
    }
    Ok(block
        .iter()
        .zip(target.iter())
        .take_while(|(a, b)| a == b)
        .count())
}

/// `(f1B, f2B)` of a single block.
pub fn base_values(block: &BitString, params: &ProblemParams) -> Result<BaseValuePair> {
    let (z1, z2) = params.targets();
    let lo1 = leading_match(block, &z1)? as u64;
    let lo2 = leading_match(block, &z2)? as u64;
    Ok(BaseValuePair::from_leading_matches(params, lo1, lo2))
}

/// Objective key of a full string.
pub fn evaluate(x: &BitString, params: &ProblemParams) -> Result<ObjectiveKey> {
    if x.len() != params.n {
        return Err(invalid(format!(
            "string has {} bits, expected n={}",
            x.len(),
            params.n
        )));
    }
    Ok(evaluate_unchecked(x, params))
}

/// [`evaluate`] for strings already known to have length `n`.
///
/// Uses word-level run counting: `LO_z¹` is the run of ones at the block
/// start; when it reaches `ℓ-r` the block also matches `z²` that far and
/// `LO_z²` continues with the run of zeros after it.
pub(crate) fn evaluate_unchecked(x: &BitString, params: &ProblemParams) -> ObjectiveKey {
    debug_assert_eq!(x.len(), params.n);
    let l = params.block_len;
    let shared = l - params.r;
    (0..params.k)
        .map(|b| {
            let start = b * l;
            let lo1 = x.run_length(start, l, true);
            let lo2 = if lo1 < shared {
                lo1
            } else {
                shared + x.run_length(start + shared, params.r, false)
            };
            BaseValuePair::from_leading_matches(params, lo1 as u64, lo2 as u64)
        })
        .collect()
}

/// The exact scalar objectives `(f1, f2)` reconstructed from the digits.
pub fn scalarize(key: &ObjectiveKey, params: &ProblemParams) -> Result<(u128, u128)> {
    if key.len() != params.k {
        return Err(invalid(format!(
            "key has {} blocks, expected k={}",
            key.len(),
            params.k
        )));
    }
    let base = (params.weight() as u128).pow(2);
    Ok(key.blocks.iter().fold((0u128, 0u128), |(f1, f2), d| {
        (f1 * base + d.f1 as u128, f2 * base + d.f2 as u128)
    }))
}

/// Dominance of `a` relative to `b` by digit-lexicographic comparison.
pub fn compare(a: &ObjectiveKey, b: &ObjectiveKey) -> Result<Dominance> {
    if a.len() != b.len() {
        return Err(invalid(format!(
            "keys have {} and {} blocks",
            a.len(),
            b.len()
        )));
    }
    Ok(dominance(a, b))
}

#[inline]
pub(crate) fn dominance(a: &ObjectiveKey, b: &ObjectiveKey) -> Dominance {
    debug_assert_eq!(a.len(), b.len());
    let first = digit_order(a, b, |d| d.f1);
    let second = digit_order(a, b, |d| d.f2);
    Dominance::from_orderings(first, second)
}

#[inline]
fn digit_order(a: &ObjectiveKey, b: &ObjectiveKey, digit: impl Fn(&BaseValuePair) -> u64) -> Ordering {
    a.blocks
        .iter()
        .zip(b.blocks.iter())
        .map(|(x, y)| digit(x).cmp(&digit(y)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// A point of the Pareto front with one string attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontPoint {
    pub key: ObjectiveKey,
    pub witness: BitString,
}

/// The closed-form Pareto front: one point per profile in `{z¹, z²}^k`,
/// deduplicated and sorted by key.
pub fn pareto_front(params: &ProblemParams) -> Result<Vec<FrontPoint>> {
    let k = params.k;
    if k > MAX_FRONT_BLOCKS {
        return Err(invalid(format!(
            "front of 2^{k} points is too large to materialise (k ≤ {MAX_FRONT_BLOCKS})"
        )));
    }
    let (z1, z2) = params.targets();
    let mut points = BTreeMap::new();
    for profile in 0u64..1 << k {
        let blocks: Vec<BitString> = (0..k)
            .map(|b| {
                if (profile >> (k - 1 - b)) & 1 == 0 {
                    z1.clone()
                } else {
                    z2.clone()
                }
            })
            .collect();
        let witness = BitString::concat(&blocks)?;
        let key = evaluate_unchecked(&witness, params);
        points.entry(key).or_insert(witness);
    }
    Ok(points
        .into_iter()
        .map(|(key, witness)| FrontPoint { key, witness })
        .collect())
}
