//! Brute-force ground truth for small instances.
//!
//! The front oracle enumerates `{0,1}^n`; the comparison oracle evaluates
//! both objectives by their weighted-sum definition in arbitrary precision.
//! Neither goes through the digit-lexicographic comparator they check.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::benchmark::{
    compare, evaluate, pareto_front, scalarize, Dominance, ObjectiveKey, ProblemParams,
};
use crate::error::{invalid, Error, Result};
use crate::exec::Execution;
use crate::genome::{BitString, RandomSource};

/// Largest `n` the enumeration oracle accepts.
pub const MAX_ENUMERATION_BITS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontOracleResult {
    /// Non-dominated keys in key order.
    pub front_keys: Vec<ObjectiveKey>,
    /// Number of strings whose key lies on the front.
    pub pareto_set_size: u64,
    pub enumerated: u64,
}

/// Enumerates all `2^n` strings and returns the exact non-dominated key set.
pub fn brute_force_front(params: &ProblemParams, exec: Execution) -> Result<FrontOracleResult> {
    let n = params.n();
    if n > MAX_ENUMERATION_BITS {
        return Err(Error::EnumerationRefused(format!(
            "n={n} would enumerate 2^{n} strings; the oracle is capped at n={MAX_ENUMERATION_BITS}"
        )));
    }
    let total = 1u64 << n;
    const CHUNK: u64 = 1 << 12;
    let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
    let partial = exec.map(chunks, |c| -> Result<BTreeMap<ObjectiveKey, u64>> {
        let mut counts = BTreeMap::new();
        for index in c * CHUNK..((c + 1) * CHUNK).min(total) {
            let x = BitString::from_index(index, n)?;
            *counts.entry(evaluate(&x, params)?).or_insert(0) += 1;
        }
        Ok(counts)
    });
    let mut counts: BTreeMap<ObjectiveKey, u64> = BTreeMap::new();
    for part in partial {
        for (key, c) in part? {
            *counts.entry(key).or_insert(0) += c;
        }
    }

    let scalars: Vec<(u128, u128)> = counts
        .keys()
        .map(|k| scalarize(k, params))
        .collect::<Result<_>>()?;
    let mut front_keys = Vec::new();
    let mut pareto_set_size = 0;
    for (i, (key, count)) in counts.iter().enumerate() {
        let (a1, a2) = scalars[i];
        let dominated = scalars
            .iter()
            .any(|&(b1, b2)| b1 >= a1 && b2 >= a2 && (b1, b2) != (a1, a2));
        if !dominated {
            front_keys.push(key.clone());
            pareto_set_size += count;
        }
    }
    Ok(FrontOracleResult {
        front_keys,
        pareto_set_size,
        enumerated: total,
    })
}

/// Literal weighted-sum evaluation of `(f1, f2)` in arbitrary precision.
#[derive(Clone, Debug)]
pub struct ScalarOracle {
    params: ProblemParams,
    z1: Vec<bool>,
    z2: Vec<bool>,
    /// `((ℓ+1)^{2(k-b)+1}, (ℓ+1)^{2(k-b)})` for blocks `b = 1..k`.
    weights: Vec<(BigUint, BigUint)>,
}

impl ScalarOracle {
    pub fn new(params: ProblemParams) -> Self {
        let (z1, z2) = params.targets();
        let base = BigUint::from(params.block_len() as u64 + 1);
        let k = params.k() as u32;
        let weights = (1..=k)
            .map(|b| {
                let low = base.pow(2 * (k - b));
                (&low * &base, low)
            })
            .collect();
        Self {
            params,
            z1: z1.iter().collect(),
            z2: z2.iter().collect(),
            weights,
        }
    }

    pub fn objectives(&self, x: &BitString) -> (BigUint, BigUint) {
        assert_eq!(x.len(), self.params.n());
        let l = self.params.block_len();
        let mut f1 = BigUint::ZERO;
        let mut f2 = BigUint::ZERO;
        for (b, (high, low)) in self.weights.iter().enumerate() {
            let lo = |z: &[bool]| {
                (0..l).take_while(|&i| x.get(b * l + i) == z[i]).count() as u64
            };
            let (lo1, lo2) = (lo(&self.z1), lo(&self.z2));
            f1 += high * lo1 + low * lo2;
            f2 += high * lo2 + low * lo1;
        }
        (f1, f2)
    }

    pub fn compare(&self, x: &BitString, y: &BitString) -> Dominance {
        let (x1, x2) = self.objectives(x);
        let (y1, y2) = self.objectives(y);
        Dominance::from_orderings(x1.cmp(&y1), x2.cmp(&y2))
    }
}

/// Dominance of `x` relative to `y` by exact scalar comparison.
pub fn bigint_scalar_compare(x: &BitString, y: &BitString, params: &ProblemParams) -> Result<Dominance> {
    if x.len() != params.n() || y.len() != params.n() {
        return Err(invalid(format!("both strings must have n={} bits", params.n())));
    }
    Ok(ScalarOracle::new(*params).compare(x, y))
}

/// Draws a pair of strings biased toward the interesting cases: blocks with
/// long agreement with the targets, and pairs that share most blocks.
pub fn structured_pair(params: &ProblemParams, rng: &mut RandomSource) -> (BitString, BitString) {
    let x = structured_string(params, rng);
    let y = match rng.index(3) {
        0 => structured_string(params, rng),
        1 => {
            let z = structured_string(params, rng);
            let block = rng.index(params.k());
            let l = params.block_len();
            let bits: Vec<bool> = (0..params.n())
                .map(|i| if i / l == block { z.get(i) } else { x.get(i) })
                .collect();
            BitString::from_bits(&bits).expect("n is positive")
        }
        _ => {
            let mut bits: Vec<bool> = x.iter().collect();
            for _ in 0..=rng.index(3) {
                let i = rng.index(bits.len());
                bits[i] = !bits[i];
            }
            BitString::from_bits(&bits).expect("n is positive")
        }
    };
    (x, y)
}

fn structured_string(params: &ProblemParams, rng: &mut RandomSource) -> BitString {
    let l = params.block_len();
    let shared = l - params.r();
    let bits: Vec<bool> = (0..params.k())
        .flat_map(|_| {
            let mode = rng.index(4);
            let prefix = rng.index(l + 1);
            let mut block: Vec<bool> = (0..l).map(|_| rng.next_u64() & 1 == 1).collect();
            match mode {
                0 => {}
                1 => block[..prefix].iter_mut().for_each(|b| *b = true),
                _ => {
                    // Agree with z² (or z¹ for mode 3) on a random prefix.
                    for (i, b) in block.iter_mut().enumerate().take(prefix) {
                        *b = i < shared || mode == 3;
                    }
                }
            }
            block
        })
        .collect();
    BitString::from_bits(&bits).expect("n is positive")
}

/// Ordering of `(f1B, f2B)` of `x` relative to `y` predicted by the
/// first-difference case analysis, for blocks of length `l` and conflict
/// length `r`. Panics if `x == y`.
///
/// Let `i` be the first differing position (1-based) and `c = l - r + 1` the
/// first position where the targets disagree. If the common prefix already
/// contains a zero before position `min(i, c)`, both strings mismatch both
/// targets at the same place and score equally. Otherwise, with `x` holding
/// the one at position `i`:
/// * `i < c`: `x` is better in both objectives;
/// * `i = c`: `x` is better in `f1` and worse in `f2`;
/// * `i > c`: decided by positions `c..i-1`, all ones (better in both),
///   all zeros (worse in both) or mixed (equal).
pub fn first_difference_prediction(x: &[bool], y: &[bool], r: usize) -> (Ordering, Ordering) {
    let l = x.len();
    assert_eq!(l, y.len());
    let i = x
        .iter()
        .zip(y)
        .position(|(a, b)| a != b)
        .expect("strings must differ");
    if !x[i] {
        let (a, b) = first_difference_prediction(y, x, r);
        return (a.reverse(), b.reverse());
    }
    let c = l - r;
    if x[..i.min(c)].iter().any(|&bit| !bit) {
        return (Ordering::Equal, Ordering::Equal);
    }
    use Ordering::*;
    match i.cmp(&c) {
        Ordering::Less => (Greater, Greater),
        Ordering::Equal => (Greater, Less),
        Ordering::Greater => {
            let segment = &x[c..i];
            if segment.iter().all(|&b| b) {
                (Greater, Greater)
            } else if segment.iter().all(|&b| !b) {
                (Less, Less)
            } else {
                (Equal, Equal)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockLemmaReport {
    /// Unordered distinct pairs examined.
    pub pairs: u64,
    /// Pairs whose common prefix leaves both targets matched up to the
    /// first difference (the case analysis proper).
    pub prefix_intact: u64,
    pub prediction_mismatches: u64,
    /// Pairs equal in one objective but not the other.
    pub equal_value_violations: u64,
}

impl BlockLemmaReport {
    pub fn passed(&self) -> bool {
        self.prediction_mismatches == 0 && self.equal_value_violations == 0
    }
}

/// Checks every distinct pair of `l`-bit blocks against
/// [`first_difference_prediction`] and the equal-value property.
pub fn check_block_lemma(l: usize, r: usize) -> Result<BlockLemmaReport> {
    if l > 16 {
        return Err(Error::EnumerationRefused(format!("block length {l} too large")));
    }
    let params = ProblemParams::new(l, 1, r)?;
    let blocks: Vec<BitString> = (0..1u64 << l)
        .map(|i| BitString::from_index(i, l))
        .collect::<Result<_>>()?;
    let values: Vec<_> = blocks
        .iter()
        .map(|b| crate::benchmark::base_values(b, &params))
        .collect::<Result<_>>()?;
    let bits: Vec<Vec<bool>> = blocks.iter().map(|b| b.iter().collect()).collect();
    let c = l - r;

    let mut report = BlockLemmaReport::default();
    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            report.pairs += 1;
            let (x, y) = (&bits[a], &bits[b]);
            let i = x.iter().zip(y).position(|(p, q)| p != q).unwrap();
            if x[..i.min(c)].iter().all(|&bit| bit) {
                report.prefix_intact += 1;
            }
            let observed = (values[a].f1.cmp(&values[b].f1), values[a].f2.cmp(&values[b].f2));
            if observed != first_difference_prediction(x, y, r) {
                report.prediction_mismatches += 1;
            }
            if observed.0.is_eq() != observed.1.is_eq() {
                report.equal_value_violations += 1;
            }
        }
    }
    Ok(report)
}

/// Every valid `(n, k, r)` with `n ≤ max_n`, all `r` in `1..=ℓ`.
pub fn all_params(max_n: usize) -> Vec<ProblemParams> {
    (1..=max_n)
        .flat_map(|n| {
            (1..=n)
                .filter(move |k| n % k == 0)
                .flat_map(move |k| (1..=n / k).map(move |r| (n, k, r)))
        })
        .filter_map(|(n, k, r)| ProblemParams::new(n, k, r).ok())
        .collect()
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Closed-form front against enumeration for every params set up to `max_n`.
pub fn check_front_equivalence(max_n: usize, exec: Execution) -> Result<CheckResult> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for params in all_params(max_n) {
        let oracle = brute_force_front(&params, exec)?;
        let closed: Vec<ObjectiveKey> = pareto_front(&params)?.into_iter().map(|p| p.key).collect();
        checked += 1;
        let expected_size = 1usize << params.k();
        if closed != oracle.front_keys {
            failures.push(format!("{params}: closed form differs from enumeration"));
        } else if closed.len() != expected_size {
            failures.push(format!("{params}: front has {} points, expected {expected_size}", closed.len()));
        }
    }
    Ok(CheckResult {
        name: format!("front equivalence n<={max_n}"),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{checked} parameter sets agree, every front has 2^k points")
        } else {
            failures.join("; ")
        },
    })
}

pub fn check_block_lemma_exhaustive(max_l: usize) -> Result<CheckResult> {
    let mut total = BlockLemmaReport::default();
    let mut failures = Vec::new();
    for l in 1..=max_l {
        for r in 1..=l {
            let rep = check_block_lemma(l, r)?;
            if !rep.passed() {
                failures.push(format!("l={l} r={r}: {rep:?}"));
            }
            total.pairs += rep.pairs;
            total.prefix_intact += rep.prefix_intact;
            total.prediction_mismatches += rep.prediction_mismatches;
            total.equal_value_violations += rep.equal_value_violations;
        }
    }
    Ok(CheckResult {
        name: format!("block comparison case analysis l<={max_l}"),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "{} pairs ({} with intact prefix) match, equal-value property holds",
                total.pairs, total.prefix_intact
            )
        } else {
            failures.join("; ")
        },
    })
}

/// Digit comparator against the big-integer oracle on random pairs.
pub fn check_comparator(max_n: usize, pairs_per_set: usize, seed: u64, exec: Execution) -> Result<CheckResult> {
    let sets = all_params(max_n);
    let outcomes = exec.map(sets.into_iter().enumerate().collect(), |(i, params)| -> Result<Option<String>> {
        let oracle = ScalarOracle::new(params);
        let mut rng = RandomSource::new(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        for _ in 0..pairs_per_set {
            let (x, y) = structured_pair(&params, &mut rng);
            let digit = compare(&evaluate(&x, &params)?, &evaluate(&y, &params)?)?;
            let exact = oracle.compare(&x, &y);
            if digit != exact {
                return Ok(Some(format!("{params}: x={x} y={y} digits={digit:?} exact={exact:?}")));
            }
        }
        Ok(None)
    });
    let mut failures = Vec::new();
    let mut checked = 0;
    for o in outcomes {
        checked += 1;
        if let Some(f) = o? {
            failures.push(f);
        }
    }
    Ok(CheckResult {
        name: format!("digit comparator vs exact scalars n<={max_n}"),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{checked} parameter sets x {pairs_per_set} pairs agree")
        } else {
            failures.join("; ")
        },
    })
}

/// Archive size never exceeds `2^k` over short full runs of both algorithms.
pub fn check_population_bound(max_n: usize, seeds: u64, exec: Execution) -> Result<CheckResult> {
    use crate::algorithms::{run, Algorithm, RunConfig};
    let mut jobs = Vec::new();
    for params in all_params(max_n) {
        for alg in Algorithm::ALL {
            for seed in 0..seeds {
                jobs.push(
                    RunConfig::new(params, alg)
                        .with_seed(seed)
                        .with_t_epoch(10)
                        .with_budget(20_000),
                );
            }
        }
    }
    let count = jobs.len();
    let results = exec.map(jobs, |cfg| run(&cfg));
    let mut failures = Vec::new();
    for res in results {
        let res = res?;
        let bound = 1usize << res.params.k();
        if res.max_archive_size > bound {
            failures.push(format!(
                "{} {} seed {}: archive reached {}",
                res.algorithm, res.params, res.seed, res.max_archive_size
            ));
        }
    }
    Ok(CheckResult {
        name: format!("population bound 2^k n<={max_n}"),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{count} runs stayed within 2^k")
        } else {
            failures.join("; ")
        },
    })
}

pub struct VerifyOptions {
    pub max_n: usize,
    pub comparator_max_n: usize,
    pub pairs_per_set: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_n: 16,
            comparator_max_n: 24,
            pairs_per_set: 100_000,
            seed: 0x5eed,
            execution: Execution::default(),
        }
    }
}

/// The full oracle and structural-property suite.
pub fn verify(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    if opts.max_n > MAX_ENUMERATION_BITS {
        return Err(Error::EnumerationRefused(format!(
            "max-n {} exceeds the enumeration cap {MAX_ENUMERATION_BITS}",
            opts.max_n
        )));
    }
    Ok(vec![
        check_front_equivalence(opts.max_n, opts.execution)?,
        check_block_lemma_exhaustive(6)?,
        check_comparator(opts.comparator_max_n, opts.pairs_per_set, opts.seed, opts.execution)?,
        check_population_bound(opts.max_n.min(12), 3, opts.execution)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(pairs: &[(u64, u64)]) -> ObjectiveKey {
        pairs.iter().copied().collect()
    }

    #[test]
    fn brute_force_small_fronts() {
        let p = ProblemParams::new(2, 1, 1).unwrap();
        let res = brute_force_front(&p, Execution::Sequential).unwrap();
        assert_eq!(res.front_keys, vec![key(&[(5, 7)]), key(&[(7, 5)])]);
        assert_eq!(res.enumerated, 4);
        assert_eq!(res.pareto_set_size, 2);

        let p = ProblemParams::new(4, 2, 1).unwrap();
        assert_eq!(brute_force_front(&p, Execution::Sequential).unwrap().front_keys.len(), 4);

        let p = ProblemParams::new(1, 1, 1).unwrap();
        assert_eq!(
            brute_force_front(&p, Execution::Sequential).unwrap().front_keys,
            vec![key(&[(1, 2)]), key(&[(2, 1)])]
        );
    }

    #[test]
    fn enumeration_guard() {
        let p = ProblemParams::new(21, 1, 1).unwrap();
        assert!(matches!(
            brute_force_front(&p, Execution::Sequential),
            Err(Error::EnumerationRefused(_))
        ));
    }

    #[test]
    fn parallel_enumeration_matches_sequential() {
        let p = ProblemParams::new(14, 2, 3).unwrap();
        assert_eq!(
            brute_force_front(&p, Execution::Sequential).unwrap(),
            brute_force_front(&p, Execution::from_jobs(3)).unwrap()
        );
    }

    #[test]
    fn scalar_oracle_matches_hand_values() {
        let p = ProblemParams::new(4, 2, 1).unwrap();
        let o = ScalarOracle::new(p);
        let (f1, f2) = o.objectives(&"1110".parse().unwrap());
        assert_eq!((f1, f2), (BigUint::from(68u32), BigUint::from(52u32)));
    }

    #[test]
    fn bigint_compare_examples() {
        let p = ProblemParams::new(8, 2, 2).unwrap();
        let x: BitString = "11011100".parse().unwrap();
        assert_eq!(bigint_scalar_compare(&x, &x, &p).unwrap(), Dominance::Equal);
        let ones = BitString::ones(8).unwrap();
        let mut rng = RandomSource::new(1);
        for _ in 0..2000 {
            let y = crate::genome::random_bitstring(8, &mut rng).unwrap();
            if y == ones {
                continue;
            }
            let d = bigint_scalar_compare(&ones, &y, &p).unwrap();
            assert_ne!(d, Dominance::SecondDominates);
        }
        assert!(bigint_scalar_compare(&x, &BitString::ones(4).unwrap(), &p).is_err());
    }

    #[test]
    fn literal_lemma_statement_needs_intact_prefix() {
        // l=3, r=2: 011 and 010 differ first at position 3 > c=2 with a one
        // on position 2, yet both mismatch both targets at position 1.
        let x = [false, true, true];
        let y = [false, true, false];
        assert_eq!(
            first_difference_prediction(&x, &y, 2),
            (Ordering::Equal, Ordering::Equal)
        );
        let p = ProblemParams::new(3, 1, 2).unwrap();
        let bx = crate::benchmark::base_values(&BitString::from_bits(&x).unwrap(), &p).unwrap();
        let by = crate::benchmark::base_values(&BitString::from_bits(&y).unwrap(), &p).unwrap();
        assert_eq!(bx, by);
    }

    #[test]
    fn block_lemma_small() {
        let rep = check_block_lemma(4, 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.pairs, 16 * 15 / 2);
    }

    #[test]
    fn all_params_counts() {
        // n=4: k=1 (r 1..4), k=2 (r 1..2), k=4 (r 1).
        let n4 = all_params(4).into_iter().filter(|p| p.n() == 4).count();
        assert_eq!(n4, 7);
    }
}
