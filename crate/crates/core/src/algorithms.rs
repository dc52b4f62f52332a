//! GSEMO and block-coordinate GSEMO with evaluation counting and
//! front-coverage termination.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::archive::Archive;
use crate::benchmark::{evaluate_unchecked, pareto_front, ObjectiveKey, ProblemParams};
use crate::error::{invalid, Error, Result};
use crate::genome::{block_mutation, random_bitstring, standard_mutation, RandomSource};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_T_EPOCH: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "gsemo")]
    Gsemo,
    #[serde(rename = "bc-gsemo")]
    BcGsemo,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Gsemo, Algorithm::BcGsemo];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Gsemo => "gsemo",
            Algorithm::BcGsemo => "bc-gsemo",
        }
    }

    /// Stable numeric code fed into seed derivation.
    pub fn code(self) -> u64 {
        match self {
            Algorithm::Gsemo => 1,
            Algorithm::BcGsemo => 2,
        }
    }

    /// The epoch length that actually applies; GSEMO has none and reports 0.
    pub fn effective_t_epoch(self, t_epoch: u64) -> u64 {
        match self {
            Algorithm::Gsemo => 0,
            Algorithm::BcGsemo => t_epoch,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gsemo" => Ok(Algorithm::Gsemo),
            "bc-gsemo" => Ok(Algorithm::BcGsemo),
            other => Err(invalid(format!(
                "unknown algorithm {other:?} (expected gsemo or bc-gsemo)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub params: ProblemParams,
    pub algorithm: Algorithm,
    /// Offspring per block before BC-GSEMO moves on; ignored by GSEMO.
    pub t_epoch: u64,
    /// Maximum number of fitness evaluations, the initial one included.
    pub budget: u64,
    pub seed: u64,
    pub trace_every: Option<u64>,
}

impl RunConfig {
    pub fn new(params: ProblemParams, algorithm: Algorithm) -> Self {
        Self {
            params,
            algorithm,
            t_epoch: DEFAULT_T_EPOCH,
            budget: DEFAULT_BUDGET,
            seed: 0,
            trace_every: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_t_epoch(mut self, t_epoch: u64) -> Self {
        self.t_epoch = t_epoch;
        self
    }

    pub fn with_trace_every(mut self, every: u64) -> Self {
        self.trace_every = Some(every);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(invalid("budget must be at least 1"));
        }
        if self.algorithm == Algorithm::BcGsemo && self.t_epoch == 0 {
            return Err(invalid("t_epoch must be at least 1"));
        }
        if self.trace_every == Some(0) {
            return Err(invalid("trace_every must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub algorithm: Algorithm,
    pub params: ProblemParams,
    pub t_epoch: u64,
    pub seed: u64,
    pub evaluations: u64,
    /// Whether the archive covered the whole front within the budget.
    pub covered: bool,
    /// Largest archive size seen at any point of the run.
    pub max_archive_size: usize,
    pub final_archive: Archive,
}

/// Progress report handed to an [`Observer`].
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub evaluations: u64,
    pub offspring: u64,
    pub archive_size: usize,
    pub covered_points: usize,
    pub front_size: usize,
}

impl Snapshot {
    pub fn covered_fraction(&self) -> f64 {
        self.covered_points as f64 / self.front_size as f64
    }
}

/// Receives snapshots every `trace_every` evaluations and once at termination.
pub trait Observer {
    fn on_snapshot(&mut self, snapshot: &Snapshot);

    /// Called once per offspring with its evaluation number and the mutated
    /// block (zero-based, BC-GSEMO only).
    fn on_offspring(&mut self, _evaluation: u64, _block: Option<usize>) {}
}

impl Observer for Vec<Snapshot> {
    fn on_snapshot(&mut self, snapshot: &Snapshot) {
        self.push(snapshot.clone());
    }
}

struct Silent;

impl Observer for Silent {
    fn on_snapshot(&mut self, _: &Snapshot) {}
}

/// Runs whichever algorithm `cfg` names.
pub fn run(cfg: &RunConfig) -> Result<RunResult> {
    run_with_observer(cfg, &mut Silent)
}

pub fn run_gsemo(cfg: &RunConfig) -> Result<RunResult> {
    if cfg.algorithm != Algorithm::Gsemo {
        return Err(invalid("run_gsemo called with a BC-GSEMO config"));
    }
    run(cfg)
}

pub fn run_bc_gsemo(cfg: &RunConfig) -> Result<RunResult> {
    if cfg.algorithm != Algorithm::BcGsemo {
        return Err(invalid("run_bc_gsemo called with a GSEMO config"));
    }
    run(cfg)
}

/// Runs `cfg`, reporting progress to `observer`.
pub fn run_with_observer(cfg: &RunConfig, observer: &mut dyn Observer) -> Result<RunResult> {
    cfg.validate()?;
    let params = cfg.params;
    let front: Vec<ObjectiveKey> = pareto_front(&params)?.into_iter().map(|p| p.key).collect();
    let in_front = |key: &ObjectiveKey| front.binary_search(key).is_ok();

    let mut rng = RandomSource::new(cfg.seed);
    let mut archive = Archive::new(params);
    let mut tracker = Tracker {
        every: cfg.trace_every,
        last_reported: None,
        front_size: front.len(),
    };

    let initial = random_bitstring(params.n(), &mut rng)?;
    let key = evaluate_unchecked(&initial, &params);
    let mut covered_points = usize::from(in_front(&key));
    archive.try_insert(initial, key);
    let mut evaluations: u64 = 1;
    let mut offspring: u64 = 0;
    let mut max_archive_size = archive.len();
    tracker.after_evaluation(observer, evaluations, offspring, &archive, covered_points);

    let block_len = params.block_len();
    let k = params.k() as u64;
    while covered_points < front.len() && evaluations < cfg.budget {
        let parent = &archive.get(rng.index(archive.len())).genome;
        let (child, block) = match cfg.algorithm {
            Algorithm::Gsemo => (standard_mutation(parent, &mut rng), None),
            Algorithm::BcGsemo => {
                let block = ((offspring / cfg.t_epoch) % k) as usize;
                (block_mutation(parent, block, block_len, &mut rng)?, Some(block))
            }
        };
        offspring += 1;
        evaluations += 1;
        observer.on_offspring(evaluations, block);

        let key = evaluate_unchecked(&child, &params);
        let child_in_front = in_front(&key);
        let outcome = archive.try_insert(child, key);
        if outcome.accepted {
            covered_points -= outcome.removed.iter().filter(|k| in_front(k)).count();
            covered_points += usize::from(child_in_front);
            max_archive_size = max_archive_size.max(archive.len());
        }
        tracker.after_evaluation(observer, evaluations, offspring, &archive, covered_points);
    }

    let covered = covered_points == front.len();
    tracker.finish(observer, evaluations, offspring, &archive, covered_points);
    Ok(RunResult {
        algorithm: cfg.algorithm,
        params,
        t_epoch: cfg.algorithm.effective_t_epoch(cfg.t_epoch),
        seed: cfg.seed,
        evaluations,
        covered,
        max_archive_size,
        final_archive: archive,
    })
}

struct Tracker {
    every: Option<u64>,
    last_reported: Option<u64>,
    front_size: usize,
}

impl Tracker {
    fn snapshot(&self, evaluations: u64, offspring: u64, archive: &Archive, covered: usize) -> Snapshot {
        Snapshot {
            evaluations,
            offspring,
            archive_size: archive.len(),
            covered_points: covered,
            front_size: self.front_size,
        }
    }

    #[inline]
    fn after_evaluation(
        &mut self,
        observer: &mut dyn Observer,
        evaluations: u64,
        offspring: u64,
        archive: &Archive,
        covered: usize,
    ) {
        if let Some(every) = self.every {
            if evaluations.is_multiple_of(every) {
                observer.on_snapshot(&self.snapshot(evaluations, offspring, archive, covered));
                self.last_reported = Some(evaluations);
            }
        }
    }

    fn finish(
        &mut self,
        observer: &mut dyn Observer,
        evaluations: u64,
        offspring: u64,
        archive: &Archive,
        covered: usize,
    ) {
        if self.last_reported != Some(evaluations) {
            observer.on_snapshot(&self.snapshot(evaluations, offspring, archive, covered));
            self.last_reported = Some(evaluations);
        }
    }
}
