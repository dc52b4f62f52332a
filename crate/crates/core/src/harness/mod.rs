//! Experiment sweeps: cell enumeration, seeding, trial execution, summaries
//! and CSV output.

mod seed;
mod stats;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algorithms::{run, Algorithm, RunConfig, RunResult, DEFAULT_BUDGET, DEFAULT_T_EPOCH};
use crate::benchmark::ProblemParams;
use crate::error::{invalid, Error, Result};
use crate::exec::Execution;

pub use seed::derive_seed;
pub use stats::{mean_and_stderr, slope};

pub const RAW_HEADER: &str = "n,k,r,algo,t_epoch,seed,run_index,evaluations,covered,final_pop_size";
pub const SUMMARY_HEADER: &str = "n,k,r,algo,t_epoch,runs,mean_evals,stderr_evals,budget_hits,censored";

/// A sweep over a grid of benchmark instances. Missing keys in a config
/// file take the defaults below, which reproduce the published matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub n_values: Vec<usize>,
    pub k_values: Vec<usize>,
    pub r_values: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub t_epoch: u64,
    pub runs_per_cell: u64,
    pub base_seed: u64,
    pub budget: u64,
    /// Worker threads; `0` means one per core, `1` runs sequentially.
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_values: vec![24, 120, 240, 360, 480, 600, 720, 840],
            k_values: vec![2, 3, 4],
            r_values: vec![1, 2, 4],
            algorithms: Algorithm::ALL.to_vec(),
            t_epoch: DEFAULT_T_EPOCH,
            runs_per_cell: 30,
            base_seed: 0,
            budget: DEFAULT_BUDGET,
            jobs: 0,
        }
    }
}

impl SweepConfig {
    pub fn from_toml_str(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|source| Error::ConfigParse {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::ConfigRead {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text, path)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs_per_cell == 0 {
            return Err(invalid("runs_per_cell must be at least 1"));
        }
        if self.budget == 0 {
            return Err(invalid("budget must be at least 1"));
        }
        if self.t_epoch == 0 && self.algorithms.contains(&Algorithm::BcGsemo) {
            return Err(invalid("t_epoch must be at least 1"));
        }
        Ok(())
    }

    /// Valid cells in ascending `(n, k, r, algorithm)` order. Combinations
    /// with `k ∤ n` or `r ≥ ℓ` are skipped with a notice.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &n in &self.n_values {
            for &k in &self.k_values {
                for &r in &self.r_values {
                    if k == 0 || n % k != 0 || r >= n / k {
                        log::info!("skipping n={n} k={k} r={r}: need k | n and r < n/k");
                        continue;
                    }
                    let params = match ProblemParams::new(n, k, r) {
                        Ok(p) => p,
                        Err(e) => {
                            log::info!("skipping n={n} k={k} r={r}: {e}");
                            continue;
                        }
                    };
                    for &algorithm in &self.algorithms {
                        cells.push(Cell {
                            params,
                            algorithm,
                            t_epoch: algorithm.effective_t_epoch(self.t_epoch),
                        });
                    }
                }
            }
        }
        cells.sort();
        cells.dedup();
        cells
    }
}

/// One `(n, k, r, algorithm, t_epoch)` combination of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub params: ProblemParams,
    pub algorithm: Algorithm,
    /// 0 for GSEMO.
    pub t_epoch: u64,
}

impl Cell {
    pub fn seed(&self, base_seed: u64, run_index: u64) -> u64 {
        derive_seed(
            base_seed,
            self.params.n() as u64,
            self.params.k() as u64,
            self.params.r() as u64,
            self.algorithm.code(),
            self.t_epoch,
            run_index,
        )
    }
}

/// One line of the raw CSV.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRow {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub algo: Algorithm,
    pub t_epoch: u64,
    pub seed: u64,
    pub run_index: u64,
    pub evaluations: u64,
    pub covered: bool,
    pub final_pop_size: usize,
}

impl RawRow {
    pub fn from_result(res: &RunResult, run_index: u64) -> Self {
        Self {
            n: res.params.n(),
            k: res.params.k(),
            r: res.params.r(),
            algo: res.algorithm,
            t_epoch: res.t_epoch,
            seed: res.seed,
            run_index,
            evaluations: res.evaluations,
            covered: res.covered,
            final_pop_size: res.final_archive.len(),
        }
    }

    fn cell_key(&self) -> (usize, usize, usize, Algorithm, u64) {
        (self.n, self.k, self.r, self.algo, self.t_epoch)
    }
}

/// A finished trial: its CSV row plus what the row does not carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub cell: Cell,
    pub row: RawRow,
    pub max_archive_size: usize,
}

/// One line of the summary CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub algo: Algorithm,
    pub t_epoch: u64,
    pub runs: u64,
    /// Mean over all runs; runs that hit the budget contribute the budget.
    pub mean_evals: f64,
    pub stderr_evals: f64,
    pub budget_hits: u64,
    pub censored: bool,
}

/// Groups rows by cell (in cell order) and computes mean and standard error.
pub fn summarize(rows: &[RawRow]) -> Vec<CellSummary> {
    let mut groups: BTreeMap<_, Vec<&RawRow>> = BTreeMap::new();
    for row in rows {
        groups.entry(row.cell_key()).or_default().push(row);
    }
    groups
        .into_iter()
        .filter_map(|((n, k, r, algo, t_epoch), group)| {
            let evals: Vec<f64> = group.iter().map(|row| row.evaluations as f64).collect();
            let Some((mean, stderr)) = mean_and_stderr(&evals) else {
                log::info!("omitting empty cell n={n} k={k} r={r} {algo}");
                return None;
            };
            let budget_hits = group.iter().filter(|row| !row.covered).count() as u64;
            Some(CellSummary {
                n,
                k,
                r,
                algo,
                t_epoch,
                runs: group.len() as u64,
                mean_evals: mean,
                stderr_evals: stderr,
                budget_hits,
                censored: budget_hits > 0,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SweepOutput {
    /// Sorted by cell, then run index.
    pub trials: Vec<Trial>,
    pub summaries: Vec<CellSummary>,
}

impl SweepOutput {
    pub fn rows(&self) -> Vec<RawRow> {
        self.trials.iter().map(|t| t.row.clone()).collect()
    }

    pub fn summary(&self, n: usize, k: usize, r: usize, algo: Algorithm) -> Option<&CellSummary> {
        self.summaries
            .iter()
            .find(|s| s.n == n && s.k == k && s.r == r && s.algo == algo)
    }
}

/// Runs every trial of `config`, `exec` deciding how trials are scheduled.
/// The output does not depend on the schedule.
pub fn run_sweep(config: &SweepConfig, exec: Execution) -> Result<SweepOutput> {
    config.validate()?;
    let jobs: Vec<(Cell, u64)> = config
        .cells()
        .into_iter()
        .flat_map(|cell| (0..config.runs_per_cell).map(move |i| (cell, i)))
        .collect();
    log::info!("running {} trials", jobs.len());
    let results = exec.map(jobs, |(cell, run_index)| -> Result<Trial> {
        let cfg = RunConfig {
            params: cell.params,
            algorithm: cell.algorithm,
            t_epoch: config.t_epoch,
            budget: config.budget,
            seed: cell.seed(config.base_seed, run_index),
            trace_every: None,
        };
        let res = run(&cfg)?;
        log::debug!(
            "{} {} run {run_index}: {} evaluations",
            cell.algorithm,
            cell.params,
            res.evaluations
        );
        Ok(Trial {
            cell,
            row: RawRow::from_result(&res, run_index),
            max_archive_size: res.max_archive_size,
        })
    });
    let mut trials = results.into_iter().collect::<Result<Vec<_>>>()?;
    trials.sort_by_key(|t| (t.cell, t.row.run_index));
    let summaries = summarize(&trials.iter().map(|t| t.row.clone()).collect::<Vec<_>>());
    Ok(SweepOutput { trials, summaries })
}

pub fn write_raw_csv<W: Write>(out: W, rows: &[RawRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record(RAW_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_csv<W: Write>(out: W, summaries: &[CellSummary]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in summaries {
        w.serialize(s)?;
    }
    if summaries.is_empty() {
        w.write_record(SUMMARY_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_raw_csv<R: std::io::Read>(input: R) -> Result<Vec<RawRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Output {
        path: PathBuf::from(path),
        source,
    })
}

/// Opens both outputs before any trial starts, runs the sweep and writes
/// the raw and summary CSVs.
pub fn run_sweep_to_files(
    config: &SweepConfig,
    exec: Execution,
    raw_path: &Path,
    summary_path: &Path,
) -> Result<SweepOutput> {
    config.validate()?;
    let raw = create(raw_path)?;
    let summary = create(summary_path)?;
    let output = run_sweep(config, exec)?;
    write_raw_csv(std::io::BufWriter::new(raw), &output.rows())?;
    write_summary_csv(std::io::BufWriter::new(summary), &output.summaries)?;
    Ok(output)
}

pub const TRACE_HEADER: &str = "evaluations,offspring,archive_size,covered_points,front_size";

/// Observer writing one CSV line per snapshot.
pub struct CsvTrace<W: Write> {
    out: W,
    error: Option<std::io::Error>,
}

impl<W: Write> CsvTrace<W> {
    pub fn new(mut out: W) -> Result<Self> {
        writeln!(out, "{TRACE_HEADER}")?;
        Ok(Self { out, error: None })
    }

    /// Flushes and reports the first write error, if any.
    pub fn finish(mut self) -> Result<W> {
        if let Some(e) = self.error.take() {
            return Err(e.into());
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> crate::algorithms::Observer for CsvTrace<W> {
    fn on_snapshot(&mut self, s: &crate::algorithms::Snapshot) {
        if self.error.is_some() {
            return;
        }
        if let Err(e) = writeln!(
            self.out,
            "{},{},{},{},{}",
            s.evaluations, s.offspring, s.archive_size, s.covered_points, s.front_size
        ) {
            self.error = Some(e);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(evaluations: u64, covered: bool) -> RawRow {
        RawRow {
            n: 24,
            k: 2,
            r: 1,
            algo: Algorithm::Gsemo,
            t_epoch: 0,
            seed: 0,
            run_index: 0,
            evaluations,
            covered,
            final_pop_size: 4,
        }
    }

    #[test]
    fn summarize_examples() {
        let s = summarize(&[row(500, true)]);
        assert_eq!((s[0].mean_evals, s[0].stderr_evals), (500.0, 0.0));
        assert!(!s[0].censored);

        let s = summarize(&[row(100, true), row(300, true)]);
        assert_eq!(s[0].mean_evals, 200.0);
        assert!((s[0].stderr_evals - 100.0).abs() < 1e-9);

        let s = summarize(&[row(100, true), row(1000, false)]);
        assert!(s[0].censored);
        assert_eq!(s[0].budget_hits, 1);
        assert_eq!(s[0].mean_evals, 550.0);

        assert!(summarize(&[]).is_empty());
    }

    #[test]
    fn cells_skip_invalid_combinations() {
        let cfg = SweepConfig {
            n_values: vec![6, 7],
            k_values: vec![2, 3],
            r_values: vec![1, 2, 3],
            algorithms: vec![Algorithm::Gsemo],
            ..SweepConfig::default()
        };
        let cells: Vec<_> = cfg
            .cells()
            .into_iter()
            .map(|c| (c.params.n(), c.params.k(), c.params.r()))
            .collect();
        // n=6: k=2 gives ℓ=3 (r=1,2); k=3 gives ℓ=2 (r=1). n=7 has no divisor.
        assert_eq!(cells, vec![(6, 2, 1), (6, 2, 2), (6, 3, 1)]);
    }

    #[test]
    fn csv_headers_are_exact() {
        let mut raw = Vec::new();
        write_raw_csv(&mut raw, &[row(7, true)]).unwrap();
        let text = String::from_utf8(raw).unwrap();
        assert_eq!(text.lines().next().unwrap(), RAW_HEADER);
        assert_eq!(text.lines().nth(1).unwrap(), "24,2,1,gsemo,0,0,0,7,true,4");

        let mut sum = Vec::new();
        write_summary_csv(&mut sum, &summarize(&[row(7, true)])).unwrap();
        let text = String::from_utf8(sum).unwrap();
        assert_eq!(text.lines().next().unwrap(), SUMMARY_HEADER);

        let mut empty = Vec::new();
        write_raw_csv(&mut empty, &[]).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap().trim(), RAW_HEADER);
    }

    #[test]
    fn config_defaults_and_overrides() {
        let cfg = SweepConfig::from_toml_str("n_values = [24]\nruns_per_cell = 3\n", Path::new("x.toml")).unwrap();
        assert_eq!(cfg.n_values, vec![24]);
        assert_eq!(cfg.runs_per_cell, 3);
        assert_eq!(cfg.t_epoch, 1000);
        assert_eq!(cfg.k_values, vec![2, 3, 4]);
        let cfg = SweepConfig::from_toml_str("algorithms = [\"bc-gsemo\"]", Path::new("x.toml")).unwrap();
        assert_eq!(cfg.algorithms, vec![Algorithm::BcGsemo]);
        assert!(SweepConfig::from_toml_str("bogus = 1", Path::new("x.toml")).is_err());
    }
}
