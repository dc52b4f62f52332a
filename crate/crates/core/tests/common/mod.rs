#![allow(dead_code)]

use std::path::PathBuf;

use bcgsemo::harness::{write_raw_csv, CsvTrace, RawRow};
use bcgsemo::{run_with_observer, Algorithm, ProblemParams, RunConfig};

pub const GOLDEN_SEEDS: [u64; 2] = [1, 2];
pub const GOLDEN_TRACE_EVERY: u64 = 250;

pub fn fixture_path(algorithm: Algorithm, seed: u64) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("golden_{}_n24_k2_r1_seed{seed}.csv", algorithm.id()))
}

/// Trace rows followed by the raw result row for `(n=24, k=2, r=1)`.
pub fn golden_text(algorithm: Algorithm, seed: u64) -> String {
    let params = ProblemParams::new(24, 2, 1).unwrap();
    let cfg = RunConfig::new(params, algorithm)
        .with_seed(seed)
        .with_trace_every(GOLDEN_TRACE_EVERY);
    let mut trace = CsvTrace::new(Vec::new()).unwrap();
    let res = run_with_observer(&cfg, &mut trace).unwrap();
    let mut out = trace.finish().unwrap();
    write_raw_csv(&mut out, &[RawRow::from_result(&res, 0)]).unwrap();
    String::from_utf8(out).unwrap()
}
