//! Evolutionary multi-objective optimisation with block-coordinate mutation.
//!
//! * [`genome`]: bitstrings, the seeded generator, standard and block mutation.
//! * [`benchmark`]: the `f_{nkr}` family with exact digit-wise comparison.
//! * [`archive`]: the non-dominated population.
//! * [`algorithms`]: GSEMO and BC-GSEMO.
//! * [`oracle`]: brute-force and big-integer checkers for small instances.
//! * [`harness`]: seeded sweeps, summaries and CSV output.

pub mod algorithms;
pub mod archive;
pub mod benchmark;
pub mod error;
pub mod exec;
pub mod genome;
pub mod harness;
pub mod oracle;

pub use algorithms::{run, run_bc_gsemo, run_gsemo, run_with_observer, Algorithm, RunConfig, RunResult};
pub use benchmark::{ObjectiveKey, ProblemParams};
pub use error::{Error, Result};
pub use exec::Execution;
pub use genome::{BitString, RandomSource};
