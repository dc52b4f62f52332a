//! Trial-level parallelism. A single trial is always sequential; only
//! independent work items are spread over threads.

/// How independent work items are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon pool with `jobs` threads; `0` lets rayon pick.
    #[cfg(feature = "parallel")]
    Parallel { jobs: usize },
}

#[allow(clippy::derivable_impls)]
impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel { jobs: 0 }
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// `jobs == 1` is sequential; anything else is parallel when the
    /// `parallel` feature is on.
    pub fn from_jobs(jobs: usize) -> Self {
        if jobs == 1 {
            return Execution::Sequential;
        }
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel { jobs }
        }
        #[cfg(not(feature = "parallel"))]
        {
            log::info!("built without the `parallel` feature; ignoring jobs={jobs}");
            Execution::Sequential
        }
    }

    /// Maps `f` over `items`, returning results in input order.
    pub fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match *self {
            Execution::Sequential => items.into_iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel { jobs } => {
                use rayon::prelude::*;
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .expect("failed to build rayon pool");
                pool.install(|| items.into_par_iter().map(f).collect())
            }
        }
    }
}
