//! Worker-pool capability passed from the CLI into the parallel sweeps.
//! All reductions stay deterministic (sorted merges), so results do not
//! depend on the worker count.

use std::sync::Arc;

#[derive(Clone, Default)]
pub struct Parallelism {
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl Parallelism {
    /// A pool with the given number of workers; 0 means the rayon default.
    pub fn new(workers: usize) -> Self {
        if workers == 0 {
            return Parallelism { pool: None };
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool construction");
        Parallelism {
            pool: Some(Arc::new(pool)),
        }
    }

    pub fn sequential() -> Self {
        Self::new(1)
    }

    /// Run `f` inside this pool so that rayon iterators underneath pick up
    /// the configured worker count.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }
}

impl std::fmt::Debug for Parallelism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.pool {
            Some(p) => write!(f, "Parallelism({} workers)", p.current_num_threads()),
            None => write!(f, "Parallelism(default)"),
        }
    }
}
