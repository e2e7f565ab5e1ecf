//! Deterministic parallel replica runner.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::estimate::Estimate;
use crate::rng::RngSpec;

/// How many replicas to run, from which root stream, on how many threads.
///
/// Replica `k` always draws from `rng.replica(k)` and results come back in
/// replica order, so outputs do not depend on `workers`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McPlan {
    pub replicas: u64,
    pub rng: RngSpec,
    /// 0 means one thread per available core.
    pub workers: usize,
}

impl McPlan {
    pub fn new(replicas: u64, rng: RngSpec) -> Self {
        Self {
            replicas,
            rng,
            workers: 0,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn run<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(RngSpec) -> T + Sync + Send,
    {
        let go = || {
            (0..self.replicas)
                .into_par_iter()
                .map(|k| f(self.rng.replica(k)))
                .collect()
        };
        if self.workers == 1 {
            return (0..self.replicas).map(|k| f(self.rng.replica(k))).collect();
        }
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
        {
            Ok(pool) => pool.install(go),
            Err(_) => go(),
        }
    }

    pub fn estimate_indicator<F>(&self, f: F) -> Estimate
    where
        F: Fn(RngSpec) -> bool + Sync + Send,
    {
        Estimate::from_indicators(&self.run(f), self.rng)
    }
}
