use serde::{Deserialize, Serialize};

use crate::rng::RngSpec;

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(replicas)`.
    pub stderr: f64,
    pub replicas: u64,
    pub rng: RngSpec,
}

impl Estimate {
    /// Summarises samples in index order, so the result does not depend on
    /// how the samples were produced.
    pub fn from_samples(samples: &[f64], rng: RngSpec) -> Self {
        let n = samples.len();
        assert!(n > 0, "an estimate needs at least one replica");
        let mean = samples.iter().sum::<f64>() / n as f64;
        let stderr = if n > 1 {
            let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self {
            mean,
            stderr,
            replicas: n as u64,
            rng,
        }
    }

    pub fn from_indicators(hits: &[bool], rng: RngSpec) -> Self {
        let xs: Vec<f64> = hits.iter().map(|&b| f64::from(u8::from(b))).collect();
        Self::from_samples(&xs, rng)
    }

    /// `|mean - target| <= k * stderr`, with a zero-width band when the
    /// samples are constant.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.stderr + 1e-12
    }
}

/// Standard error of the difference of two independent estimates.
pub fn stderr_of_difference(a: &Estimate, b: &Estimate) -> f64 {
    (a.stderr.powi(2) + b.stderr.powi(2)).sqrt()
}
