use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::mc::McPlan;

/// Finite-support law on `[0,1]` for the column densities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mixture {
    points: Vec<(f64, f64)>,
}

impl Mixture {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("mixture needs at least one point".into()));
        }
        for &(v, w) in &points {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidProbability(v));
            }
            if !(w >= 0.0) {
                return Err(Error::InvalidArgument(format!("negative weight {w}")));
            }
        }
        let total: f64 = points.iter().map(|p| p.1).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!("weights sum to {total}")));
        }
        Ok(Self { points })
    }

    pub fn point(p: f64) -> Result<Self> {
        Self::new(vec![(p, 1.0)])
    }

    /// Parses `v1:w1,v2:w2,...`.
    pub fn parse(s: &str) -> Result<Self> {
        let points = s
            .split(',')
            .map(|item| {
                let (v, w) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected value:weight, got {item:?}")))?;
                let v: f64 = v.trim().parse().map_err(|_| Error::Parse(format!("value {v:?}")))?;
                let w: f64 = w.trim().parse().map_err(|_| Error::Parse(format!("weight {w:?}")))?;
                Ok((v, w))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if let [(v, _)] = self.points[..] {
            return v;
        }
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for &(v, w) in &self.points {
            acc += w;
            if u < acc {
                return v;
            }
        }
        self.points.last().expect("non-empty").0
    }
}

/// Column densities `X_i` and the configuration they generate on an
/// `n × n` box. Column `i` is the horizontal coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnEnvironment {
    pub densities: Vec<f64>,
    /// `open[i * n + j]` for column `i`, row `j`.
    pub open: Vec<bool>,
    pub n: usize,
}

impl ColumnEnvironment {
    pub fn sample<R: Rng + ?Sized>(mu: &Mixture, n: usize, rng: &mut R) -> Self {
        let densities: Vec<f64> = (0..n).map(|_| mu.sample(rng)).collect();
        let uniforms: Vec<f64> = (0..n * n).map(|_| rng.gen()).collect();
        Self::from_uniforms(densities, &uniforms)
    }

    /// `(i,j)` open iff `uniforms[i*n + j] < densities[i]`.
    pub fn from_uniforms(densities: Vec<f64>, uniforms: &[f64]) -> Self {
        let n = densities.len();
        assert_eq!(uniforms.len(), n * n, "one uniform per site");
        let open = (0..n * n).map(|s| uniforms[s] < densities[s / n]).collect();
        Self { densities, open, n }
    }

    /// Left column connected to right column through open sites.
    pub fn crosses_horizontally(&self) -> bool {
        crossing(&self.open, self.n)
    }
}

fn crossing(open: &[bool], n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n * n];
    let mut queue: VecDeque<(usize, usize)> = (0..n).filter(|&j| open[j]).map(|j| (0, j)).collect();
    for &(_, j) in &queue {
        seen[j] = true;
    }
    while let Some((i, j)) = queue.pop_front() {
        if i == n - 1 {
            return true;
        }
        let nbrs = [
            (i.wrapping_sub(1), j),
            (i + 1, j),
            (i, j.wrapping_sub(1)),
            (i, j + 1),
        ];
        for (a, b) in nbrs {
            if a < n && b < n && !seen[a * n + b] && open[a * n + b] {
                seen[a * n + b] = true;
                queue.push_back((a, b));
            }
        }
    }
    false
}

/// Crossing indicator for given densities and site uniforms.
pub fn column_crossing(densities: &[f64], uniforms: &[f64]) -> bool {
    ColumnEnvironment::from_uniforms(densities.to_vec(), uniforms).crosses_horizontally()
}

/// Probability that the box is crossed left to right.
pub fn column_percolation_mc(mu: &Mixture, n: usize, plan: &McPlan) -> Estimate {
    plan.estimate_indicator(|spec| ColumnEnvironment::sample(mu, n, &mut spec.rng()).crosses_horizontally())
}

/// Same observable for iid site percolation, sampled site by site.
pub fn iid_crossing_mc(p: f64, n: usize, plan: &McPlan) -> Estimate {
    plan.estimate_indicator(|spec| {
        let mut rng = spec.rng();
        let open: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(p)).collect();
        crossing(&open, n)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimate::stderr_of_difference;
    use crate::rng::RngSpec;

    #[test]
    fn parse_mixture() {
        let mu = Mixture::parse("0.2:0.5, 0.9:0.5").unwrap();
        assert_eq!(mu.points(), &[(0.2, 0.5), (0.9, 0.5)]);
        assert!(Mixture::parse("0.2:0.5").is_err());
        assert!(Mixture::parse("1.2:1").is_err());
        assert!(Mixture::parse("0.5").is_err());
    }

    #[test]
    fn point_masses_at_extremes() {
        let plan = McPlan::new(50, RngSpec::new(1, 0));
        assert_eq!(column_percolation_mc(&Mixture::point(1.0).unwrap(), 20, &plan).mean, 1.0);
        assert_eq!(column_percolation_mc(&Mixture::point(0.0).unwrap(), 20, &plan).mean, 0.0);
    }

    #[test]
    fn point_mass_matches_iid() {
        for (k, p) in [0.3, 0.7, 0.6].into_iter().enumerate() {
            let plan = McPlan::new(2000, RngSpec::new(10 + k as u64, 0));
            let col = column_percolation_mc(&Mixture::point(p).unwrap(), 16, &plan);
            let iid = iid_crossing_mc(p, 16, &McPlan::new(2000, plan.rng.fork(1)));
            let se = stderr_of_difference(&col, &iid);
            assert!((col.mean - iid.mean).abs() <= 3.0 * se + 1e-12, "p={p}: {col:?} {iid:?}");
        }
    }

    #[test]
    fn mixture_sampling_frequencies() {
        let mu = Mixture::parse("0.1:0.25,0.5:0.75").unwrap();
        let mut rng = RngSpec::new(3, 0).rng();
        let n = 40_000;
        let hits = (0..n).filter(|_| mu.sample(&mut rng) == 0.1).count() as f64 / n as f64;
        let se = (0.25f64 * 0.75 / n as f64).sqrt();
        assert!((hits - 0.25).abs() < 3.0 * se);
    }

    #[test]
    fn monotone_under_domination() {
        let n = 12;
        for seed in 0..300 {
            let mut rng = RngSpec::new(seed, 5).rng();
            let uniforms: Vec<f64> = (0..n * n).map(|_| rng.gen()).collect();
            let p: f64 = rng.gen();
            let q = p + (1.0 - p) * rng.gen::<f64>();
            let lo = column_crossing(&vec![p; n], &uniforms);
            let hi = column_crossing(&vec![q; n], &uniforms);
            assert!(!lo || hi, "seed {seed}");
        }
    }
}
