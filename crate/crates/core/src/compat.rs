//! Clairvoyant compatibility: deleting 0s to avoid simultaneous 1s.
//!
//! On finite words the collision constraint applies only while both
//! outputs still have letters. Once either output ends, the rest of the
//! other is unconstrained, so compatibility is monotone in the horizon and
//! `ψ_n(p)` bounds `ψ(p)` from above.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::mc::McPlan;
use crate::word::{check_probability, Word};

/// Letters kept from each word (1-based, increasing); the others are 0s.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionWitness {
    pub kept_x: Vec<usize>,
    pub kept_y: Vec<usize>,
}

impl DeletionWitness {
    pub fn validate(&self, x: &Word, y: &Word) -> std::result::Result<(), String> {
        check_kept(&self.kept_x, x, "x")?;
        check_kept(&self.kept_y, y, "y")?;
        for (t, (&a, &b)) in self.kept_x.iter().zip(&self.kept_y).enumerate() {
            if x.get(a - 1) == 1 && y.get(b - 1) == 1 {
                return Err(format!("collision at output position {}", t + 1));
            }
        }
        Ok(())
    }
}

fn check_kept(kept: &[usize], w: &Word, name: &str) -> std::result::Result<(), String> {
    if kept.windows(2).any(|p| p[0] >= p[1]) {
        return Err(format!("kept_{name} is not strictly increasing"));
    }
    if kept.iter().any(|&k| k == 0 || k > w.len()) {
        return Err(format!("kept_{name} index out of range"));
    }
    let mut next = kept.iter().peekable();
    for i in 1..=w.len() {
        if next.peek() == Some(&&i) {
            next.next();
        } else if w.get(i - 1) == 1 {
            return Err(format!("{name}_{i} = 1 was deleted"));
        }
    }
    Ok(())
}

/// `zero_tail[i]`: letters `i..` are all 0.
fn zero_tail(w: &Word) -> Vec<bool> {
    let mut out = vec![true; w.len() + 1];
    for i in (0..w.len()).rev() {
        out[i] = out[i + 1] && w.get(i) == 0;
    }
    out
}

/// Candidates for the next kept letter after consuming `i` letters: any
/// index reachable by deleting a run of 0s, up to and including the first
/// 1. Only called when a 1 remains.
fn next_letters(w: &Word, i: usize) -> std::ops::RangeInclusive<usize> {
    let stop = (i..w.len())
        .find(|&k| w.get(k) == 1)
        .expect("a 1 remains after position i");
    i..=stop
}

/// Finite-horizon compatibility of `x` and `y` by DP over consumed-prefix
/// pairs `(i, j)`.
pub fn compatible_prefix(x: &Word, y: &Word) -> Option<DeletionWitness> {
    let (n, m) = (x.len(), y.len());
    let zx = zero_tail(x);
    let zy = zero_tail(y);
    let idx = |i: usize, j: usize| i * (m + 1) + j;
    const UNSEEN: usize = usize::MAX;
    let mut parent = vec![UNSEEN; (n + 1) * (m + 1)];
    parent[idx(0, 0)] = idx(0, 0);
    let mut stack = vec![(0usize, 0usize)];
    while let Some((i, j)) = stack.pop() {
        if zx[i] || zy[j] {
            return Some(witness(x, y, i, j, &parent, m));
        }
        for a in next_letters(x, i) {
            for b in next_letters(y, j) {
                if x.get(a) == 1 && y.get(b) == 1 {
                    continue;
                }
                let s = idx(a + 1, b + 1);
                if parent[s] == UNSEEN {
                    parent[s] = idx(i, j);
                    stack.push((a + 1, b + 1));
                }
            }
        }
    }
    None
}

fn witness(x: &Word, y: &Word, i: usize, j: usize, parent: &[usize], m: usize) -> DeletionWitness {
    let mut kept_x: Vec<usize> = (i + 1..=x.len()).collect();
    let mut kept_y: Vec<usize> = (j + 1..=y.len()).collect();
    let mut s = i * (m + 1) + j;
    while s != 0 {
        let (a, b) = (s / (m + 1), s % (m + 1));
        kept_x.push(a);
        kept_y.push(b);
        s = parent[s];
    }
    kept_x.sort_unstable();
    kept_y.sort_unstable();
    DeletionWitness { kept_x, kept_y }
}

/// Largest `|x| + |y|` the exhaustive oracle accepts.
pub const ORACLE_BUDGET: usize = 24;

/// Tries every set of deleted 0s in both words.
pub fn compat_oracle(x: &Word, y: &Word) -> Result<bool> {
    if x.len() + y.len() > ORACLE_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "letters in both words",
            needed: (x.len() + y.len()) as u64,
            budget: ORACLE_BUDGET as u64,
        });
    }
    let outputs = |w: &Word| -> Vec<Vec<u8>> {
        let zeros: Vec<usize> = (0..w.len()).filter(|&i| w.get(i) == 0).collect();
        (0u32..1 << zeros.len())
            .map(|mask| {
                (0..w.len())
                    .filter(|i| match zeros.binary_search(i) {
                        Ok(z) => mask >> z & 1 == 0,
                        Err(_) => true,
                    })
                    .map(|i| w.get(i))
                    .collect()
            })
            .collect()
    };
    let xs = outputs(x);
    let ys = outputs(y);
    Ok(xs
        .iter()
        .any(|a| ys.iter().any(|b| a.iter().zip(b).all(|(p, q)| p & q == 0))))
}

/// `N` at which both prefixes have a strict majority of 1s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorityCertificate {
    pub n: usize,
}

impl MajorityCertificate {
    pub fn validate(&self, x: &Word, y: &Word) -> bool {
        let ones = |w: &Word| w.prefix(self.n).count_ones();
        self.n >= 1 && self.n <= x.len().min(y.len()) && 2 * ones(x) > self.n && 2 * ones(y) > self.n
    }
}

/// Smallest `N` with `Σ x_i > N/2` and `Σ y_i > N/2`.
pub fn majority_certificate(x: &Word, y: &Word) -> Result<Option<MajorityCertificate>> {
    if x.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "words differ in length: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let (mut sx, mut sy) = (0usize, 0usize);
    for k in 0..x.len() {
        sx += usize::from(x.get(k));
        sy += usize::from(y.get(k));
        let n = k + 1;
        if 2 * sx > n && 2 * sy > n {
            return Ok(Some(MajorityCertificate { n }));
        }
    }
    Ok(None)
}

/// Letters `x_i = [U_i < p]` from shared uniforms, so words drawn at
/// different `p` from the same stream are ordered letter by letter.
pub fn coupled_words<R: Rng + ?Sized>(p: f64, n: usize, rng: &mut R) -> (Word, Word) {
    let ux: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
    let uy: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
    let word = |u: &[f64]| u.iter().map(|&u| u8::from(u < p)).collect::<Word>();
    (word(&ux), word(&uy))
}

/// `ψ_n(p)`: probability the length-`n` prefixes are compatible.
pub fn psi_mc(p: f64, n: usize, plan: &McPlan) -> Result<Estimate> {
    Ok(psi_curve_mc(p, &[n], plan)?.remove(0).1)
}

/// `ψ_n(p)` for several horizons, read off prefixes of the same words.
pub fn psi_curve_mc(p: f64, horizons: &[usize], plan: &McPlan) -> Result<Vec<(usize, Estimate)>> {
    check_probability(p)?;
    let max = horizons.iter().copied().max().unwrap_or(0);
    let hits = plan.run(|spec| {
        let (x, y) = coupled_words(p, max, &mut spec.rng());
        horizons
            .iter()
            .map(|&n| compatible_prefix(&x.prefix(n), &y.prefix(n)).is_some())
            .collect::<Vec<bool>>()
    });
    Ok(horizons
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            let col: Vec<bool> = hits.iter().map(|h| h[k]).collect();
            (n, Estimate::from_indicators(&col, plan.rng))
        })
        .collect())
}

/// Likelihood ratio of a pair drawn at density `q` under density `p`.
fn tilt_weight(p: f64, q: f64, ones: usize, zeros: usize) -> f64 {
    let term = |count: usize, num: f64, den: f64| if count == 0 { 0.0 } else { count as f64 * (num / den).ln() };
    (term(ones, p, q) + term(zeros, 1.0 - p, 1.0 - q)).exp()
}

/// Importance-sampled `ψ_n(p)`: both words drawn at density `q`, each
/// compatible pair weighted by its likelihood ratio. Unbiased for any
/// `q` in `(0,1)`; a `q` below `p` makes the rare compatible pairs common.
pub fn psi_tilted_mc(p: f64, n: usize, q: f64, plan: &McPlan) -> Result<Estimate> {
    check_probability(p)?;
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidArgument(format!("proposal density {q} outside (0,1)")));
    }
    let samples = plan.run(|spec| {
        let (x, y) = coupled_words(q, n, &mut spec.rng());
        if compatible_prefix(&x, &y).is_none() {
            return 0.0;
        }
        let ones = x.count_ones() + y.count_ones();
        tilt_weight(p, q, ones, 2 * n - ones)
    });
    Ok(Estimate::from_samples(&samples, plan.rng))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TiltedPoint {
    pub n: usize,
    /// Proposal density picked by the pilot run.
    pub q: f64,
    pub estimate: Estimate,
}

/// Proposal densities tried by the pilot, as fractions of `p`.
pub const TILT_FRACTIONS: [f64; 5] = [0.6, 0.7, 0.8, 0.9, 1.0];

/// `ψ_n(p)` per horizon by [`psi_tilted_mc`]. A pilot of a tenth of the
/// replicas on a separate stream picks, per horizon, the proposal with the
/// smallest relative standard error; the main run then uses fresh streams.
pub fn psi_curve_tilted(p: f64, horizons: &[usize], plan: &McPlan) -> Result<Vec<TiltedPoint>> {
    check_probability(p)?;
    let pilot = McPlan {
        replicas: (plan.replicas / 10).max(100),
        rng: plan.rng.fork(0x7011),
        workers: plan.workers,
    };
    horizons
        .iter()
        .map(|&n| {
            let mut best: Option<(f64, f64)> = None;
            for f in TILT_FRACTIONS {
                let q = p * f;
                if !(q > 0.0 && q < 1.0) {
                    continue;
                }
                let e = psi_tilted_mc(p, n, q, &pilot)?;
                if e.mean > 0.0 {
                    let rel = e.stderr / e.mean;
                    if best.is_none_or(|(r, _)| rel < r) {
                        best = Some((rel, q));
                    }
                }
            }
            let q = best.map_or(p * TILT_FRACTIONS[0], |(_, q)| q);
            let main = McPlan {
                rng: plan.rng.fork(n as u64),
                ..*plan
            };
            let estimate = if q > 0.0 && q < 1.0 {
                psi_tilted_mc(p, n, q, &main)?
            } else {
                psi_mc(p, n, &main)?
            };
            Ok(TiltedPoint { n, q, estimate })
        })
        .collect()
}
