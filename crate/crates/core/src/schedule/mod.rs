//! Clairvoyant scheduling of two walks on the looped complete graph `K_M`.
//!
//! Walks on `K_M` with a loop at every vertex are iid uniform sequences on
//! `{1..M}`. Index 0 of each sequence is the walker's starting site. The
//! grid vertex `(i,j)` is open iff `X_i != Y_j`; the origin is open by
//! declaration. A good schedule is a monotone lattice path from the origin
//! through open vertices only.

mod kwise;

pub use kwise::{kwise_joint, kwise_joint_with_budget, DEFAULT_KWISE_BUDGET};

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::frontier::Frontier;
use crate::mc::McPlan;
use crate::seq::IntSequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleGrid {
    x: IntSequence,
    y: IntSequence,
}

impl ScheduleGrid {
    /// `x` and `y` hold `X_0..X_n` and `Y_0..Y_n` over the same alphabet.
    pub fn new(x: IntSequence, y: IntSequence) -> Result<Self> {
        if x.alphabet() != y.alphabet() {
            return Err(Error::InvalidArgument(format!(
                "alphabets differ: {} vs {}",
                x.alphabet(),
                y.alphabet()
            )));
        }
        if x.is_empty() || y.is_empty() {
            return Err(Error::InvalidArgument("walks need a starting site".into()));
        }
        Ok(Self { x, y })
    }

    /// Distinct uniform starting sites, then `n` iid uniform steps each.
    pub fn sample<R: Rng + ?Sized>(alphabet: u32, n: usize, rng: &mut R) -> Self {
        let x0 = rng.gen_range(1..=alphabet);
        let mut y0 = rng.gen_range(1..alphabet);
        if y0 >= x0 {
            y0 += 1;
        }
        let walk = |start: u32, rng: &mut R| {
            let tail = IntSequence::sample_with(alphabet, n, rng);
            let mut v = Vec::with_capacity(n + 1);
            v.push(start);
            v.extend_from_slice(tail.values());
            IntSequence::new(v, alphabet).expect("sampled values lie in the alphabet")
        };
        let x = walk(x0, rng);
        let y = walk(y0, rng);
        Self { x, y }
    }

    pub fn alphabet(&self) -> u32 {
        self.x.alphabet()
    }

    pub fn x(&self) -> &IntSequence {
        &self.x
    }

    pub fn y(&self) -> &IntSequence {
        &self.y
    }

    /// Largest index available along each axis.
    pub fn size(&self) -> usize {
        self.x.len().min(self.y.len()) - 1
    }

    #[inline]
    pub fn is_open(&self, i: usize, j: usize) -> bool {
        (i, j) == (0, 0) || self.x.values()[i] != self.y.values()[j]
    }

    pub fn reduce_mod(&self, m: u32) -> Result<Self> {
        Self::new(self.x.reduce_mod(m)?, self.y.reduce_mod(m)?)
    }
}

/// Lattice path from `(0,0)`; each step adds 1 to exactly one coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub vertices: Vec<(usize, usize)>,
}

impl PathWitness {
    pub fn validate(&self, grid: &ScheduleGrid) -> std::result::Result<(), String> {
        if self.vertices.first() != Some(&(0, 0)) {
            return Err("path must start at the origin".into());
        }
        for pair in self.vertices.windows(2) {
            let ((a, b), (c, d)) = (pair[0], pair[1]);
            if !((c == a + 1 && d == b) || (c == a && d == b + 1)) {
                return Err(format!("illegal step {:?} -> {:?}", pair[0], pair[1]));
            }
        }
        for &(i, j) in &self.vertices[1..] {
            if i > grid.size() || j > grid.size() {
                return Err(format!("vertex ({i},{j}) outside the grid"));
            }
            if !grid.is_open(i, j) {
                return Err(format!("vertex ({i},{j}) is closed"));
            }
        }
        Ok(())
    }

    /// Schedule letters: `X` for a step in the first coordinate.
    pub fn schedule(&self) -> String {
        self.vertices
            .windows(2)
            .map(|p| if p[1].0 > p[0].0 { 'X' } else { 'Y' })
            .collect()
    }
}

/// Frontiers over antidiagonals; `out[k]` holds the `i` of every reachable
/// open `(i, k-i)`. Stops early when a frontier empties.
fn antidiagonal_frontiers(grid: &ScheduleGrid, depth: usize) -> Vec<Frontier> {
    let mut out = Vec::with_capacity(depth + 1);
    let mut origin = Frontier::new(1);
    origin.insert(0);
    out.push(origin);
    for k in 1..=depth {
        let prev = &out[k - 1];
        let mut next = Frontier::new(k + 1);
        for i in 0..=k {
            let j = k - i;
            let from_left = i >= 1 && prev.contains(i - 1);
            let from_below = j >= 1 && prev.contains(i);
            if (from_left || from_below) && grid.is_open(i, j) {
                next.insert(i);
            }
        }
        let dead = next.is_empty();
        out.push(next);
        if dead {
            break;
        }
    }
    out
}

/// An open monotone path from the origin to the antidiagonal `i + j = depth`.
pub fn directed_survival(grid: &ScheduleGrid, depth: usize) -> Result<Option<PathWitness>> {
    check_depth(grid, depth)?;
    let fronts = antidiagonal_frontiers(grid, depth);
    if fronts.len() != depth + 1 || fronts[depth].is_empty() {
        return Ok(None);
    }
    let mut i = fronts[depth].iter().next().expect("non-empty");
    let mut vertices = vec![(i, depth - i)];
    for k in (1..=depth).rev() {
        let j = k - i;
        if i >= 1 && fronts[k - 1].contains(i - 1) {
            i -= 1;
        } else {
            debug_assert!(j >= 1 && fronts[k - 1].contains(i));
        }
        vertices.push((i, k - 1 - i));
    }
    vertices.reverse();
    Ok(Some(PathWitness { vertices }))
}

/// Deepest antidiagonal reached, capped at `max_depth`.
pub fn survival_depth(grid: &ScheduleGrid, max_depth: usize) -> Result<usize> {
    check_depth(grid, max_depth)?;
    let fronts = antidiagonal_frontiers(grid, max_depth);
    Ok(fronts.iter().rposition(|f| !f.is_empty()).expect("origin is reachable"))
}

fn check_depth(grid: &ScheduleGrid, depth: usize) -> Result<()> {
    if depth > grid.size() {
        return Err(Error::InvalidArgument(format!(
            "depth {depth} exceeds grid size {}",
            grid.size()
        )));
    }
    Ok(())
}

/// `P(survival to depth n)` for each requested depth, all depths read off
/// the same replicas.
pub fn survival_curve_mc(alphabet: u32, depths: &[usize], plan: &McPlan) -> Result<Vec<(usize, Estimate)>> {
    if alphabet < 2 {
        return Err(Error::AlphabetTooSmall(alphabet));
    }
    let max = depths.iter().copied().max().unwrap_or(0);
    let reached = plan.run(|spec| {
        let grid = ScheduleGrid::sample(alphabet, max, &mut spec.rng());
        survival_depth(&grid, max).expect("grid sampled at full depth")
    });
    Ok(depths
        .iter()
        .map(|&d| {
            let hits: Vec<bool> = reached.iter().map(|&r| r >= d).collect();
            (d, Estimate::from_indicators(&hits, plan.rng))
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingSample {
    /// Every vertex open in the reduced grid is open in the original one.
    pub superset: bool,
    pub depth_original: usize,
    pub depth_reduced: usize,
}

impl CouplingSample {
    pub fn ordering_holds(&self) -> bool {
        self.depth_original >= self.depth_reduced
    }
}

/// Samples walks on `{1..kM}`, reduces them mod `M`, and compares.
pub fn coupling_check<R: Rng + ?Sized>(alphabet: u32, k: u32, n: usize, rng: &mut R) -> Result<CouplingSample> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if alphabet < 2 {
        return Err(Error::AlphabetTooSmall(alphabet));
    }
    let big = ScheduleGrid::sample(alphabet * k, n, rng);
    let small = big.reduce_mod(alphabet)?;
    let superset = (0..=n).all(|i| (0..=n).all(|j| !small.is_open(i, j) || big.is_open(i, j)));
    Ok(CouplingSample {
        superset,
        depth_original: survival_depth(&big, n)?,
        depth_reduced: survival_depth(&small, n)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingSummary {
    pub samples: u64,
    pub superset_violations: u64,
    pub ordering_violations: u64,
}

pub fn coupling_mc(alphabet: u32, k: u32, n: usize, plan: &McPlan) -> Result<CouplingSummary> {
    let samples = plan.run(|spec| coupling_check(alphabet, k, n, &mut spec.rng()));
    let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(CouplingSummary {
        samples: samples.len() as u64,
        superset_violations: samples.iter().filter(|s| !s.superset).count() as u64,
        ordering_violations: samples.iter().filter(|s| !s.ordering_holds()).count() as u64,
    })
}

/// Whether the open cluster of the origin, with undirected 4-neighbour
/// adjacency on `{0..n}^2`, touches `i = n` or `j = n`.
pub fn undirected_escape(grid: &ScheduleGrid, n: usize) -> Result<bool> {
    check_depth(grid, n)?;
    if n == 0 {
        return Ok(true);
    }
    let side = n + 1;
    let mut seen = vec![false; side * side];
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    seen[0] = true;
    while let Some((i, j)) = queue.pop_front() {
        if i == n || j == n {
            return Ok(true);
        }
        let nbrs = [
            (i.wrapping_sub(1), j),
            (i + 1, j),
            (i, j.wrapping_sub(1)),
            (i, j + 1),
        ];
        for (a, b) in nbrs {
            if a <= n && b <= n && !seen[a * side + b] && grid.is_open(a, b) {
                seen[a * side + b] = true;
                queue.push_back((a, b));
            }
        }
    }
    Ok(false)
}

pub fn undirected_escape_mc(alphabet: u32, n: usize, plan: &McPlan) -> Result<Estimate> {
    if alphabet < 2 {
        return Err(Error::AlphabetTooSmall(alphabet));
    }
    Ok(plan.estimate_indicator(|spec| {
        let grid = ScheduleGrid::sample(alphabet, n, &mut spec.rng());
        undirected_escape(&grid, n).expect("grid sampled at full size")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngSpec;

    fn seq(v: &[u32], m: u32) -> IntSequence {
        IntSequence::new(v.to_vec(), m).unwrap()
    }

    /// Tries every monotone path of length `depth`.
    pub(crate) fn survives_brute(grid: &ScheduleGrid, depth: usize) -> bool {
        (0u32..1 << depth).any(|steps| {
            let (mut i, mut j) = (0, 0);
            (0..depth).all(|t| {
                if steps >> t & 1 == 1 {
                    i += 1
                } else {
                    j += 1
                }
                grid.is_open(i, j)
            })
        })
    }

    #[test]
    fn all_open_grid_survives() {
        let g = ScheduleGrid::new(seq(&[1; 21], 2), seq(&[2; 21], 2)).unwrap();
        for d in 0..=20 {
            let w = directed_survival(&g, d).unwrap().unwrap();
            assert_eq!(w.vertices.len(), d + 1);
            assert!(w.validate(&g).is_ok());
        }
        assert!(undirected_escape(&g, 20).unwrap());
    }

    #[test]
    fn all_closed_grid_dies_at_one() {
        let g = ScheduleGrid::new(seq(&[3; 11], 3), seq(&[3; 11], 3)).unwrap();
        assert!(directed_survival(&g, 0).unwrap().is_some());
        assert!(directed_survival(&g, 1).unwrap().is_none());
        assert_eq!(survival_depth(&g, 10).unwrap(), 0);
        assert!(!undirected_escape(&g, 10).unwrap());
    }

    #[test]
    fn depth_beyond_grid_is_an_error() {
        let g = ScheduleGrid::new(seq(&[1, 2], 2), seq(&[2, 1], 2)).unwrap();
        assert!(directed_survival(&g, 2).is_err());
    }

    #[test]
    fn witness_validator_catches_closed_vertex() {
        let g = ScheduleGrid::new(seq(&[1, 1, 2], 2), seq(&[2, 1, 2], 2)).unwrap();
        let bad = PathWitness { vertices: vec![(0, 0), (1, 0), (1, 1)] };
        assert!(bad.validate(&g).is_err());
        let jump = PathWitness { vertices: vec![(0, 0), (1, 1)] };
        assert!(jump.validate(&g).is_err());
    }

    #[test]
    fn dp_matches_brute_force() {
        for seed in 0..300u64 {
            let mut rng = RngSpec::new(seed, 99).rng();
            let m = 2 + (seed % 3) as u32;
            let g = ScheduleGrid::sample(m, 10, &mut rng);
            for d in 0..=10 {
                let dp = directed_survival(&g, d).unwrap();
                assert_eq!(dp.is_some(), survives_brute(&g, d), "seed {seed} depth {d}");
                if let Some(w) = dp {
                    assert!(w.validate(&g).is_ok());
                    assert_eq!(w.schedule().len(), d);
                }
            }
        }
    }

    #[test]
    fn sampled_start_sites_differ() {
        for seed in 0..200 {
            let g = ScheduleGrid::sample(2, 3, &mut RngSpec::new(seed, 0).rng());
            assert_ne!(g.x().values()[0], g.y().values()[0]);
        }
    }

    #[test]
    fn openness_marginal() {
        let m = 4;
        let g = ScheduleGrid::sample(m, 400, &mut RngSpec::new(4, 0).rng());
        // interior vertices only; rows share X_i so use one per row and column
        let n = 400;
        let open = (1..=n).filter(|&i| g.is_open(i, i)).count() as f64 / n as f64;
        let p = 1.0 - 1.0 / m as f64;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((open - p).abs() < 3.0 * se, "{open}");
    }

    #[test]
    fn curve_is_monotone_and_starts_at_one() {
        let plan = McPlan::new(300, RngSpec::new(1, 0));
        let curve = survival_curve_mc(3, &[0, 1, 5, 20, 60], &plan).unwrap();
        assert_eq!(curve[0].1.mean, 1.0);
        for w in curve.windows(2) {
            assert!(w[1].1.mean <= w[0].1.mean);
        }
    }

    #[test]
    fn coupling_identity_when_k_is_one() {
        let mut rng = RngSpec::new(2, 0).rng();
        let s = coupling_check(3, 1, 30, &mut rng).unwrap();
        assert!(s.superset);
        assert_eq!(s.depth_original, s.depth_reduced);
    }

    #[test]
    fn coupling_never_violated() {
        let plan = McPlan::new(200, RngSpec::new(3, 0));
        let s = coupling_mc(2, 3, 30, &plan).unwrap();
        assert_eq!((s.superset_violations, s.ordering_violations), (0, 0));
    }
}
