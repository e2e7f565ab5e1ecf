//! Block renormalisation for embedding words in a random array.
//!
//! Blocks `B_R(i,j) = ((i-1)R, iR] × ((j-1)R, jR]` are good when they hold
//! both letters. Steps `(i,j) -> (i+1,j+1)` and `(i,j) -> (i+1,j+2)` make the
//! block graph a copy of the north-east directed quadrant, and consecutive
//! cells chosen in adjacent blocks are at L1 distance at most `5R` with both
//! coordinates strictly increasing. A directed path of good blocks therefore
//! carries a `5R`-embedding of every word.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frontier::Frontier;
use crate::ratio::{int, Rational};
use crate::word::Word;

use super::field::Field2D;

/// Critical probability of directed site percolation on `Z^2`, from the
/// numerical literature. Used only for diagnostic comparisons.
pub const DIRECTED_SITE_THRESHOLD: f64 = 0.705489;

/// `1 - p^{R^2} - (1-p)^{R^2}`.
pub fn block_good_prob(p: f64, r: usize) -> f64 {
    let cells = (r * r) as i32;
    1.0 - p.powi(cells) - (1.0 - p).powi(cells)
}

pub fn block_good_prob_exact(p: &Rational, r: usize) -> Rational {
    let cells = (r * r) as i32;
    int(1) - p.pow(cells) - (int(1) - p).pow(cells)
}

/// Goodness of every complete block of a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGrid {
    pub r: usize,
    pub block_rows: usize,
    pub block_cols: usize,
    good: Vec<bool>,
}

impl BlockGrid {
    pub fn new(field: &Field2D, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("block side must be positive".into()));
        }
        let (block_rows, block_cols) = (field.rows() / r, field.cols() / r);
        let mut good = Vec::with_capacity(block_rows * block_cols);
        for bi in 0..block_rows {
            for bj in 0..block_cols {
                let mut seen = [false; 2];
                for a in bi * r..(bi + 1) * r {
                    for b in bj * r..(bj + 1) * r {
                        seen[field.cell(a, b) as usize] = true;
                    }
                }
                good.push(seen[0] && seen[1]);
            }
        }
        Ok(Self {
            r,
            block_rows,
            block_cols,
            good,
        })
    }

    /// 1-based block indices; blocks outside the field are not good.
    pub fn is_good(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.block_rows && j <= self.block_cols && self.good[(i - 1) * self.block_cols + j - 1]
    }

    pub fn good_count(&self) -> usize {
        self.good.iter().filter(|&&g| g).count()
    }

    pub fn len(&self) -> usize {
        self.good.len()
    }

    pub fn is_empty(&self) -> bool {
        self.good.is_empty()
    }
}

/// Directed path of good blocks from `B_R(1,1)` with `depth` steps, each
/// step `(i,j) -> (i+1, j+1)` or `(i+1, j+2)`.
pub fn block_percolation(field: &Field2D, r: usize, depth: usize) -> Result<Option<Vec<(usize, usize)>>> {
    let grid = BlockGrid::new(field, r)?;
    if grid.block_rows < depth + 1 || grid.block_cols < 2 * depth + 1 {
        return Err(Error::InvalidArgument(format!(
            "field too small: need {}x{} blocks of side {r}, have {}x{}",
            depth + 1,
            2 * depth + 1,
            grid.block_rows,
            grid.block_cols
        )));
    }
    if !grid.is_good(1, 1) {
        return Ok(None);
    }
    // levels[t] holds the reachable column indices j at row i = t + 1
    let width = 2 * depth + 2;
    let mut levels = Vec::with_capacity(depth + 1);
    let mut first = Frontier::new(width);
    first.insert(1);
    levels.push(first);
    for t in 0..depth {
        let mut next = Frontier::new(width);
        for j in levels[t].iter() {
            for nj in [j + 1, j + 2] {
                if grid.is_good(t + 2, nj) {
                    next.insert(nj);
                }
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        levels.push(next);
    }
    let mut j = levels[depth].iter().next().expect("non-empty");
    let mut path = vec![(depth + 1, j)];
    for t in (0..depth).rev() {
        j = [j - 1, j.saturating_sub(2)]
            .into_iter()
            .find(|&pj| pj >= 1 && levels[t].contains(pj))
            .expect("levels are backward-consistent");
        path.push((t + 1, j));
    }
    path.reverse();
    Ok(Some(path))
}

/// Cells `(m_k, n_k)` (1-based) carrying the letters of a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding2DWitness {
    pub cells: Vec<(usize, usize)>,
    pub bound: usize,
}

impl Embedding2DWitness {
    /// Letters, strict increase of both coordinates, and
    /// `1 <= Δm + Δn <= bound` from `(m_0, n_0) = (0, 0)`.
    pub fn validate(&self, w: &Word, field: &Field2D) -> std::result::Result<(), String> {
        if self.cells.len() != w.len() {
            return Err(format!("{} cells for a word of length {}", self.cells.len(), w.len()));
        }
        let (mut pm, mut pn) = (0usize, 0usize);
        for (k, &(m, n)) in self.cells.iter().enumerate() {
            if m <= pm || n <= pn {
                return Err(format!("cell {} = ({m},{n}) does not increase both coordinates", k + 1));
            }
            let gap = (m - pm) + (n - pn);
            if gap > self.bound {
                return Err(format!("cell {} is at L1 distance {gap} > {}", k + 1, self.bound));
            }
            if m > field.rows() || n > field.cols() {
                return Err(format!("cell {} outside the field", k + 1));
            }
            if field.y(m, n) != w.get(k) {
                return Err(format!("cell {} carries the wrong letter", k + 1));
            }
            (pm, pn) = (m, n);
        }
        Ok(())
    }
}

/// Puts letter `k` in the `k`-th block of the path, at the lexicographically
/// smallest cell carrying it. Fails if a block on the path lacks the letter.
pub fn embed_word_2d(w: &Word, field: &Field2D, r: usize, path: &[(usize, usize)]) -> Result<Embedding2DWitness> {
    if path.len() < w.len() {
        return Err(Error::InvalidArgument(format!(
            "path of {} blocks is shorter than the word ({})",
            path.len(),
            w.len()
        )));
    }
    let mut cells = Vec::with_capacity(w.len());
    for (k, &(bi, bj)) in path.iter().take(w.len()).enumerate() {
        let letter = w.get(k);
        let rows = (bi - 1) * r + 1..=bi * r;
        let cell = rows
            .flat_map(|m| ((bj - 1) * r + 1..=bj * r).map(move |n| (m, n)))
            .find(|&(m, n)| m <= field.rows() && n <= field.cols() && field.y(m, n) == letter)
            .ok_or_else(|| Error::Contract(format!("block ({bi},{bj}) on the path has no letter {letter}")))?;
        cells.push(cell);
    }
    Ok(Embedding2DWitness { cells, bound: 5 * r })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapReport {
    /// Block offset `(Δi, Δj)`; `(0,0)` is the origin to `B_R(1,1)`.
    pub relation: (usize, usize),
    pub min_l1: usize,
    pub max_l1: usize,
    pub strictly_increasing: bool,
}

/// Exhaustive over all cell pairs in adjacent blocks, for both relations,
/// plus the step from the origin into `B_R(1,1)`.
pub fn adjacent_block_gaps(r: usize) -> Vec<GapReport> {
    let block = |bi: usize, bj: usize| -> Vec<(usize, usize)> {
        ((bi - 1) * r + 1..=bi * r)
            .flat_map(|m| ((bj - 1) * r + 1..=bj * r).map(move |n| (m, n)))
            .collect()
    };
    let mut out = Vec::new();
    let origin = block(1, 1);
    out.push(GapReport {
        relation: (0, 0),
        min_l1: origin.iter().map(|&(m, n)| m + n).min().unwrap_or(0),
        max_l1: origin.iter().map(|&(m, n)| m + n).max().unwrap_or(0),
        strictly_increasing: true,
    });
    for dj in [1, 2] {
        let from = block(1, 1);
        let to = block(2, 1 + dj);
        let mut report = GapReport {
            relation: (1, dj),
            min_l1: usize::MAX,
            max_l1: 0,
            strictly_increasing: true,
        };
        for &(a, b) in &from {
            for &(c, d) in &to {
                report.strictly_increasing &= c > a && d > b;
                let l1 = c.abs_diff(a) + d.abs_diff(b);
                report.min_l1 = report.min_l1.min(l1);
                report.max_l1 = report.max_l1.max(l1);
            }
        }
        out.push(report);
    }
    out
}

/// Checks on the blocks reachable from `(1,1)` within `levels` rows that the
/// map `(i,j) -> (2i - j - 1, j - i)` is a bijection onto
/// `{(a,b) : a,b >= 0, a + b < levels}` carrying the two block steps to the
/// unit steps east and north.
pub fn block_graph_matches_quadrant(levels: usize) -> bool {
    let step = |(i, j): (usize, usize)| [(i + 1, j + 1), (i + 1, j + 2)];
    let to_quadrant = |(i, j): (usize, usize)| -> Option<(usize, usize)> {
        let a = (2 * i).checked_sub(j + 1)?;
        let b = j.checked_sub(i)?;
        Some((a, b))
    };
    let mut seen: HashSet<(usize, usize)> = HashSet::from([(1, 1)]);
    let mut queue = VecDeque::from([(1usize, 1usize)]);
    let mut image: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    while let Some(block) = queue.pop_front() {
        let Some(q) = to_quadrant(block) else {
            return false;
        };
        if image.insert(q, block).is_some() {
            return false;
        }
        if block.0 >= levels {
            continue;
        }
        let [east, north] = step(block);
        if to_quadrant(east) != Some((q.0 + 1, q.1)) || to_quadrant(north) != Some((q.0, q.1 + 1)) {
            return false;
        }
        for nb in [east, north] {
            if seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    let expected = levels * (levels + 1) / 2;
    image.len() == expected && image.keys().all(|&(a, b)| a + b < levels)
}
