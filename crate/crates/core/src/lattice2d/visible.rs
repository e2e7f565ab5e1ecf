//! Words visible along self-avoiding paths from a vertex.
//!
//! A word `w` is visible from `v` when some self-avoiding path
//! `v = v_0, v_1, ..., v_k` has `ω(v_t) = w_t` for `t >= 1`. The origin's own
//! letter is never read.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::mc::McPlan;
use crate::rng::RngSpec;
use crate::word::{check_probability, Word};

use super::field::Field2D;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    Square,
    /// Square plus the diagonal `(1,1)` of every face.
    Triangular,
    /// Square plus both diagonals of every face.
    ClosePacked,
}

const SQUARE: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const TRIANGULAR: [(isize, isize); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)];
const CLOSE_PACKED: [(isize, isize); 8] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (-1, -1),
    (1, -1),
    (-1, 1),
];

impl LatticeKind {
    pub const ALL: [LatticeKind; 3] = [LatticeKind::Square, LatticeKind::Triangular, LatticeKind::ClosePacked];

    pub fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            LatticeKind::Square => &SQUARE,
            LatticeKind::Triangular => &TRIANGULAR,
            LatticeKind::ClosePacked => &CLOSE_PACKED,
        }
    }

    pub fn degree(self) -> usize {
        self.offsets().len()
    }

    /// In-box neighbours of `(r, c)`, 0-based.
    pub fn neighbors(self, rows: usize, cols: usize, (r, c): (usize, usize)) -> impl Iterator<Item = (usize, usize)> {
        self.offsets().iter().filter_map(move |&(dr, dc)| {
            let nr = r.checked_add_signed(dr)?;
            let nc = c.checked_add_signed(dc)?;
            (nr < rows && nc < cols).then_some((nr, nc))
        })
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeKind::Square => "square",
            LatticeKind::Triangular => "triangular",
            LatticeKind::ClosePacked => "close-packed",
        })
    }
}

impl FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(LatticeKind::Square),
            "triangular" => Ok(LatticeKind::Triangular),
            "close-packed" | "cp" => Ok(LatticeKind::ClosePacked),
            other => Err(Error::Parse(format!("unknown lattice {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum VisibleOutcome {
    /// `v_0, ..., v_k`, 0-based cells.
    Visible(Vec<(usize, usize)>),
    NotVisible,
    BudgetExhausted,
}

impl VisibleOutcome {
    pub fn is_visible(&self) -> bool {
        matches!(self, VisibleOutcome::Visible(_))
    }
}

/// Exact DFS over self-avoiding paths. `budget` caps node expansions;
/// `None` searches to completion.
///
/// A branch is cut only when the cells reachable from the current end
/// through unvisited cells, moving along letter pairs that still occur in
/// the unread suffix, are fewer than the letters left. Every completion lies
/// in that set, so no visible word is missed.
pub fn visible_word(
    field: &Field2D,
    kind: LatticeKind,
    origin: (usize, usize),
    w: &Word,
    budget: Option<u64>,
) -> Result<VisibleOutcome> {
    let (rows, cols) = (field.rows(), field.cols());
    if origin.0 >= rows || origin.1 >= cols {
        return Err(Error::InvalidArgument(format!(
            "origin {origin:?} outside a {rows}x{cols} box"
        )));
    }
    Ok(Search::new(field, kind, w, budget).run(origin))
}

struct Search<'a> {
    field: &'a Field2D,
    kind: LatticeKind,
    word: Vec<u8>,
    /// `pairs[d]` bit `2a+b` set when `ab` occurs at positions `t, t+1 >= d`.
    pairs: Vec<u8>,
    budget: Option<u64>,
    visited: Vec<bool>,
    stamp: Vec<u32>,
    generation: u32,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(field: &'a Field2D, kind: LatticeKind, w: &Word, budget: Option<u64>) -> Self {
        let word: Vec<u8> = w.letters().collect();
        let mut pairs = vec![0u8; word.len() + 1];
        for d in (0..word.len().saturating_sub(1)).rev() {
            pairs[d] = pairs[d + 1] | 1 << (2 * word[d] + word[d + 1]);
        }
        let cells = field.rows() * field.cols();
        Self {
            field,
            kind,
            word,
            pairs,
            budget,
            visited: vec![false; cells],
            stamp: vec![0; cells],
            generation: 0,
            queue: Vec::new(),
        }
    }

    fn at(&self, s: usize) -> (usize, usize) {
        (s / self.field.cols(), s % self.field.cols())
    }

    fn letter(&self, s: usize) -> u8 {
        let (r, c) = self.at(s);
        self.field.cell(r, c)
    }

    fn neighbor_sites(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        let cols = self.field.cols();
        self.kind
            .neighbors(self.field.rows(), cols, self.at(s))
            .map(move |(r, c)| r * cols + c)
    }

    /// Whether at least `needed` cells can still host the rest of the word
    /// after `d` letters have been read at `s`.
    fn room(&mut self, s: usize, d: usize) -> bool {
        let needed = self.word.len() - d;
        if needed == 0 {
            return true;
        }
        self.generation += 1;
        let generation = self.generation;
        let pairs = self.pairs[d];
        self.queue.clear();
        let first = self.word[d];
        let seeds: Vec<usize> = self.neighbor_sites(s).collect();
        for n in seeds {
            if !self.visited[n] && self.stamp[n] != generation && self.letter(n) == first {
                self.stamp[n] = generation;
                self.queue.push(n);
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            if self.queue.len() >= needed {
                return true;
            }
            let x = self.queue[head];
            head += 1;
            let a = self.letter(x);
            let next: Vec<usize> = self.neighbor_sites(x).collect();
            for y in next {
                if self.visited[y] || self.stamp[y] == generation {
                    continue;
                }
                if pairs & 1 << (2 * a + self.letter(y)) != 0 {
                    self.stamp[y] = generation;
                    self.queue.push(y);
                }
            }
        }
        self.queue.len() >= needed
    }

    fn run(mut self, origin: (usize, usize)) -> VisibleOutcome {
        let start = origin.0 * self.field.cols() + origin.1;
        let len = self.word.len();
        let mut expansions = 0u64;
        // (site, neighbour cursor)
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        self.visited[start] = true;
        let mut fresh = true;
        while let Some(&(site, cursor)) = stack.last() {
            let depth = stack.len() - 1;
            if depth == len {
                return VisibleOutcome::Visible(stack.iter().map(|&(s, _)| self.at(s)).collect());
            }
            if fresh {
                expansions += 1;
                if self.budget.is_some_and(|b| expansions > b) {
                    return VisibleOutcome::BudgetExhausted;
                }
                if !self.room(site, depth) {
                    stack.pop();
                    self.visited[site] = false;
                    fresh = false;
                    continue;
                }
            }
            let want = self.word[depth];
            let next = self
                .neighbor_sites(site)
                .enumerate()
                .skip(cursor)
                .find(|&(_, n)| !self.visited[n] && self.letter(n) == want);
            match next {
                Some((k, n)) => {
                    stack.last_mut().expect("non-empty").1 = k + 1;
                    self.visited[n] = true;
                    stack.push((n, 0));
                    fresh = true;
                }
                None => {
                    stack.pop();
                    self.visited[site] = false;
                    fresh = false;
                }
            }
        }
        VisibleOutcome::NotVisible
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Target {
    Fixed(Word),
    /// A fresh Bernoulli(`p`) word per replica.
    Random { len: usize, p: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    /// Cell `(side / 2, side / 2)`.
    Center,
    /// Visible from at least one cell of the box.
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VisibleExperiment {
    pub kind: LatticeKind,
    pub p: f64,
    /// Box is `side x side`.
    pub side: usize,
    pub origin: Origin,
    pub budget: Option<u64>,
}

/// Replicas that exhausted the budget count as not visible in `estimate`
/// and are tallied in `exhausted`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VisibleSummary {
    pub estimate: Estimate,
    pub exhausted: u64,
}

fn one_replica(exp: &VisibleExperiment, target: &Target, spec: RngSpec) -> Result<VisibleOutcome> {
    let mut rng = spec.rng();
    let field = Field2D::sample(exp.side, exp.side, exp.p, &mut rng);
    let word = match target {
        Target::Fixed(w) => w.clone(),
        Target::Random { len, p } => Word::bernoulli(*len, *p, &mut rng),
    };
    match exp.origin {
        Origin::Center => visible_word(&field, exp.kind, (exp.side / 2, exp.side / 2), &word, exp.budget),
        Origin::Any => {
            let mut exhausted = false;
            for r in 0..exp.side {
                for c in 0..exp.side {
                    match visible_word(&field, exp.kind, (r, c), &word, exp.budget)? {
                        VisibleOutcome::Visible(path) => return Ok(VisibleOutcome::Visible(path)),
                        VisibleOutcome::BudgetExhausted => exhausted = true,
                        VisibleOutcome::NotVisible => {}
                    }
                }
            }
            Ok(if exhausted {
                VisibleOutcome::BudgetExhausted
            } else {
                VisibleOutcome::NotVisible
            })
        }
    }
}

fn check_experiment(exp: &VisibleExperiment, target: &Target) -> Result<()> {
    check_probability(exp.p)?;
    if let Target::Random { p, .. } = target {
        check_probability(*p)?;
    }
    if exp.side == 0 {
        return Err(Error::InvalidArgument("box side must be positive".into()));
    }
    Ok(())
}

pub fn visible_frequency_mc(exp: &VisibleExperiment, target: &Target, plan: &McPlan) -> Result<VisibleSummary> {
    check_experiment(exp, target)?;
    let outcomes = plan.run(|spec| one_replica(exp, target, spec));
    let outcomes: Vec<VisibleOutcome> = outcomes.into_iter().collect::<Result<_>>()?;
    let hits: Vec<bool> = outcomes.iter().map(VisibleOutcome::is_visible).collect();
    Ok(VisibleSummary {
        estimate: Estimate::from_indicators(&hits, plan.rng),
        exhausted: outcomes.iter().filter(|o| **o == VisibleOutcome::BudgetExhausted).count() as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbScan {
    pub p: f64,
    pub box_size: usize,
    pub word_len: usize,
    pub alternating: Estimate,
    pub constant: Estimate,
    /// Per-replica alternating minus constant, both read on the same field.
    pub difference: Estimate,
    pub exhausted: u64,
}

pub const AB_SCAN_BUDGET: u64 = 50_000_000;

/// On the triangular lattice in a box of side `box_size + 1` centred at the
/// origin, how often `0101...` and `11...1` of length `box_size / 2` are
/// visible from the origin. Both words are searched in the same field.
pub fn ab_scan(p: f64, box_size: usize, plan: &McPlan) -> Result<AbScan> {
    check_probability(p)?;
    let side = box_size + 1;
    let radius = box_size / 2;
    let alternating = Word::alternating(radius);
    let constant = Word::constant(1, radius);
    let rows = plan.run(|spec| {
        let field = Field2D::sample(side, side, p, &mut spec.rng());
        let origin = (radius, radius);
        let a = visible_word(&field, LatticeKind::Triangular, origin, &alternating, Some(AB_SCAN_BUDGET))?;
        let c = visible_word(&field, LatticeKind::Triangular, origin, &constant, Some(AB_SCAN_BUDGET))?;
        Ok::<_, Error>((a, c))
    });
    let rows: Vec<_> = rows.into_iter().collect::<Result<_>>()?;
    let a: Vec<f64> = rows.iter().map(|(a, _)| f64::from(u8::from(a.is_visible()))).collect();
    let c: Vec<f64> = rows.iter().map(|(_, c)| f64::from(u8::from(c.is_visible()))).collect();
    let d: Vec<f64> = a.iter().zip(&c).map(|(x, y)| x - y).collect();
    let exhausted = rows
        .iter()
        .filter(|(a, c)| *a == VisibleOutcome::BudgetExhausted || *c == VisibleOutcome::BudgetExhausted)
        .count() as u64;
    Ok(AbScan {
        p,
        box_size,
        word_len: radius,
        alternating: Estimate::from_samples(&a, plan.rng),
        constant: Estimate::from_samples(&c, plan.rng),
        difference: Estimate::from_samples(&d, plan.rng),
        exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Every self-avoiding path of length `k` from the origin, no pruning.
    fn oracle(field: &Field2D, kind: LatticeKind, origin: (usize, usize), w: &Word) -> bool {
        fn go(
            field: &Field2D,
            kind: LatticeKind,
            path: &mut Vec<(usize, usize)>,
            w: &[u8],
        ) -> bool {
            if path.len() == w.len() + 1 {
                return path.iter().skip(1).zip(w).all(|(&(r, c), &l)| field.cell(r, c) == l);
            }
            let last = *path.last().unwrap();
            for n in kind.neighbors(field.rows(), field.cols(), last) {
                if !path.contains(&n) {
                    path.push(n);
                    if go(field, kind, path, w) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        let letters: Vec<u8> = w.letters().collect();
        go(field, kind, &mut vec![origin], &letters)
    }

    fn check_path(field: &Field2D, kind: LatticeKind, w: &Word, path: &[(usize, usize)]) {
        assert_eq!(path.len(), w.len() + 1);
        for k in 1..path.len() {
            assert!(kind.neighbors(field.rows(), field.cols(), path[k - 1]).any(|n| n == path[k]));
            assert_eq!(field.cell(path[k].0, path[k].1), w.get(k - 1));
            assert!(!path[..k].contains(&path[k]));
        }
    }

    #[test]
    fn degrees_and_symmetry() {
        for kind in LatticeKind::ALL {
            for &(dr, dc) in kind.offsets() {
                assert!(kind.offsets().contains(&(-dr, -dc)));
            }
            assert_eq!(kind.neighbors(5, 5, (2, 2)).count(), kind.degree());
        }
        assert_eq!(LatticeKind::Triangular.degree(), 6);
        assert_eq!("close-packed".parse::<LatticeKind>().unwrap(), LatticeKind::ClosePacked);
    }

    #[test]
    fn trivial_cases() {
        let open = Field2D::filled(7, 7, 1);
        for kind in LatticeKind::ALL {
            let out = visible_word(&open, kind, (3, 3), &Word::constant(1, 20), None).unwrap();
            match out {
                VisibleOutcome::Visible(p) => check_path(&open, kind, &Word::constant(1, 20), &p),
                other => panic!("{other:?}"),
            }
        }
        let mut closed = Field2D::filled(3, 3, 0);
        closed.set_cell(1, 1, 1);
        let one: Word = "1".parse().unwrap();
        assert_eq!(
            visible_word(&closed, LatticeKind::ClosePacked, (1, 1), &one, None).unwrap(),
            VisibleOutcome::NotVisible
        );
        assert_eq!(
            visible_word(&closed, LatticeKind::Square, (1, 1), &Word::new(), None).unwrap(),
            VisibleOutcome::Visible(vec![(1, 1)])
        );
    }

    #[test]
    fn budget_is_reported() {
        // longer than the box can hold, but the room bound cannot see it
        // without expanding; a budget of one expansion trips first
        let open = Field2D::filled(4, 4, 1);
        let out = visible_word(&open, LatticeKind::Square, (0, 0), &Word::constant(1, 15), Some(1)).unwrap();
        assert_eq!(out, VisibleOutcome::BudgetExhausted);
        let out = visible_word(&open, LatticeKind::Square, (0, 0), &Word::constant(1, 16), None).unwrap();
        assert_eq!(out, VisibleOutcome::NotVisible);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn matches_exhaustive_paths(
            cells in proptest::collection::vec(0u8..2, 16),
            word in proptest::collection::vec(0u8..2, 0..9),
            origin in 0usize..16,
            kind in 0usize..3,
        ) {
            let field = Field2D::new(4, 4, cells).unwrap();
            let w: Word = word.into_iter().collect();
            let kind = LatticeKind::ALL[kind];
            let o = (origin / 4, origin % 4);
            let got = visible_word(&field, kind, o, &w, None).unwrap();
            prop_assert_eq!(got.is_visible(), oracle(&field, kind, o, &w));
            if let VisibleOutcome::Visible(p) = got {
                check_path(&field, kind, &w, &p);
            }
        }
    }

    #[test]
    fn p_zero_hides_ones() {
        let plan = McPlan::new(20, RngSpec::new(1, 0)).with_workers(1);
        let scan = ab_scan(0.0, 20, &plan).unwrap();
        assert_eq!(scan.alternating.mean, 0.0);
        assert_eq!(scan.constant.mean, 0.0);
    }

    #[test]
    fn close_packed_sees_more_than_square() {
        let plan = McPlan::new(100, RngSpec::new(8, 0));
        let exp = |kind, p| VisibleExperiment { kind, p, side: 50, origin: Origin::Center, budget: Some(10_000_000) };
        let cp = visible_frequency_mc(
            &exp(LatticeKind::ClosePacked, 0.45),
            &Target::Random { len: 20, p: 0.5 },
            &plan,
        )
        .unwrap();
        let sq = visible_frequency_mc(&exp(LatticeKind::Square, 0.5), &Target::Fixed(Word::constant(1, 20)), &plan).unwrap();
        assert_eq!(cp.exhausted + sq.exhausted, 0);
        assert!(cp.estimate.mean >= 0.9, "{cp:?}");
        assert!(sq.estimate.mean <= 0.7, "{sq:?}");
    }

    #[test]
    fn complement_symmetry() {
        let plan = McPlan::new(400, RngSpec::new(3, 0));
        let exp = |p| VisibleExperiment {
            kind: LatticeKind::Triangular,
            p,
            side: 21,
            origin: Origin::Center,
            budget: Some(1_000_000),
        };
        let a = visible_frequency_mc(&exp(0.6), &Target::Fixed(Word::constant(1, 10)), &plan).unwrap();
        let b = visible_frequency_mc(&exp(0.4), &Target::Fixed(Word::constant(0, 10)), &plan).unwrap();
        let se = crate::estimate::stderr_of_difference(&a.estimate, &b.estimate);
        assert!((a.estimate.mean - b.estimate.mean).abs() <= 3.0 * se + 1e-12);
        assert_eq!(a.exhausted + b.exhausted, 0);
    }
}
