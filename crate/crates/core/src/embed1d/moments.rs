use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ratio::{int, ratio, to_f64, Rational};

/// Default cap on the number of gap-sequence pairs, `M^{2n}`.
pub const DEFAULT_PAIR_BUDGET: u64 = 1 << 16;

#[derive(Debug, Clone)]
pub struct MomentReport {
    pub n: usize,
    pub mean: Rational,
    pub second_moment_ratio: Rational,
    /// `ratio_n / ratio_{n-1}`, an estimate of the growth rate `c_M`.
    pub growth_estimate: Option<f64>,
}

/// `E N_n(w)` for any fixed `w` of length `n`, by a position DP that adds
/// `1/2` per matched letter along every gap sequence.
///
/// `weight[p]` is the expected number of ways to place the first `i`
/// letters with the last one at position `p`.
pub fn mean_embeddings(n: usize, m: usize) -> Rational {
    let half = ratio(1, 2);
    let mut weight = vec![int(1)];
    for i in 0..n {
        let len = (i + 1) * m + 1;
        let mut next = vec![int(0); len];
        for (p, w) in weight.iter().enumerate() {
            if *w == int(0) {
                continue;
            }
            for d in 1..=m {
                next[p + d] += w * &half;
            }
        }
        weight = next;
    }
    weight.into_iter().fold(int(0), |a, b| a + b)
}

pub fn second_moment_ratio(n: usize, m: usize) -> Result<Rational> {
    second_moment_ratio_with_budget(n, m, DEFAULT_PAIR_BUDGET)
}

/// Exact `E(N_n(X)^2) / E(N_n(X))^2` with `X`, `Y` independent fair bits.
///
/// For every ordered pair of embeddings (position sets `a`, `b`) the
/// constraints `X_i = Y_{a_i}`, `X_i = Y_{b_i}` tie variables into
/// components; each component is one free fair bit, so the pair contributes
/// `2^{components - variables}`.
pub fn second_moment_ratio_with_budget(n: usize, m: usize, budget: u64) -> Result<Rational> {
    if m == 0 {
        return Err(Error::InvalidArgument("gap bound M must be at least 1".into()));
    }
    let pairs = (m as u64).checked_pow(2 * n as u32);
    if !matches!(pairs, Some(p) if p <= budget) {
        return Err(Error::BudgetExceeded {
            what: "gap-sequence pairs (M^{2n})",
            needed: pairs.unwrap_or(u64::MAX),
            budget,
        });
    }
    let seqs = position_sequences(n, m);
    // Each term is 2^{components - variables} with variables <= 3n; scale by 2^{3n}.
    let scale = 3 * n as u32;
    let mut total: u128 = 0;
    let mut uf = UnionFind::new(3 * n + 1);
    for a in &seqs {
        for b in &seqs {
            total += 1u128 << (scale - pair_deficit(a, b, &mut uf));
        }
    }
    // E(N^2) = total / 2^{3n};  E(N)^2 = (M/2)^{2n}
    let second = Rational::new(BigInt::from(total), BigInt::from(1) << scale);
    let mean = mean_embeddings(n, m);
    Ok(second / (&mean * &mean))
}

/// `variables - components` for the pair `(a, b)`.
fn pair_deficit(a: &[usize], b: &[usize], uf: &mut UnionFind) -> u32 {
    let n = a.len();
    // Y variables: union of positions, indexed after the n X variables.
    let mut union: Vec<usize> = a.iter().chain(b).copied().collect();
    union.sort_unstable();
    union.dedup();
    let vars = n + union.len();
    uf.reset(vars);
    let slot = |pos: usize| n + union.binary_search(&pos).expect("position in union");
    for i in 0..n {
        uf.union(i, slot(a[i]));
        uf.union(i, slot(b[i]));
    }
    (vars - uf.components(vars)) as u32
}

fn position_sequences(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                let last = s.last().copied().unwrap_or(0);
                (1..=m).map(move |d| {
                    let mut t = s.clone();
                    t.push(last + d);
                    t
                })
            })
            .collect();
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(cap: usize) -> Self {
        Self {
            parent: (0..cap).collect(),
        }
    }

    fn reset(&mut self, size: usize) {
        if self.parent.len() < size {
            self.parent.resize(size, 0);
        }
        for (i, p) in self.parent.iter_mut().enumerate().take(size) {
            *p = i;
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn components(&mut self, size: usize) -> usize {
        (0..size).filter(|&i| self.find(i) == i).count()
    }
}

/// Moment reports for `n = 0..=n_max`.
pub fn moment_reports(n_max: usize, m: usize, budget: u64) -> Result<Vec<MomentReport>> {
    let mut out: Vec<MomentReport> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mean = mean_embeddings(n, m);
        let expected = Rational::new(BigInt::from(m).pow(n as u32), BigInt::from(2).pow(n as u32));
        if mean != expected {
            return Err(Error::Contract(format!(
                "mean embeddings {mean} differs from (M/2)^n = {expected}"
            )));
        }
        let second = second_moment_ratio_with_budget(n, m, budget)?;
        let growth_estimate = out
            .last()
            .map(|prev| to_f64(&second) / to_f64(&prev.second_moment_ratio));
        out.push(MomentReport {
            n,
            mean,
            second_moment_ratio: second,
            growth_estimate,
        });
    }
    Ok(out)
}
