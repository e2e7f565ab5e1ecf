use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ratio::Rational;
use crate::word::Word;

/// Largest `n * M` (bits of `Y` enumerated) accepted by default.
pub const DEFAULT_EXACT_BUDGET: u32 = 24;

/// Exact `P(v ⊑_M Y)` for fair Bernoulli `Y`, by enumerating `Y_1..Y_{Mn}`.
pub fn embed_prob_exact(v: &Word, m: usize) -> Result<Rational> {
    embed_prob_exact_with_budget(v, m, DEFAULT_EXACT_BUDGET)
}

pub fn embed_prob_exact_with_budget(v: &Word, m: usize, budget: u32) -> Result<Rational> {
    if m == 0 {
        return Err(Error::InvalidArgument("gap bound M must be at least 1".into()));
    }
    let horizon = v.len() as u64 * m as u64;
    if horizon > u64::from(budget.min(62)) {
        return Err(Error::BudgetExceeded {
            what: "Y prefix bits (n*M)",
            needed: horizon,
            budget: u64::from(budget.min(62)),
        });
    }
    let hits = count_embedding_targets(v, m);
    Ok(Rational::new(BigInt::from(hits), BigInt::from(1u64) << horizon))
}

/// Number of `y ∈ {0,1}^{Mn}` with `v ⊑_M y`.
///
/// Depth-first over the letters of `y`, carrying for each of the last `M`
/// positions `t` the set of `i` such that `v_1..v_i` can end exactly at
/// `t`. A subtree is counted in one step once it is decided: all of it when
/// `v` has been fully matched, none of it when every window entry is empty.
fn count_embedding_targets(v: &Word, m: usize) -> u64 {
    let n = v.len();
    if n == 0 {
        return 1;
    }
    let horizon = n * m;
    let full_bit = 1u64 << n;
    // bit i (1..=n) set when v_i == letter
    let mut masks = [0u64; 2];
    for i in 0..n {
        masks[v.get(i) as usize] |= 1 << (i + 1);
    }
    // window[0] is the newest position
    let mut window = vec![0u64; m];
    window[0] = 1;
    fn go(t: usize, horizon: usize, window: &mut [u64], masks: &[u64; 2], full: u64) -> u64 {
        let reach = window.iter().fold(0, |a, &b| a | b);
        if reach == 0 {
            return 0;
        }
        if t == horizon {
            return 0;
        }
        let oldest = *window.last().expect("M >= 1");
        let mut total = 0;
        for letter in 0..2 {
            let fresh = (reach << 1) & masks[letter];
            if fresh & full != 0 {
                total += 1u64 << (horizon - t - 1);
                continue;
            }
            window.rotate_right(1);
            window[0] = fresh;
            total += go(t + 1, horizon, window, masks, full);
            window.rotate_left(1);
            *window.last_mut().expect("M >= 1") = oldest;
        }
        total
    }
    go(0, horizon, &mut window, &masks, full_bit)
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub n: usize,
    pub m: usize,
    /// Every word of length `n` in increasing bit order, with its probability.
    pub table: Vec<(Word, Rational)>,
    pub best: Vec<Word>,
    pub worst: Vec<Word>,
}

/// Exact embedding probability of every word of length `n`.
pub fn extremal_scan(n: usize, m: usize) -> Result<ScanReport> {
    extremal_scan_with_budget(n, m, DEFAULT_EXACT_BUDGET)
}

pub fn extremal_scan_with_budget(n: usize, m: usize, budget: u32) -> Result<ScanReport> {
    if n > 30 {
        return Err(Error::BudgetExceeded {
            what: "words in scan (2^n)",
            needed: n as u64,
            budget: 30,
        });
    }
    // Budget check before spawning work.
    embed_prob_exact_with_budget(&Word::zeros(n), m, budget)?;
    let table: Vec<(Word, Rational)> = (0u64..1 << n)
        .into_par_iter()
        .map(|bits| {
            let w = Word::from_bits(bits, n);
            let p = embed_prob_exact_with_budget(&w, m, budget).expect("budget checked");
            (w, p)
        })
        .collect();
    let max = table.iter().map(|(_, p)| p).max().cloned().expect("2^n >= 1 words");
    let min = table.iter().map(|(_, p)| p).min().cloned().expect("2^n >= 1 words");
    let pick = |target: &Rational| -> Vec<Word> {
        table
            .iter()
            .filter(|(_, p)| p == target)
            .map(|(w, _)| w.clone())
            .collect()
    };
    Ok(ScanReport {
        n,
        m,
        best: pick(&max),
        worst: pick(&min),
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed1d::embeds;
    use crate::ratio::{int, ratio};
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Leaf-by-leaf enumeration of every `y` with the frontier decider.
    fn naive(v: &Word, m: usize) -> Rational {
        let h = v.len() * m;
        let hits = (0u64..1 << h)
            .filter(|&bits| embeds(v, &Word::from_bits(bits, h), m))
            .count();
        Rational::new(BigInt::from(hits), BigInt::from(1u64) << h)
    }

    #[test]
    fn examples() {
        assert_eq!(embed_prob_exact(&w("0"), 2).unwrap(), ratio(3, 4));
        assert_eq!(embed_prob_exact(&w("01"), 2).unwrap(), ratio(5, 8));
        assert_eq!(embed_prob_exact(&Word::new(), 5).unwrap(), int(1));
    }

    #[test]
    fn refuses_over_budget() {
        let err = embed_prob_exact(&Word::zeros(13), 2).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { needed: 26, .. }));
        assert!(embed_prob_exact_with_budget(&Word::zeros(13), 2, 26).is_ok());
        assert!(extremal_scan(9, 3).is_err());
    }

    #[test]
    fn single_letter_words_tie() {
        for m in 1..=5 {
            let scan = extremal_scan(1, m).unwrap();
            assert_eq!(scan.best.len(), 2);
            assert_eq!(scan.worst.len(), 2);
            let alpha = int(1) - crate::ratio::inv_pow2(m as u32);
            assert!(scan.table.iter().all(|(_, p)| *p == alpha));
        }
    }

    #[test]
    fn scan_small_m2() {
        let scan = extremal_scan(6, 2).unwrap();
        assert_eq!(scan.table.len(), 64);
        assert!(scan.best.contains(&Word::alternating(6)));
        assert!(scan.worst.contains(&Word::constant(1, 6)));
        assert!(scan.worst.contains(&Word::constant(0, 6)));
    }

    fn word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..2, 0..=max).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn dfs_matches_leaf_enumeration(v in word(6), m in 1usize..4) {
            prop_assume!(v.len() * m <= 16);
            prop_assert_eq!(embed_prob_exact(&v, m).unwrap(), naive(&v, m));
        }

        #[test]
        fn complement_symmetry(v in word(7), m in 2usize..4) {
            prop_assume!(v.len() * m <= 20);
            prop_assert_eq!(
                embed_prob_exact(&v, m).unwrap(),
                embed_prob_exact(&v.complement(), m).unwrap()
            );
        }
    }
}
