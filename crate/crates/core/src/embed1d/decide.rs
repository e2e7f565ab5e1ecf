use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::frontier::Frontier;
use crate::word::Word;

/// Positions `m_1 < ... < m_n` (1-based) of an M-embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub positions: Vec<usize>,
    pub gap_bound: usize,
}

impl EmbeddingWitness {
    /// Checks gaps and letters against `v` and `y` without reference to the
    /// solver that produced the witness.
    pub fn validate(&self, v: &Word, y: &Word) -> Result<(), String> {
        if self.positions.len() != v.len() {
            return Err(format!(
                "{} positions for a word of length {}",
                self.positions.len(),
                v.len()
            ));
        }
        let mut prev = 0usize;
        for (i, &m) in self.positions.iter().enumerate() {
            if m <= prev || m - prev > self.gap_bound {
                return Err(format!("gap {prev} -> {m} at letter {} violates 1..={}", i + 1, self.gap_bound));
            }
            if m > y.len() {
                return Err(format!("position {m} beyond target length {}", y.len()));
            }
            if y.get(m - 1) != v.get(i) {
                return Err(format!("letter {} does not match y_{m}", i + 1));
            }
            prev = m;
        }
        Ok(())
    }
}

/// Layered frontier DP; `layers[i]` holds every feasible `m_i`.
fn layers(v: &Word, y: &Word, m: usize) -> Option<Vec<Frontier>> {
    let len = y.len();
    let mut out = Vec::with_capacity(v.len() + 1);
    let mut start = Frontier::new(len + 1);
    start.insert(0);
    out.push(start);
    for i in 0..v.len() {
        let prev = &out[i];
        let mut next = Frontier::new(len + 1);
        for p in prev.iter() {
            for q in p + 1..=(p + m).min(len) {
                if y.get(q - 1) == v.get(i) {
                    next.insert(q);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        out.push(next);
    }
    Some(out)
}

pub fn embed_decide(v: &Word, y: &Word, m: usize) -> Option<EmbeddingWitness> {
    let layers = layers(v, y, m)?;
    let n = v.len();
    let mut positions = vec![0; n];
    let mut q = layers[n].iter().next()?;
    for i in (0..n).rev() {
        positions[i] = q;
        q = (q.saturating_sub(m)..q)
            .find(|&p| layers[i].contains(p))
            .expect("frontier layers are backward-consistent");
    }
    Some(EmbeddingWitness {
        positions,
        gap_bound: m,
    })
}

/// Decision only, with a rolling frontier.
pub fn embeds(v: &Word, y: &Word, m: usize) -> bool {
    let len = y.len();
    let mut cur = Frontier::new(len + 1);
    let mut next = Frontier::new(len + 1);
    cur.insert(0);
    for i in 0..v.len() {
        next.clear();
        let letter = v.get(i);
        for p in cur.iter() {
            for q in p + 1..=(p + m).min(len) {
                if y.get(q - 1) == letter {
                    next.insert(q);
                }
            }
        }
        if next.is_empty() {
            return false;
        }
        std::mem::swap(&mut cur, &mut next);
    }
    true
}

/// Exact number of M-embeddings of `v` in `y`.
pub fn embed_count(v: &Word, y: &Word, m: usize) -> BigUint {
    let len = y.len();
    let mut ways = vec![BigUint::zero(); len + 1];
    ways[0] = BigUint::from(1u8);
    for i in 0..v.len() {
        let mut next = vec![BigUint::zero(); len + 1];
        for (p, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for q in p + 1..=(p + m).min(len) {
                if y.get(q - 1) == v.get(i) {
                    next[q] += w;
                }
            }
        }
        ways = next;
    }
    ways.into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Every gap sequence, checked directly.
    fn count_naive(v: &Word, y: &Word, m: usize) -> u64 {
        fn go(v: &Word, y: &Word, m: usize, i: usize, pos: usize) -> u64 {
            if i == v.len() {
                return 1;
            }
            (1..=m)
                .map(|d| pos + d)
                .filter(|&q| q <= y.len() && y.get(q - 1) == v.get(i))
                .map(|q| go(v, y, m, i + 1, q))
                .sum()
        }
        go(v, y, m, 0, 0)
    }

    #[test]
    fn decide_examples() {
        let wit = embed_decide(&w("01"), &w("0010"), 2).unwrap();
        assert!(wit.validate(&w("01"), &w("0010")).is_ok());
        assert!([vec![1, 3], vec![2, 3]].contains(&wit.positions));

        let wit = embed_decide(&w("11"), &w("1011"), 2).unwrap();
        assert_eq!(wit.positions, vec![1, 3]);
        assert!(embed_decide(&w("11"), &w("0100"), 2).is_none());
    }

    #[test]
    fn count_examples() {
        assert_eq!(embed_count(&w("0"), &w("00"), 2), BigUint::from(2u8));
        // only m = [1,2] works: y_3 = 0
        assert_eq!(embed_count(&w("01"), &w("0101"), 2), BigUint::from(1u8));
        assert_eq!(count_naive(&w("01"), &w("0101"), 2), 1);
        assert!(embed_count(&w("0110"), &w("111111"), 3).is_zero());
    }

    #[test]
    fn validator_rejects_bad_witnesses() {
        let v = w("01");
        let y = w("0010");
        let bad_gap = EmbeddingWitness { positions: vec![1, 4], gap_bound: 2 };
        let bad_letter = EmbeddingWitness { positions: vec![1, 2], gap_bound: 2 };
        let too_short = EmbeddingWitness { positions: vec![1], gap_bound: 2 };
        assert!(bad_gap.validate(&v, &y).is_err());
        assert!(bad_letter.validate(&v, &y).is_err());
        assert!(too_short.validate(&v, &y).is_err());
    }

    fn word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..2, 0..=max).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn count_matches_naive(v in word(8), y in word(24), m in 1usize..5) {
            let fast = embed_count(&v, &y, m);
            prop_assert_eq!(fast.clone(), BigUint::from(count_naive(&v, &y, m)));
            let wit = embed_decide(&v, &y, m);
            prop_assert_eq!(fast.is_zero(), wit.is_none());
            prop_assert_eq!(embeds(&v, &y, m), wit.is_some());
            if let Some(wit) = wit {
                prop_assert!(wit.validate(&v, &y).is_ok());
            }
        }

        #[test]
        fn monotone_in_gap_bound(v in word(10), y in word(30), m in 1usize..5) {
            if embeds(&v, &y, m) {
                prop_assert!(embeds(&v, &y, m + 1));
            }
        }
    }

    #[test]
    fn complement_letter_never_embeds() {
        let v = w("0101");
        assert!(embed_decide(&v, &w("1111111111"), 4).is_none());
        assert!(embed_count(&v, &w("1111111111"), 4).is_zero());
    }
}
