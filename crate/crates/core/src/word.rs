//! Finite binary words, gap encodings and the zero-deletion relation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngSpec;

/// A finite word over `{0,1}`, packed 64 letters per machine word.
///
/// Letters are addressed from 0 internally; the mathematical letter `w_k`
/// is `get(k - 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    blocks: Vec<u64>,
    len: usize,
}

impl Word {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            blocks: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn constant(letter: u8, len: usize) -> Self {
        let mut w = Self::zeros(len);
        if letter != 0 {
            for i in 0..len {
                w.set(i, 1);
            }
        }
        w
    }

    /// The alternating word `0101...` of length `len`.
    pub fn alternating(len: usize) -> Self {
        (0..len).map(|i| (i % 2) as u8).collect()
    }

    /// Word whose letter `i` is bit `i` of `bits`.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= 64, "from_bits supports at most 64 letters");
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        let blocks = if len == 0 { vec![] } else { vec![bits & mask] };
        Self { blocks, len }
    }

    /// Inverse of [`Word::from_bits`]; requires `len() <= 64`.
    pub fn to_bits(&self) -> u64 {
        assert!(self.len <= 64, "to_bits supports at most 64 letters");
        self.blocks.first().copied().unwrap_or(0)
    }

    pub fn bernoulli<R: Rng + ?Sized>(len: usize, p: f64, rng: &mut R) -> Self {
        (0..len).map(|_| u8::from(rng.gen::<f64>() < p)).collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len);
        ((self.blocks[i / 64] >> (i % 64)) & 1) as u8
    }

    #[inline]
    pub fn set(&mut self, i: usize, letter: u8) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % 64);
        if letter != 0 {
            self.blocks[i / 64] |= bit;
        } else {
            self.blocks[i / 64] &= !bit;
        }
    }

    pub fn push(&mut self, letter: u8) {
        if self.len.is_multiple_of(64) {
            self.blocks.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, letter);
    }

    pub fn letters(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        self.letters().map(|b| 1 - b).collect()
    }

    pub fn prefix(&self, n: usize) -> Self {
        self.letters().take(n).collect()
    }

    /// Letters `start..end` (0-based, half-open).
    pub fn slice(&self, start: usize, end: usize) -> Self {
        (start..end.min(self.len)).map(|i| self.get(i)).collect()
    }

    pub fn gap_encode(&self) -> GapEncoding {
        let mut gaps = Vec::with_capacity(self.count_ones());
        let mut run = 0;
        for b in self.letters() {
            if b == 1 {
                gaps.push(run);
                run = 0;
            } else {
                run += 1;
            }
        }
        GapEncoding {
            gaps,
            trailing_zeros: run,
        }
    }
}

impl FromIterator<u8> for Word {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut w = Word::new();
        for b in iter {
            w.push(b);
        }
        w
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.letters() {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `w = 0^{g_1} 1 0^{g_2} 1 ... 0^{g_k} 1 0^{trailing}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapEncoding {
    pub gaps: Vec<usize>,
    pub trailing_zeros: usize,
}

impl GapEncoding {
    pub fn decode(&self) -> Word {
        let mut w = Word::new();
        for &g in &self.gaps {
            for _ in 0..g {
                w.push(0);
            }
            w.push(1);
        }
        for _ in 0..self.trailing_zeros {
            w.push(0);
        }
        w
    }
}

/// True iff `y` is obtained from `x` by deleting some 0-letters.
///
/// On finite words this is the gap-wise comparison: equal number of 1s,
/// every gap of `x` at least the matching gap of `y`, and at least as many
/// trailing zeros.
pub fn reduces_to(x: &Word, y: &Word) -> bool {
    let gx = x.gap_encode();
    let gy = y.gap_encode();
    gx.gaps.len() == gy.gaps.len()
        && gx.gaps.iter().zip(&gy.gaps).all(|(a, b)| a >= b)
        && gx.trailing_zeros >= gy.trailing_zeros
}

#[derive(Debug, Clone, PartialEq)]
pub enum WordKind {
    Alternating,
    Constant(u8),
    Periodic(Word),
    Bernoulli { p: f64, rng: RngSpec },
}

pub fn make_word(kind: &WordKind, n: usize) -> Result<Word> {
    match kind {
        WordKind::Alternating => Ok(Word::alternating(n)),
        WordKind::Constant(letter) => match letter {
            0 | 1 => Ok(Word::constant(*letter, n)),
            _ => Err(Error::InvalidArgument(format!("letter {letter} not in {{0,1}}"))),
        },
        WordKind::Periodic(pattern) => {
            if pattern.is_empty() {
                return Err(Error::EmptyPattern);
            }
            Ok((0..n).map(|i| pattern.get(i % pattern.len())).collect())
        }
        WordKind::Bernoulli { p, rng } => {
            check_probability(*p)?;
            Ok(Word::bernoulli(n, *p, &mut rng.rng()))
        }
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn gap_encode_examples() {
        assert_eq!(
            w("00101").gap_encode(),
            GapEncoding { gaps: vec![2, 1], trailing_zeros: 0 }
        );
        assert_eq!(
            w("111").gap_encode(),
            GapEncoding { gaps: vec![0, 0, 0], trailing_zeros: 0 }
        );
        assert_eq!(
            w("000").gap_encode(),
            GapEncoding { gaps: vec![], trailing_zeros: 3 }
        );
    }

    #[test]
    fn reduces_to_examples() {
        assert!(reduces_to(&w("0101"), &w("011")));
        assert!(!reduces_to(&w("011"), &w("0101")));
        assert!(!reduces_to(&w("10"), &w("01")));
    }

    #[test]
    fn make_word_examples() {
        assert_eq!(make_word(&WordKind::Alternating, 4).unwrap(), w("0101"));
        assert_eq!(make_word(&WordKind::Constant(1), 3).unwrap(), w("111"));
        let zero = WordKind::Bernoulli { p: 0.0, rng: RngSpec::new(3, 0) };
        assert_eq!(make_word(&zero, 5).unwrap(), w("00000"));
        assert_eq!(
            make_word(&WordKind::Periodic(w("110")), 7).unwrap(),
            w("1101101")
        );
        assert_eq!(
            make_word(&WordKind::Periodic(Word::new()), 3),
            Err(Error::EmptyPattern)
        );
        let bad = WordKind::Bernoulli { p: 1.5, rng: RngSpec::new(0, 0) };
        assert!(make_word(&bad, 3).is_err());
    }

    #[test]
    fn bernoulli_is_reproducible() {
        let kind = WordKind::Bernoulli { p: 0.3, rng: RngSpec::new(11, 4) };
        assert_eq!(make_word(&kind, 500).unwrap(), make_word(&kind, 500).unwrap());
    }

    #[test]
    fn packing_crosses_block_boundary() {
        let mut long = Word::zeros(130);
        long.set(63, 1);
        long.set(64, 1);
        long.set(129, 1);
        assert_eq!(long.count_ones(), 3);
        assert_eq!(long.gap_encode().gaps, vec![63, 0, 64]);
        assert_eq!(long.to_string().parse::<Word>().unwrap(), long);
    }

    #[test]
    fn rejects_bad_letter() {
        assert_eq!("0120".parse::<Word>(), Err(Error::InvalidLetter('2')));
    }

    /// Deletes 0-letters in every possible way and looks for `y`.
    fn reduces_brute(x: &Word, y: &Word) -> bool {
        let zeros: Vec<usize> = (0..x.len()).filter(|&i| x.get(i) == 0).collect();
        (0u32..1 << zeros.len()).any(|mask| {
            let dropped: Vec<usize> = zeros
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            let kept: Word = (0..x.len())
                .filter(|i| !dropped.contains(i))
                .map(|i| x.get(i))
                .collect();
            &kept == y
        })
    }

    fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..2, 0..=max).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn gap_round_trip(x in word_strategy(200)) {
            prop_assert_eq!(x.gap_encode().decode(), x.clone());
            prop_assert_eq!(x.gap_encode().gaps.len(), x.count_ones());
        }

        #[test]
        fn reduces_matches_brute_force(x in word_strategy(12), y in word_strategy(12)) {
            prop_assert_eq!(reduces_to(&x, &y), reduces_brute(&x, &y));
        }

        #[test]
        fn reduces_reflexive_transitive(x in word_strategy(16), mask in any::<u32>(), mask2 in any::<u32>()) {
            prop_assert!(reduces_to(&x, &x));
            let drop = |w: &Word, m: u32| -> Word {
                (0..w.len())
                    .filter(|&i| !(w.get(i) == 0 && m >> (i % 32) & 1 == 1))
                    .map(|i| w.get(i))
                    .collect()
            };
            let y = drop(&x, mask);
            let z = drop(&y, mask2);
            prop_assert!(reduces_to(&x, &y));
            prop_assert!(reduces_to(&y, &z));
            prop_assert!(reduces_to(&x, &z));
            prop_assert_eq!(x.count_ones(), z.count_ones());
            prop_assert!(x.len() >= z.len());
        }
    }

    #[test]
    fn reduces_exhaustive_small() {
        for lx in 0..=6 {
            for ly in 0..=6 {
                for bx in 0u64..1 << lx {
                    for by in 0u64..1 << ly {
                        let x = Word::from_bits(bx, lx);
                        let y = Word::from_bits(by, ly);
                        assert_eq!(reduces_to(&x, &y), reduces_brute(&x, &y), "{x} -> {y}");
                    }
                }
            }
        }
    }
}
