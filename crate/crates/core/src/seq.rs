use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngSpec;

/// A finite sequence with values in `{1..M}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntSequence {
    values: Vec<u32>,
    alphabet: u32,
}

impl IntSequence {
    pub fn new(values: Vec<u32>, alphabet: u32) -> Result<Self> {
        if alphabet < 2 {
            return Err(Error::AlphabetTooSmall(alphabet));
        }
        if let Some(&value) = values.iter().find(|&&v| v == 0 || v > alphabet) {
            return Err(Error::OutOfAlphabet { value, alphabet });
        }
        Ok(Self { values, alphabet })
    }

    /// Parses `"1,3,2"`.
    pub fn parse(s: &str, alphabet: u32) -> Result<Self> {
        let values = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|e| Error::InvalidSequence(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values, alphabet)
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Maps every value `v` to `((v - 1) mod m) + 1`.
    pub fn reduce_mod(&self, m: u32) -> Result<Self> {
        Self::new(self.values.iter().map(|v| (v - 1) % m + 1).collect(), m)
    }

    pub(crate) fn sample_with<R: Rng + ?Sized>(alphabet: u32, n: usize, rng: &mut R) -> Self {
        Self {
            values: (0..n).map(|_| rng.gen_range(1..=alphabet)).collect(),
            alphabet,
        }
    }
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for IntSequence {
    type Err = Error;

    /// Parses with the alphabet taken as the largest value (at least 2).
    fn from_str(s: &str) -> Result<Self> {
        let probe = Self::parse(s, u32::MAX)?;
        let m = probe.values.iter().copied().max().unwrap_or(2).max(2);
        Self::new(probe.values, m)
    }
}

/// iid uniform values on `{1..M}` drawn from the declared stream.
pub fn sample_uniform_sequence(alphabet: u32, n: usize, rng: RngSpec) -> Result<IntSequence> {
    if alphabet < 2 {
        return Err(Error::AlphabetTooSmall(alphabet));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("sequence length must be at least 1".into()));
    }
    Ok(IntSequence::sample_with(alphabet, n, &mut rng.rng()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frequency_within_3se(alphabet: u32, n: usize, seed: u64) {
        let seq = sample_uniform_sequence(alphabet, n, RngSpec::new(seed, 0)).unwrap();
        let p = 1.0 / alphabet as f64;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        for value in 1..=alphabet {
            let freq = seq.values().iter().filter(|&&v| v == value).count() as f64 / n as f64;
            assert!((freq - p).abs() < 3.0 * se, "value {value}: {freq} vs {p}");
        }
    }

    #[test]
    fn uniform_m2() {
        frequency_within_3se(2, 200_000, 1);
    }

    #[test]
    fn uniform_m4() {
        frequency_within_3se(4, 100_000, 2);
    }

    #[test]
    fn deterministic() {
        let a = sample_uniform_sequence(5, 1000, RngSpec::new(9, 3)).unwrap();
        let b = sample_uniform_sequence(5, 1000, RngSpec::new(9, 3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_small_alphabet() {
        assert_eq!(
            sample_uniform_sequence(1, 5, RngSpec::new(0, 0)),
            Err(Error::AlphabetTooSmall(1))
        );
        assert!(IntSequence::new(vec![1, 3], 2).is_err());
        assert!(IntSequence::new(vec![0], 2).is_err());
    }

    #[test]
    fn parse_and_display() {
        let s = IntSequence::parse("1, 2,4", 4).unwrap();
        assert_eq!(s.values(), &[1, 2, 4]);
        assert_eq!(s.to_string(), "1,2,4");
        assert_eq!(s.reduce_mod(2).unwrap().values(), &[1, 2, 2]);
    }
}
