use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{format_ratio, Rational};

/// Exact law of `k` binary variables; outcome bit `t` is variable `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    labels: Vec<String>,
    probs: Vec<Rational>,
}

impl JointPmf {
    pub fn new(labels: Vec<String>, probs: Vec<Rational>) -> Result<Self> {
        if probs.len() != 1usize << labels.len() {
            return Err(Error::InvalidArgument(format!(
                "{} outcomes for {} variables",
                probs.len(),
                labels.len()
            )));
        }
        if probs.iter().any(|p| p.is_negative()) {
            return Err(Error::InvalidArgument("negative probability".into()));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!(
                "probabilities sum to {}",
                format_ratio(&total)
            )));
        }
        Ok(Self { labels, probs })
    }

    /// Independent bits with the given `P(=1)`.
    pub fn product(marginals: &[Rational]) -> Self {
        let k = marginals.len();
        let probs = (0..1usize << k)
            .map(|o| {
                marginals
                    .iter()
                    .enumerate()
                    .map(|(t, p)| if o >> t & 1 == 1 { p.clone() } else { Rational::one() - p })
                    .product()
            })
            .collect();
        let labels = (0..k).map(|t| format!("v{t}")).collect();
        Self { labels, probs }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_vars(&self) -> usize {
        self.labels.len()
    }

    pub fn prob(&self, outcome: usize) -> Rational {
        self.probs[outcome].clone()
    }

    /// Law of the variables in `subset`; sub-outcome bit `s` is `subset[s]`.
    pub fn marginal(&self, subset: &[usize]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); 1 << subset.len()];
        for (o, p) in self.probs.iter().enumerate() {
            let sub = subset
                .iter()
                .enumerate()
                .fold(0, |acc, (s, &v)| acc | ((o >> v & 1) << s));
            out[sub] += p;
        }
        out
    }

    /// `outcome,numerator,denominator`, outcome written variable 0 first.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("outcome,numerator,denominator\n");
        for (o, p) in self.probs.iter().enumerate() {
            let bits: String = (0..self.num_vars())
                .map(|t| if o >> t & 1 == 1 { '1' } else { '0' })
                .collect();
            writeln!(s, "{bits},{},{}", p.numer(), p.denom()).expect("write to String");
        }
        s
    }

    /// Outcomes absent from the file have probability zero.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width = None;
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (k == 0 && line.starts_with("outcome")) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let [bits, num, den] = fields[..] else {
                return Err(Error::Parse(format!("line {}: expected 3 fields", k + 1)));
            };
            if width.is_some_and(|w| w != bits.len()) {
                return Err(Error::Parse(format!("line {}: outcome width changes", k + 1)));
            }
            width = Some(bits.len());
            let mut o = 0usize;
            for (t, c) in bits.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => o |= 1 << t,
                    _ => return Err(Error::Parse(format!("line {}: bad outcome {bits:?}", k + 1))),
                }
            }
            let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("line {}: numerator", k + 1)))?;
            let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("line {}: denominator", k + 1)))?;
            if den.is_zero() {
                return Err(Error::Parse(format!("line {}: zero denominator", k + 1)));
            }
            rows.push((o, Rational::new(num, den)));
        }
        let k = width.ok_or_else(|| Error::Parse("no outcomes".into()))?;
        if k > 24 {
            return Err(Error::Parse("more than 24 variables".into()));
        }
        let mut probs = vec![Rational::zero(); 1 << k];
        for (o, p) in rows {
            probs[o] += p;
        }
        Self::new((0..k).map(|t| format!("v{t}")).collect(), probs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeViolation {
    pub subset: Vec<usize>,
    /// Values of `subset`, in order.
    pub outcome: Vec<u8>,
    pub joint: Rational,
    pub product: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KwiseReport {
    pub k: usize,
    pub independent: bool,
    /// Every non-product outcome of the first failing subset (by size, then
    /// lexicographically).
    pub first_violation: Vec<OutcomeViolation>,
    /// Largest `|joint - product|` over all subsets of size `<= k`.
    pub worst: Option<OutcomeViolation>,
}

/// Checks exact product form on every subset of at most `k` variables.
pub fn kwise_test(pmf: &JointPmf, k: usize) -> Result<KwiseReport> {
    let n = pmf.num_vars();
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds {n} variables")));
    }
    let singles: Vec<Rational> = (0..n).map(|v| pmf.marginal(&[v])[1].clone()).collect();
    let mut first_violation = Vec::new();
    let mut worst: Option<(Rational, OutcomeViolation)> = None;
    for size in 2..=k {
        for subset in subsets(n, size) {
            let joint = pmf.marginal(&subset);
            let mut here = Vec::new();
            for (o, pj) in joint.iter().enumerate() {
                let product: Rational = subset
                    .iter()
                    .enumerate()
                    .map(|(s, &v)| {
                        if o >> s & 1 == 1 {
                            singles[v].clone()
                        } else {
                            Rational::one() - &singles[v]
                        }
                    })
                    .product();
                if *pj != product {
                    let gap = (pj - &product).abs();
                    let viol = OutcomeViolation {
                        subset: subset.clone(),
                        outcome: (0..size).map(|s| (o >> s & 1) as u8).collect(),
                        joint: pj.clone(),
                        product,
                    };
                    if worst.as_ref().is_none_or(|(g, _)| gap > *g) {
                        worst = Some((gap, viol.clone()));
                    }
                    here.push(viol);
                }
            }
            if first_violation.is_empty() && !here.is_empty() {
                first_violation = here;
            }
        }
    }
    Ok(KwiseReport {
        k,
        independent: worst.is_none(),
        first_violation,
        worst: worst.map(|(_, v)| v),
    })
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, ratio};
    use crate::schedule::kwise_joint;
    use proptest::prelude::*;

    #[test]
    fn fair_bits_are_independent() {
        let pmf = JointPmf::product(&vec![ratio(1, 2); 5]);
        for k in 1..=5 {
            assert!(kwise_test(&pmf, k).unwrap().independent);
        }
    }

    #[test]
    fn single_variable() {
        let pmf = JointPmf::product(&[ratio(1, 3)]);
        assert!(kwise_test(&pmf, 1).unwrap().independent);
        assert!(kwise_test(&pmf, 2).is_err());
    }

    #[test]
    fn xor_triple_is_pairwise_only() {
        // (a, b, a xor b)
        let mut probs = vec![int(0); 8];
        for a in 0..2 {
            for b in 0..2 {
                probs[a | b << 1 | (a ^ b) << 2] = ratio(1, 4);
            }
        }
        let pmf = JointPmf::new(vec!["a".into(), "b".into(), "c".into()], probs).unwrap();
        assert!(kwise_test(&pmf, 2).unwrap().independent);
        let r = kwise_test(&pmf, 3).unwrap();
        assert!(!r.independent);
        assert_eq!(r.first_violation[0].subset, vec![0, 1, 2]);
    }

    #[test]
    fn rectangle_three_but_not_four() {
        let pmf = kwise_joint(&[(1, 1), (1, 2), (2, 1), (2, 2)], 4).unwrap();
        assert!(kwise_test(&pmf, 3).unwrap().independent);
        let r = kwise_test(&pmf, 4).unwrap();
        assert!(!r.independent);
        let all_open = r
            .first_violation
            .iter()
            .find(|v| v.outcome == vec![1, 1, 1, 1])
            .unwrap();
        assert_eq!(all_open.joint, ratio(21, 64));
        assert_eq!(all_open.product, ratio(81, 256));
    }

    #[test]
    fn csv_round_trip() {
        let pmf = kwise_joint(&[(1, 1), (1, 2), (2, 2)], 3).unwrap();
        let back = JointPmf::from_csv(&pmf.to_csv()).unwrap();
        assert_eq!(back.marginal(&[0, 1, 2]), pmf.marginal(&[0, 1, 2]));
        assert!(JointPmf::from_csv("outcome,numerator,denominator\n0,1,2\n").is_err());
    }

    fn random_pmf(k: usize) -> impl Strategy<Value = JointPmf> {
        prop::collection::vec(0u32..4, 1usize << k).prop_filter_map("non-zero", move |w| {
            let total: u32 = w.iter().sum();
            (total > 0).then(|| {
                let probs = w.iter().map(|&x| ratio(i64::from(x), i64::from(total))).collect();
                JointPmf::new((0..k).map(|t| format!("v{t}")).collect(), probs).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn subset_monotone(
            pmf in prop_oneof![
                random_pmf(4),
                prop::collection::vec(0i64..=4, 4).prop_map(|v| {
                    JointPmf::product(&v.iter().map(|&a| ratio(a, 4)).collect::<Vec<_>>())
                }),
            ],
            k in 2usize..=4,
        ) {
            if kwise_test(&pmf, k).unwrap().independent {
                prop_assert!(kwise_test(&pmf, k - 1).unwrap().independent);
            }
        }
    }
}
