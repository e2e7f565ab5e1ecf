use num_bigint::BigInt;

use crate::envmodels::JointPmf;
use crate::error::{Error, Result};
use crate::ratio::Rational;

pub const DEFAULT_KWISE_BUDGET: u64 = 10_000_000;

pub fn kwise_joint(vertices: &[(usize, usize)], alphabet: u32) -> Result<JointPmf> {
    kwise_joint_with_budget(vertices, alphabet, DEFAULT_KWISE_BUDGET)
}

/// Exact joint law of the open/closed states of interior grid vertices,
/// by enumerating the values of every distinct `X_i` and `Y_j` involved.
pub fn kwise_joint_with_budget(vertices: &[(usize, usize)], alphabet: u32, budget: u64) -> Result<JointPmf> {
    if alphabet < 2 {
        return Err(Error::AlphabetTooSmall(alphabet));
    }
    if vertices.len() > 24 {
        return Err(Error::InvalidArgument("at most 24 vertices".into()));
    }
    if let Some(v) = vertices.iter().find(|(i, j)| *i == 0 || *j == 0) {
        return Err(Error::InvalidArgument(format!(
            "vertex {v:?} is on an axis; only interior vertices have iid coordinates"
        )));
    }
    let mut xs: Vec<usize> = vertices.iter().map(|v| v.0).collect();
    let mut ys: Vec<usize> = vertices.iter().map(|v| v.1).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let vars = xs.len() + ys.len();
    let terms = u64::from(alphabet)
        .checked_pow(vars as u32)
        .filter(|&t| t <= budget)
        .ok_or(Error::BudgetExceeded {
            what: "value assignments (M^{a+b})",
            needed: u64::from(alphabet).saturating_pow(vars as u32),
            budget,
        })?;
    // vertex t compares value slot xi[t] with slot xs.len() + yj[t]
    let slots: Vec<(usize, usize)> = vertices
        .iter()
        .map(|(i, j)| {
            (
                xs.binary_search(i).expect("collected"),
                xs.len() + ys.binary_search(j).expect("collected"),
            )
        })
        .collect();
    let mut counts = vec![0u64; 1 << vertices.len()];
    let mut values = vec![0u32; vars];
    for _ in 0..terms {
        let mut outcome = 0usize;
        for (t, &(a, b)) in slots.iter().enumerate() {
            if values[a] != values[b] {
                outcome |= 1 << t;
            }
        }
        counts[outcome] += 1;
        // odometer
        for v in values.iter_mut() {
            *v += 1;
            if *v < alphabet {
                break;
            }
            *v = 0;
        }
    }
    let den = BigInt::from(terms);
    let probs = counts
        .into_iter()
        .map(|c| Rational::new(BigInt::from(c), den.clone()))
        .collect();
    let labels = vertices.iter().map(|(i, j)| format!("({i},{j})")).collect();
    JointPmf::new(labels, probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envmodels::kwise_test;
    use crate::ratio::{int, ratio};

    #[test]
    fn single_vertex_marginal() {
        for m in 2..6u32 {
            let pmf = kwise_joint(&[(1, 1)], m).unwrap();
            assert_eq!(pmf.prob(1), int(1) - ratio(1, i64::from(m)));
        }
    }

    #[test]
    fn rectangle_m4() {
        let rect = [(1, 1), (1, 2), (2, 1), (2, 2)];
        let pmf = kwise_joint(&rect, 4).unwrap();
        assert_eq!(pmf.prob(0b1111), ratio(21, 64));
        assert_ne!(pmf.prob(0b1111), ratio(81, 256));
    }

    #[test]
    fn rectangle_general_formula() {
        // (M-1)[(M-1) + (M-2)^2] / M^3 for all-open, from enumeration
        let rect = [(1, 1), (1, 2), (2, 1), (2, 2)];
        for m in 2..=6i64 {
            let pmf = kwise_joint(&rect, m as u32).unwrap();
            let formula = ratio((m - 1) * ((m - 1) + (m - 2) * (m - 2)), m * m * m);
            assert_eq!(pmf.prob(0b1111), formula, "M={m}");
            let indep = (int(1) - ratio(1, m)).pow(4);
            assert_ne!(pmf.prob(0b1111), indep);
            assert!(!kwise_test(&pmf, 4).unwrap().independent);
        }
    }

    #[test]
    fn axis_vertices_rejected() {
        assert!(kwise_joint(&[(0, 1)], 3).is_err());
    }

    #[test]
    fn budget_refusal() {
        let v: Vec<(usize, usize)> = (1..=6).map(|i| (i, i)).collect();
        assert!(matches!(
            kwise_joint(&v, 4),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
