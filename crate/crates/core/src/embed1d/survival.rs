use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::mc::McPlan;
use crate::word::{check_probability, Word};

use super::embeds;

/// Where the word to be embedded comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Source {
    /// Fresh iid Bernoulli(p) letters per replica.
    Bernoulli(f64),
    /// The same word in every replica.
    Fixed(Word),
}

/// Estimates `P(X_{1..n} ⊑_M Y_{1..Mn})` with `Y` iid Bernoulli(`p_y`).
pub fn embed_survival_mc(m: usize, n: usize, source: &Source, p_y: f64, plan: &McPlan) -> Result<Estimate> {
    check_probability(p_y)?;
    if let Source::Bernoulli(p) = source {
        check_probability(*p)?;
    }
    if let Source::Fixed(w) = source {
        if w.len() != n {
            return Err(Error::InvalidArgument(format!(
                "fixed word has length {}, expected {n}",
                w.len()
            )));
        }
    }
    Ok(plan.estimate_indicator(|spec| {
        let mut rng = spec.rng();
        let x = match source {
            Source::Bernoulli(p) => Word::bernoulli(n, *p, &mut rng),
            Source::Fixed(w) => w.clone(),
        };
        let y: Word = (0..n * m).map(|_| u8::from(rng.gen::<f64>() < p_y)).collect();
        embeds(&x, &y, m)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed1d::{embed_prob_exact, vn_recursion};
    use crate::ratio::to_f64;
    use crate::rng::RngSpec;

    #[test]
    fn alternating_matches_recursion() {
        let plan = McPlan::new(20_000, RngSpec::new(17, 0));
        let n = 12;
        let est = embed_survival_mc(3, n, &Source::Fixed(Word::alternating(n)), 0.5, &plan).unwrap();
        let exact = to_f64(&vn_recursion(3, n)[n]);
        assert!(est.within(exact, 3.0), "{est:?} vs {exact}");
    }

    #[test]
    fn degenerate_source_is_constant_word() {
        let plan = McPlan::new(20_000, RngSpec::new(18, 0));
        let n = 6;
        let est = embed_survival_mc(2, n, &Source::Bernoulli(1.0), 0.5, &plan).unwrap();
        let exact = to_f64(&embed_prob_exact(&Word::constant(1, n), 2).unwrap());
        assert!(est.within(exact, 3.0), "{est:?} vs {exact}");
    }

    #[test]
    fn rejects_bad_probability() {
        let plan = McPlan::new(1, RngSpec::new(0, 0));
        assert!(embed_survival_mc(2, 3, &Source::Bernoulli(2.0), 0.5, &plan).is_err());
    }
}
