use serde::Serialize;

use crate::ratio::{int, inv_pow2, to_f64, Rational};

/// Coefficients of the alternating-word recursion at gap bound `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionParams {
    pub m: u32,
    /// `1 - 2^{-M}`
    pub alpha: Rational,
    /// `2^{-M}`
    pub beta: Rational,
}

impl RecursionParams {
    pub fn new(m: u32) -> Self {
        assert!(m >= 1, "gap bound must be positive");
        let beta = inv_pow2(m);
        Self {
            m,
            alpha: int(1) - &beta,
            beta,
        }
    }

    /// `α + (M-1)β`
    pub fn linear(&self) -> Rational {
        &self.alpha + int(i64::from(self.m) - 1) * &self.beta
    }

    /// `β(M - 2α)`
    pub fn constant(&self) -> Rational {
        &self.beta * (int(i64::from(self.m)) - int(2) * &self.alpha)
    }
}

/// `v_0..=v_{n_max}` where `v_n = P(a_n ⊑_M Y)`:
/// `v_{n+1} = (α + (M-1)β) v_n - β(M - 2α) v_{n-1}`, `v_0 = 1`, `v_1 = α`.
pub fn vn_recursion(m: u32, n_max: usize) -> Vec<Rational> {
    let params = RecursionParams::new(m);
    let a = params.linear();
    let b = params.constant();
    let mut v = vec![int(1)];
    if n_max >= 1 {
        v.push(params.alpha.clone());
    }
    for n in 1..n_max {
        let next = &a * &v[n] - &b * &v[n - 1];
        v.push(next);
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharRoots {
    pub small: f64,
    pub large: f64,
}

impl CharRoots {
    /// `2^{2M-1} (1 - large)`, which tends to 1 as `M` grows.
    pub fn scaled_gap(&self, m: u32) -> f64 {
        2f64.powi(2 * m as i32 - 1) * (1.0 - self.large)
    }
}

/// Roots of `λ² - (α + (M-1)β) λ + β(M - 2α)`.
pub fn char_roots(m: u32) -> CharRoots {
    let params = RecursionParams::new(m);
    let b = to_f64(&params.linear());
    let c = to_f64(&params.constant());
    let disc = (b * b - 4.0 * c).sqrt();
    let large = (b + disc) / 2.0;
    // product of the roots is c; avoids cancellation in (b - disc)
    let small = c / large;
    CharRoots { small, large }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;

    #[test]
    fn m2_values() {
        let v = vn_recursion(2, 2);
        assert_eq!(v, vec![int(1), ratio(3, 4), ratio(5, 8)]);
    }

    #[test]
    fn boundary_conditions() {
        for m in 2..10 {
            let v = vn_recursion(m, 1);
            assert_eq!(v[0], int(1));
            assert_eq!(v[1], int(1) - inv_pow2(m));
            assert_eq!(&v[1] + RecursionParams::new(m).beta, int(1));
        }
        assert_eq!(vn_recursion(3, 0), vec![int(1)]);
    }

    #[test]
    fn monotone_and_bounded() {
        for m in 2..7u32 {
            let v = vn_recursion(m, 60);
            let w = vn_recursion(m + 1, 60);
            for n in 0..60 {
                assert!(v[n + 1] <= v[n]);
                assert!(v[n + 1] >= int(0));
                assert!(v[n] <= w[n]);
            }
        }
    }

    #[test]
    fn m2_roots_match_quadratic_formula() {
        // λ² - λ + 1/8
        let r = char_roots(2);
        let expect = (1.0 + 0.5f64.sqrt()) / 2.0;
        assert!((r.large - expect).abs() < 1e-14);
        assert!((r.small - (1.0 - 0.5f64.sqrt()) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn root_intervals() {
        for m in 2..=12u32 {
            let r = char_roots(m);
            let beta = 2f64.powi(-(m as i32));
            let alpha = 1.0 - beta;
            assert!(r.small > 0.0 && r.small < m as f64 * beta, "M={m}: {r:?}");
            assert!(r.large > alpha && r.large < 1.0, "M={m}: {r:?}");
        }
        let g = char_roots(12).scaled_gap(12);
        assert!((0.8..=1.2).contains(&g), "{g}");
    }

    #[test]
    fn ratio_to_power_settles() {
        let m = 3;
        let v = vn_recursion(m, 200);
        let large = char_roots(m).large;
        let at = |n: usize| to_f64(&v[n]) / large.powi(n as i32);
        assert!((at(200) - at(150)).abs() < 1e-9);
    }
}
