//! Finite-range shift-averaging inequality with an explicit boundary
//! bound.
//!
//! For a sequence on `[M + H]` the squared average over `[M]` is bounded
//! by the doubled average over shifted pairs plus a computable error:
//! shifting by `h <= H` moves at most `h` terms across each end, so each
//! shifted mean differs from the original by at most `2 h sup|x| / M`.

use super::GridError;

/// Output of [`vdc_check`]: the squared plain average, the pair average,
/// and the boundary bound certifying `lhs_sq <= rhs + bound`.
#[derive(Clone, Copy, Debug)]
pub struct VdcBounds {
    pub lhs_sq: f64,
    pub rhs: f64,
    pub bound: f64,
}

/// Evaluates both sides of the inequality for `x` on `[M + H]` (indexing
/// `x[n-1]` for `n in [1, M+H]`) and asserts it with the computed bound.
pub fn vdc_check(x: &[f64], side_m: usize, h_range: usize) -> Result<VdcBounds, GridError> {
    if h_range < 1 || side_m < h_range {
        return Err(GridError::RangeTooShort {
            need: h_range.max(1),
            got: side_m,
        });
    }
    if x.len() < side_m + h_range {
        return Err(GridError::RangeTooShort {
            need: side_m + h_range,
            got: x.len(),
        });
    }
    let m = side_m as f64;
    let sup = x[..side_m + h_range]
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs()));

    let plain: f64 = x[..side_m].iter().sum::<f64>() / m;
    let lhs_sq = plain * plain;

    // E_{n in [M]} E_{h, h' in [H]} x_{n+h} x_{n+h'} = E_n (E_h x_{n+h})^2.
    let mut rhs = 0.0;
    // E_h E_n x_{n+h}, needed for the tight part of the bound.
    let shifted_mean_abs = {
        let mut acc = 0.0;
        for h in 1..=h_range {
            acc += x[h..h + side_m].iter().sum::<f64>() / m;
        }
        (acc / h_range as f64).abs()
    };
    for n in 0..side_m {
        let mut inner = 0.0;
        for h in 1..=h_range {
            inner += x[n + h];
        }
        inner /= h_range as f64;
        rhs += inner * inner;
    }
    rhs /= m;

    // |E_n x_n| <= |E_h E_n x_{n+h}| + 2 H sup / M, then Cauchy-Schwarz on
    // the shifted average: (a + e)^2 <= a^2 + 2 a e + e^2 <= rhs + bound.
    let e = 2.0 * h_range as f64 * sup / m;
    let bound = 2.0 * shifted_mean_abs * e + e * e;

    if lhs_sq > rhs + bound + 1e-9 * (1.0 + lhs_sq.abs() + rhs.abs()) {
        return Err(GridError::InequalityViolated(format!(
            "{} > {} + {}",
            lhs_sq, rhs, bound
        )));
    }
    Ok(VdcBounds { lhs_sq, rhs, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_sequence_is_tight() {
        let x = vec![2.0; 30];
        let b = vdc_check(&x, 20, 10).unwrap();
        assert!((b.lhs_sq - 4.0).abs() < 1e-12);
        assert!((b.rhs - 4.0).abs() < 1e-12);
        assert!(b.bound >= 0.0);
    }

    #[test]
    fn degenerate_h_equals_m_still_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x: Vec<f64> = (0..16).map(|_| rng.random_range(-1.0..1.0)).collect();
        let b = vdc_check(&x, 8, 8).unwrap();
        assert!(b.lhs_sq <= b.rhs + b.bound + 1e-9);
    }

    #[test]
    fn random_sequences_never_violate() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let m = rng.random_range(4..40usize);
            let h = rng.random_range(1..=m);
            let x: Vec<f64> = (0..m + h).map(|_| rng.random_range(-3.0..3.0)).collect();
            vdc_check(&x, m, h).unwrap();
        }
    }

    #[test]
    fn short_input_errors() {
        let x = vec![0.0; 5];
        assert!(matches!(
            vdc_check(&x, 8, 2),
            Err(GridError::RangeTooShort { .. })
        ));
        assert!(matches!(
            vdc_check(&x, 2, 3),
            Err(GridError::RangeTooShort { .. })
        ));
    }
}
