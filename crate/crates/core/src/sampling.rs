//! Enumeration or seeded stratified sampling of parameter boxes `[1, H]^t`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Decides between exhausting the box and sampling it.
///
/// `per_vector_cost` is the caller's estimate of work per parameter
/// vector; the box is exhausted when `H^t * per_vector_cost <= budget`.
/// Sampling stratifies the first coordinate into equal slabs and draws
/// the rest uniformly, all from a seeded generator.
pub fn param_vectors(
    t: usize,
    h_range: u64,
    per_vector_cost: u128,
    budget: u128,
    max_samples: u64,
    seed: u64,
) -> (Vec<Vec<i64>>, bool) {
    assert!(h_range >= 1);
    if t == 0 {
        return (vec![vec![]], true);
    }
    let total: u128 = (h_range as u128).checked_pow(t as u32).unwrap_or(u128::MAX);
    let exhaustive = total.saturating_mul(per_vector_cost.max(1)) <= budget;
    if exhaustive {
        let mut out = Vec::with_capacity(total as usize);
        let mut h = vec![1i64; t];
        loop {
            out.push(h.clone());
            let mut k = 0;
            while k < t {
                h[k] += 1;
                if h[k] <= h_range as i64 {
                    break;
                }
                h[k] = 1;
                k += 1;
            }
            if k == t {
                break;
            }
        }
        return (out, true);
    }
    let samples = max_samples.min(total.min(u64::MAX as u128) as u64).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = (0..samples)
        .map(|s| {
            let mut h = Vec::with_capacity(t);
            let lo = 1 + (s as u128 * h_range as u128 / samples as u128) as u64;
            let hi = (((s + 1) as u128 * h_range as u128) / samples as u128).max(lo as u128) as u64;
            h.push(rng.random_range(lo..=hi) as i64);
            for _ in 1..t {
                h.push(rng.random_range(1..=h_range) as i64);
            }
            h
        })
        .collect();
    (out, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_enumerates_the_box() {
        let (v, ex) = param_vectors(2, 3, 1, 1000, 100, 0);
        assert!(ex);
        assert_eq!(v.len(), 9);
        assert!(v.contains(&vec![3, 3]));
        assert!(v.contains(&vec![1, 2]));
    }

    #[test]
    fn sampling_is_seeded_and_stratified() {
        let (a, ex) = param_vectors(2, 1000, 1000, 10, 8, 42);
        assert!(!ex);
        assert_eq!(a.len(), 8);
        let (b, _) = param_vectors(2, 1000, 1000, 10, 8, 42);
        assert_eq!(a, b);
        // First coordinates land in increasing slabs.
        for (i, h) in a.iter().enumerate() {
            let lo = 1 + (i as u64 * 1000 / 8);
            let hi = ((i as u64 + 1) * 1000 / 8).max(lo);
            assert!(h[0] >= lo as i64 && h[0] <= hi as i64);
        }
    }

    #[test]
    fn zero_params_yields_single_empty_vector() {
        let (v, ex) = param_vectors(0, 5, 1, 1, 1, 0);
        assert!(ex);
        assert_eq!(v, vec![Vec::<i64>::new()]);
    }
}
