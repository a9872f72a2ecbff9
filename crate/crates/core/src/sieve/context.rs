//! Sieve parameters: the small-prime modulus, truncation level and
//! residue selection.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::chi::ChiKind;
use super::primes::PrimeTable;
use super::SieveError;

/// All parameters of a majorant construction over `[N]`, where
/// `N = floor(N' / W)` for an initial range `[N']`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SieveContext {
    /// Initial range bound `N'`.
    pub n_prime: u64,
    /// Small-prime cutoff; `W` is the product of primes up to `w`.
    pub w: u64,
    pub big_w: u64,
    /// Rescaled range `N = floor(N' / W)`.
    pub n: u64,
    pub eps0: f64,
    /// Divisor truncation `R = floor(N'^eps0)`.
    pub r: u64,
    /// Normalization constant for weighted indicators.
    pub c0: f64,
    pub chi: ChiKind,
    /// Residue vector, one entry per axis, all coprime to `W`. Chosen
    /// after construction.
    pub residues: Option<Vec<u64>>,
}

/// `w(N') = max(2, floor(log log log N' / 10))`. The iterated logarithm
/// stays below one for any range this toolkit can hold in memory, so the
/// clamp at two is what actually fires unless the caller overrides.
pub fn default_w(n_prime: u64) -> u64 {
    let x = n_prime as f64;
    let lll = x.ln().ln().max(f64::MIN_POSITIVE).ln();
    if lll.is_finite() && lll > 0.0 {
        ((lll / 10.0).floor() as u64).max(2)
    } else {
        2
    }
}

pub fn make_context(
    n_prime: u64,
    eps0: f64,
    w_override: Option<u64>,
    c0_override: Option<f64>,
) -> Result<SieveContext, SieveError> {
    if !(eps0 > 0.0 && eps0 < 1.0) {
        return Err(SieveError::InvalidEpsilon(eps0));
    }
    let w = w_override.unwrap_or_else(|| default_w(n_prime)).max(2);
    let small = PrimeTable::build(w.max(2))?;
    let mut big_w: u64 = 1;
    for &p in small.primes() {
        if p <= w {
            big_w = big_w
                .checked_mul(p)
                .ok_or_else(|| SieveError::Io("W overflows u64".into()))?;
        }
    }
    let n = n_prime / big_w;
    if n < 2 {
        return Err(SieveError::LimitTooSmall(n_prime));
    }
    let r = (n_prime as f64).powf(eps0).floor() as u64;
    let c0 = c0_override.unwrap_or(eps0 / 10.0);
    Ok(SieveContext {
        n_prime,
        w,
        big_w,
        n,
        eps0,
        r,
        c0,
        chi: ChiKind::Cosine,
        residues: None,
    })
}

impl SieveContext {
    pub fn with_chi(mut self, chi: ChiKind) -> Self {
        self.chi = chi;
        self
    }

    /// Installs a residue vector after validating coprimality with `W`.
    pub fn with_residues(mut self, b: Vec<u64>) -> Result<Self, SieveError> {
        for &bi in &b {
            if bi == 0 || bi.gcd(&self.big_w) != 1 {
                return Err(SieveError::BadResidue {
                    b: bi,
                    w: self.big_w,
                });
            }
        }
        self.residues = Some(b);
        Ok(self)
    }

    pub fn residues(&self) -> Result<&[u64], SieveError> {
        self.residues
            .as_deref()
            .ok_or(SieveError::ResidueNotChosen)
    }

    /// Euler phi of `W`.
    pub fn phi_w(&self) -> u64 {
        let small = PrimeTable::build(self.w.max(2)).expect("tiny sieve");
        let mut phi = self.big_w;
        for &p in small.primes() {
            if p <= self.w && self.big_w % p == 0 {
                phi = phi / p * (p - 1);
            }
        }
        phi
    }

    /// Truncated interior `[ceil(sqrt N), N - ceil(sqrt N)]` used by the
    /// weighted indicator's support.
    pub fn interior(&self) -> (u64, u64) {
        let s = (self.n as f64).sqrt().ceil() as u64;
        (s, self.n.saturating_sub(s))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("context serializes")
    }
}

/// Residue classes of a product set, counted per axis.
///
/// For each axis the membership predicate is evaluated on `W x + b` for
/// `x` in the truncated interior and every residue `b` coprime to `W`;
/// the best vector maximizes the product of per-axis counts, which equals
/// the number of surviving lattice points of the product set. Ties break
/// toward the lexicographically smallest vector.
pub fn choose_residue_product(
    ctx: &SieveContext,
    axes: &[&dyn Fn(u64) -> bool],
) -> Result<(Vec<u64>, u64), SieveError> {
    if axes.is_empty() {
        return Err(SieveError::EmptyIntersection);
    }
    let coprime: Vec<u64> = (1..ctx.big_w)
        .filter(|b| b.gcd(&ctx.big_w) == 1)
        .collect();
    let (lo, hi) = ctx.interior();
    let mut best_b = Vec::with_capacity(axes.len());
    let mut total: u128 = 1;
    for axis in axes {
        let counts: Vec<u64> = coprime
            .iter()
            .map(|&b| {
                let mut c = 0u64;
                for x in lo..=hi {
                    if axis(ctx.big_w * x + b) {
                        c += 1;
                    }
                }
                c
            })
            .collect();
        let (bi, ci) = coprime
            .iter()
            .zip(&counts)
            .max_by(|(ba, ca), (bb, cb)| ca.cmp(cb).then(bb.cmp(ba)))
            .map(|(&b, &c)| (b, c))
            .unwrap();
        best_b.push(bi);
        total *= ci as u128;
    }
    if total == 0 {
        return Err(SieveError::EmptyIntersection);
    }
    Ok((best_b, total.min(u64::MAX as u128) as u64))
}

/// Residue selection over an explicit point set in `[N']^d`: returns the
/// coprime vector `b` maximizing the number of points of the form
/// `W x + b` with `x` in the truncated interior box.
pub fn choose_residue_points(
    ctx: &SieveContext,
    points: &[Vec<u64>],
) -> Result<(Vec<u64>, u64), SieveError> {
    if points.is_empty() {
        return Err(SieveError::EmptyIntersection);
    }
    let d = points[0].len();
    let (lo, hi) = ctx.interior();
    let mut counts: std::collections::BTreeMap<Vec<u64>, u64> = Default::default();
    'outer: for p in points {
        if p.len() != d {
            return Err(SieveError::Io("ragged point set".into()));
        }
        let mut b = Vec::with_capacity(d);
        for &coord in p {
            let bi = coord % ctx.big_w;
            if bi == 0 || bi.gcd(&ctx.big_w) != 1 {
                continue 'outer;
            }
            let x = coord / ctx.big_w;
            if x < lo || x > hi {
                continue 'outer;
            }
            b.push(bi);
        }
        *counts.entry(b).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .max_by(|(ba, ca), (bb, cb)| ca.cmp(cb).then(bb.cmp(ba)))
        .map(|(b, c)| (b, c))
        .ok_or(SieveError::EmptyIntersection)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_of_small_primes() {
        let c = make_context(1_000_000, 0.1, Some(5), None).unwrap();
        assert_eq!(c.big_w, 30);
        let c = make_context(1_000_000, 0.1, Some(2), None).unwrap();
        assert_eq!(c.big_w, 2);
        assert_eq!(c.phi_w(), 1);
        let c = make_context(1_000_000, 0.1, Some(3), None).unwrap();
        assert_eq!(c.big_w, 6);
        assert_eq!(c.phi_w(), 2);
    }

    #[test]
    fn default_w_clamps_at_desk_scale() {
        // log log log 10^6 / 10 is about 0.0964, far below one.
        assert_eq!(default_w(1_000_000), 2);
        assert_eq!(default_w(100), 2);
    }

    #[test]
    fn invalid_epsilon_rejected() {
        assert!(matches!(
            make_context(1000, 0.0, None, None),
            Err(SieveError::InvalidEpsilon(_))
        ));
        assert!(matches!(
            make_context(1000, 1.0, None, None),
            Err(SieveError::InvalidEpsilon(_))
        ));
    }

    #[test]
    fn truncation_level() {
        let c = make_context(100, (7.0f64).ln() / (100.0f64).ln() + 1e-12, Some(2), None).unwrap();
        assert_eq!(c.r, 7);
        assert_eq!(c.n, 50);
    }

    #[test]
    fn residue_validation() {
        let c = make_context(1000, 0.3, Some(3), None).unwrap();
        assert!(c.clone().with_residues(vec![1, 5]).is_ok());
        assert!(matches!(
            c.clone().with_residues(vec![2]),
            Err(SieveError::BadResidue { .. })
        ));
        assert!(matches!(
            c.with_residues(vec![3]),
            Err(SieveError::BadResidue { .. })
        ));
    }

    #[test]
    fn odd_primes_pick_residue_one_mod_two() {
        let ctx = make_context(2000, 0.3, Some(2), None).unwrap();
        let t = PrimeTable::build(2000).unwrap();
        let pred = |n: u64| t.is_prime(n);
        let (b, count) = choose_residue_product(&ctx, &[&pred]).unwrap();
        assert_eq!(b, vec![1]);
        assert!(count > 0);
    }

    #[test]
    fn mod_six_chooses_heavier_class() {
        let ctx = make_context(3000, 0.3, Some(3), None).unwrap();
        let t = PrimeTable::build(3000).unwrap();
        let pred = |n: u64| t.is_prime(n);
        let (b, _) = choose_residue_product(&ctx, &[&pred]).unwrap();
        assert!(b == vec![1] || b == vec![5]);
        // Verify it really is the argmax by direct count.
        let (lo, hi) = ctx.interior();
        let count = |b: u64| (lo..=hi).filter(|&x| t.is_prime(6 * x + b)).count();
        assert!(count(b[0]) >= count(if b[0] == 1 { 5 } else { 1 }));
    }

    #[test]
    fn point_based_selection_matches_product_for_squares() {
        let ctx = make_context(500, 0.3, Some(2), None).unwrap();
        let t = PrimeTable::build(500).unwrap();
        let pts: Vec<Vec<u64>> = t
            .primes()
            .iter()
            .flat_map(|&p| t.primes().iter().map(move |&q| vec![p, q]))
            .collect();
        let (b, c) = choose_residue_points(&ctx, &pts).unwrap();
        assert_eq!(b, vec![1, 1]);
        assert!(c > 0);
    }
}
