//! Membership structures for configuration targets.
//!
//! Product sets are stored as one bitset per axis, so the prime lattice
//! in any dimension costs `d * N` bits; arbitrary targets fall back to a
//! hash set of points.

use std::collections::HashSet;

use crate::sieve::PrimeTable;

use super::SearchError;

/// Refuse axis bitsets beyond this many entries per axis.
const AXIS_GUARD: u64 = 1 << 31;

#[derive(Clone, Debug)]
pub enum TargetSet {
    /// Cartesian product of per-axis membership bitsets over `[1, N]`.
    Product { n: u64, axes: Vec<Vec<bool>> },
    /// Explicit point set.
    Points { dim: usize, set: HashSet<Vec<u64>> },
}

impl TargetSet {
    /// The full prime lattice `P_N^d`.
    pub fn prime_lattice(dim: usize, n: u64, pt: &PrimeTable) -> Result<Self, SearchError> {
        Self::product_from_predicates(n, &vec![&(|v: u64| pt.is_prime(v)) as &dyn Fn(u64) -> bool; dim])
    }

    /// Primes restricted to a residue class per axis: axis `i` keeps the
    /// primes congruent to `b[i]` modulo `w`.
    pub fn residue_restricted_primes(
        n: u64,
        pt: &PrimeTable,
        w: u64,
        b: &[u64],
    ) -> Result<Self, SearchError> {
        let preds: Vec<Box<dyn Fn(u64) -> bool>> = b
            .iter()
            .map(|&bi| {
                let pred: Box<dyn Fn(u64) -> bool> =
                    Box::new(move |v: u64| pt.is_prime(v) && v % w == bi % w);
                pred
            })
            .collect();
        let refs: Vec<&dyn Fn(u64) -> bool> = preds.iter().map(|p| p.as_ref()).collect();
        Self::product_from_predicates(n, &refs)
    }

    pub fn product_from_predicates(
        n: u64,
        axes: &[&dyn Fn(u64) -> bool],
    ) -> Result<Self, SearchError> {
        if n >= AXIS_GUARD {
            return Err(SearchError::TargetTooLarge {
                need: n,
                guard: AXIS_GUARD,
            });
        }
        let tables = axes
            .iter()
            .map(|pred| {
                let mut t = vec![false; (n + 1) as usize];
                for (v, slot) in t.iter_mut().enumerate().skip(1) {
                    *slot = pred(v as u64);
                }
                t
            })
            .collect();
        Ok(TargetSet::Product { n, axes: tables })
    }

    pub fn from_points(dim: usize, points: impl IntoIterator<Item = Vec<u64>>) -> Self {
        TargetSet::Points {
            dim,
            set: points.into_iter().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TargetSet::Product { axes, .. } => axes.len(),
            TargetSet::Points { dim, .. } => *dim,
        }
    }

    #[inline]
    pub fn contains(&self, p: &[u64]) -> bool {
        match self {
            TargetSet::Product { n, axes } => p
                .iter()
                .zip(axes)
                .all(|(&c, axis)| c >= 1 && c <= *n && axis[c as usize]),
            TargetSet::Points { set, .. } => set.contains(p),
        }
    }
}
