//! Brute-force discovery and counting of polynomial configurations
//! `{x + P_0(y) v_0, ..., x + P_l(y) v_l}` inside subsets of the integer
//! lattice, primarily the prime lattice.

mod target;

pub use target::TargetSet;

use num_bigint::BigInt;

use crate::exec;
use crate::grid::{lambda_average, GridFunction};
use crate::polysys::IntPoly;

#[derive(Debug, Clone, thiserror::Error)]
pub enum SearchError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial P_{index} has a nonzero constant term")]
    NonzeroConstantTerm { index: usize },
    #[error("target set needs {need} bytes, guard is {guard}")]
    TargetTooLarge { need: u64, guard: u64 },
    #[error("weight function escapes [0, 1]")]
    OutOfRangeFunction,
    #[error("grid error: {0}")]
    Grid(#[from] crate::grid::GridError),
    #[error("sieve error: {0}")]
    Sieve(#[from] crate::sieve::SieveError),
}

/// A configuration search: polynomials with zero constant term, one
/// direction per polynomial, a box bound and a parameter range.
#[derive(Clone, Debug)]
pub struct ConfigurationQuery {
    pub dim: usize,
    /// Ascending coefficient lists, `P_j(0) = 0` enforced.
    pub polys: Vec<Vec<i64>>,
    pub directions: Vec<Vec<i64>>,
    /// Box bound: points live in `[1, N]^d`.
    pub n_bound: u64,
    pub y_max: u64,
    pub target: TargetSet,
    /// Wrap points cyclically into `[1, N]^d` instead of discarding
    /// out-of-range configurations. Exists to cross-check grid averages;
    /// plain searches leave it off.
    pub cyclic: bool,
}

impl ConfigurationQuery {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.polys.len() != self.directions.len() || self.polys.is_empty() {
            return Err(SearchError::DimensionMismatch(format!(
                "{} polynomials vs {} directions",
                self.polys.len(),
                self.directions.len()
            )));
        }
        for (j, p) in self.polys.iter().enumerate() {
            if p.first().copied().unwrap_or(0) != 0 {
                return Err(SearchError::NonzeroConstantTerm { index: j });
            }
        }
        for u in &self.directions {
            if u.len() != self.dim {
                return Err(SearchError::DimensionMismatch(
                    "direction dimension differs from query dimension".into(),
                ));
            }
        }
        if self.target.dim() != self.dim {
            return Err(SearchError::DimensionMismatch(
                "target set dimension differs from query dimension".into(),
            ));
        }
        Ok(())
    }
}

/// A witness configuration: base point, parameter, and all points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigurationHit {
    pub base: Vec<u64>,
    pub y: u64,
    pub points: Vec<Vec<u64>>,
}

fn eval_poly_i128(coeffs: &[i64], y: i128) -> i128 {
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc * y + c as i128;
    }
    acc
}

/// Offsets `P_j(y) v_j` for one parameter value.
fn offsets_at(q: &ConfigurationQuery, y: u64) -> Vec<Vec<i128>> {
    q.polys
        .iter()
        .zip(&q.directions)
        .map(|(p, u)| {
            let py = eval_poly_i128(p, y as i128);
            u.iter().map(|&c| py * c as i128).collect()
        })
        .collect()
}

/// All configurations (or the first `limit`) in lexicographic `(y, x)`
/// order. The scan is parameter-major with the base-point range sharded
/// across workers per parameter value and merged in order, so the output
/// is identical for any worker count.
pub fn find_configurations(
    q: &ConfigurationQuery,
    limit: Option<usize>,
) -> Result<Vec<ConfigurationHit>, SearchError> {
    q.validate()?;
    let n = q.n_bound as i128;
    let d = q.dim;
    let mut hits = Vec::new();
    for y in 1..=q.y_max {
        if let Some(cap) = limit {
            if hits.len() >= cap {
                break;
            }
        }
        let offsets = offsets_at(q, y);
        // Admissible base range per axis so every point stays in [1, N].
        let mut lo = vec![1i128; d];
        let mut hi = vec![n; d];
        if !q.cyclic {
            for off in &offsets {
                for (axis, &o) in off.iter().enumerate() {
                    lo[axis] = lo[axis].max(1 - o);
                    hi[axis] = hi[axis].min(n - o);
                }
            }
            if (0..d).any(|a| lo[a] > hi[a]) {
                continue;
            }
        }
        let first_span = (hi[0] - lo[0] + 1) as usize;
        let shard = 1usize << 12;
        let shards = first_span.div_ceil(shard);
        let mut per_shard: Vec<Vec<ConfigurationHit>> = exec::map_indexed(shards, |s| {
            let x0_lo = lo[0] + (s * shard) as i128;
            let x0_hi = (x0_lo + shard as i128 - 1).min(hi[0]);
            let mut out = Vec::new();
            let mut base = vec![0i128; d];
            scan_axis(q, y, &offsets, &lo, &hi, x0_lo, x0_hi, &mut base, 0, &mut out);
            out
        });
        for s in &mut per_shard {
            hits.append(s);
            if let Some(cap) = limit {
                if hits.len() >= cap {
                    break;
                }
            }
        }
    }
    if let Some(cap) = limit {
        hits.truncate(cap);
    }
    // Revalidate every hit through the exact big-integer path before
    // handing it out.
    for h in &hits {
        debug_validate_hit(q, h)?;
    }
    Ok(hits)
}

#[allow(clippy::too_many_arguments)]
fn scan_axis(
    q: &ConfigurationQuery,
    y: u64,
    offsets: &[Vec<i128>],
    lo: &[i128],
    hi: &[i128],
    x0_lo: i128,
    x0_hi: i128,
    base: &mut Vec<i128>,
    axis: usize,
    out: &mut Vec<ConfigurationHit>,
) {
    let (a, b) = if axis == 0 {
        (x0_lo, x0_hi)
    } else {
        (lo[axis], hi[axis])
    };
    for v in a..=b {
        base[axis] = v;
        if axis + 1 < q.dim {
            scan_axis(q, y, offsets, lo, hi, x0_lo, x0_hi, base, axis + 1, out);
        } else if let Some(hit) = check_base(q, y, offsets, base) {
            out.push(hit);
        }
    }
}

fn check_base(
    q: &ConfigurationQuery,
    y: u64,
    offsets: &[Vec<i128>],
    base: &[i128],
) -> Option<ConfigurationHit> {
    let n = q.n_bound as i128;
    let mut points = Vec::with_capacity(offsets.len());
    for off in offsets {
        let mut p = Vec::with_capacity(q.dim);
        for (axis, &o) in off.iter().enumerate() {
            let mut c = base[axis] + o;
            if q.cyclic {
                c = (c - 1).rem_euclid(n) + 1;
            } else if c < 1 || c > n {
                return None;
            }
            p.push(c as u64);
        }
        if !q.target.contains(&p) {
            return None;
        }
        points.push(p);
    }
    Some(ConfigurationHit {
        base: base.iter().map(|&v| v as u64).collect(),
        y,
        points,
    })
}

/// Recomputes every point of a hit through the exact big-integer
/// evaluation path and rechecks membership and the box bound.
fn debug_validate_hit(q: &ConfigurationQuery, hit: &ConfigurationHit) -> Result<(), SearchError> {
    let n = BigInt::from(q.n_bound);
    for (j, (p, u)) in q.polys.iter().zip(&q.directions).enumerate() {
        let poly = IntPoly::from_univariate(1, 0, p);
        let py = poly
            .eval(&[BigInt::from(hit.y)])
            .map_err(|e| SearchError::DimensionMismatch(e.to_string()))?;
        for axis in 0..q.dim {
            let expect = BigInt::from(hit.base[axis]) + &py * u[axis];
            let expect = if q.cyclic {
                ((expect - 1i32) % &n + &n) % &n + 1i32
            } else {
                expect
            };
            let got = BigInt::from(hit.points[j][axis]);
            if expect != got {
                return Err(SearchError::DimensionMismatch(format!(
                    "hit fails revalidation at point {} axis {}: {} vs {}",
                    j, axis, expect, got
                )));
            }
        }
        if !q.target.contains(&hit.points[j]) {
            return Err(SearchError::DimensionMismatch(format!(
                "hit point {:?} not in target",
                hit.points[j]
            )));
        }
        if hit.points[j].iter().any(|&c| c < 1 || c > q.n_bound) {
            return Err(SearchError::DimensionMismatch(format!(
                "point {:?} escapes [1, {}]",
                hit.points[j], q.n_bound
            )));
        }
    }
    Ok(())
}

/// Weighted count of the query's configuration pattern: the cyclic grid
/// average of the weights along the pattern, sharing the kernel with the
/// norm machinery.
pub fn count_weighted(
    q: &ConfigurationQuery,
    weights: &[&GridFunction],
) -> Result<f64, SearchError> {
    q.validate()?;
    if weights.len() != q.polys.len() {
        return Err(SearchError::DimensionMismatch(format!(
            "{} weights for {} polynomials",
            weights.len(),
            q.polys.len()
        )));
    }
    for w in weights {
        if w.dim() != q.dim || w.modulus() != q.n_bound as usize {
            return Err(SearchError::DimensionMismatch(
                "weight grid does not match the query box".into(),
            ));
        }
    }
    Ok(lambda_average(
        &q.polys,
        &q.directions,
        weights,
        q.y_max as usize,
        true,
    )?)
}

/// Smallest witness parameter per base point, plus summary statistics.
#[derive(Clone, Debug, Default)]
pub struct MinYProfile {
    /// Base points with a witness, in lexicographic order, with their
    /// minimal parameter.
    pub entries: Vec<(Vec<u64>, u64)>,
    /// Histogram over minimal parameters: `(y, count)` ascending.
    pub histogram: Vec<(u64, u64)>,
    pub max_min_y: Option<u64>,
}

/// Scans the full parameter range and records, for every base point that
/// admits a configuration, the smallest parameter that produces one.
pub fn min_y_profile(q: &ConfigurationQuery) -> Result<MinYProfile, SearchError> {
    let hits = find_configurations(q, None)?;
    let mut first: std::collections::BTreeMap<Vec<u64>, u64> = Default::default();
    for h in hits {
        first.entry(h.base.clone()).or_insert(h.y);
    }
    let mut histogram: std::collections::BTreeMap<u64, u64> = Default::default();
    for &y in first.values() {
        *histogram.entry(y).or_insert(0) += 1;
    }
    let max_min_y = first.values().copied().max();
    Ok(MinYProfile {
        entries: first.into_iter().collect(),
        histogram: histogram.into_iter().collect(),
        max_min_y,
    })
}

/// Positivity probe for dense bounded weights: evaluates the pattern
/// average of a `[0, 1]`-valued function against the query's pattern.
pub fn bl_positivity_probe(
    g: &GridFunction,
    polys: &[Vec<i64>],
    directions: &[Vec<i64>],
    side_m: usize,
) -> Result<f64, SearchError> {
    if g.values().iter().any(|&v| !(0.0..=1.0 + 1e-12).contains(&v)) {
        return Err(SearchError::OutOfRangeFunction);
    }
    let fns: Vec<&GridFunction> = vec![g; polys.len()];
    Ok(lambda_average(polys, directions, &fns, side_m, true)?)
}
