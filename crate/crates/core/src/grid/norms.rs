//! Configuration averages and local box norms.
//!
//! The `2^s`-fold product over a parallelepiped depends on the side pairs
//! `(y_i^(0), y_i^(1))` only through the differences `t_i = y_i^(1) - y_i^(0)`,
//! so every kernel here averages over difference vectors with triangle
//! weights `(M - |t|) / M^2` instead of the raw `M^{2s}` pairs.

use crate::exec;
use crate::polysys::PolyMap;
use crate::sampling::param_vectors;

use super::function::GridFunction;
use super::GridError;

/// Directions and side length of a local box average.
#[derive(Clone, Debug)]
pub struct BoxSpec {
    pub directions: Vec<Vec<i64>>,
    pub side: usize,
}

impl BoxSpec {
    pub fn new(directions: Vec<Vec<i64>>, side: usize) -> Result<Self, GridError> {
        if directions.is_empty() {
            return Err(GridError::DimensionMismatch("no directions".into()));
        }
        if side == 0 {
            return Err(GridError::DimensionMismatch("side length zero".into()));
        }
        let d = directions[0].len();
        if directions.iter().any(|u| u.len() != d) {
            return Err(GridError::DimensionMismatch("ragged directions".into()));
        }
        Ok(BoxSpec { directions, side })
    }

    pub fn order(&self) -> usize {
        self.directions.len()
    }
}

/// Polynomial family of box directions averaged over a parameter box.
#[derive(Clone, Debug)]
pub struct AvgBoxSpec {
    pub maps: Vec<PolyMap>,
    pub h_range: u64,
    pub side: usize,
}

impl AvgBoxSpec {
    /// Validates that no coordinate of any direction polynomial vanishes
    /// identically.
    pub fn new(maps: Vec<PolyMap>, h_range: u64, side: usize) -> Result<Self, GridError> {
        if maps.is_empty() || h_range == 0 || side == 0 {
            return Err(GridError::DimensionMismatch(
                "empty direction family or degenerate ranges".into(),
            ));
        }
        let t = maps[0].nparams();
        let d = maps[0].dim();
        for m in &maps {
            if m.nparams() != t || m.dim() != d {
                return Err(GridError::DimensionMismatch(
                    "direction maps disagree on arity".into(),
                ));
            }
            for i in 0..d {
                if m.coord(i).is_zero() {
                    return Err(GridError::DimensionMismatch(format!(
                        "direction polynomial vanishes on coordinate {}",
                        i + 1
                    )));
                }
            }
        }
        Ok(AvgBoxSpec {
            maps,
            h_range,
            side,
        })
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn nparams(&self) -> usize {
        self.maps[0].nparams()
    }
}

/// Evaluation policy for parameter averages.
#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    /// Term-evaluation budget separating exhaustive from sampled runs.
    pub budget: u128,
    pub max_samples: u64,
    pub seed: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            budget: 1_000_000_000,
            max_samples: 256,
            seed: 0,
        }
    }
}

/// Result of an averaged norm evaluation.
#[derive(Clone, Copy, Debug)]
pub struct AvgNorm {
    /// The norm itself, `mean_pow^(1 / 2^s)`.
    pub value: f64,
    /// Mean of the `2^s`-th powers over the parameter box.
    pub mean_pow: f64,
    /// Standard error of `mean_pow` under sampling.
    pub std_error: Option<f64>,
    pub samples: u64,
    pub exhaustive: bool,
}

fn reduce_direction(u: &[i64], n: usize) -> Vec<usize> {
    u.iter().map(|&c| c.rem_euclid(n as i64) as usize).collect()
}

/// Triangle-weighted product average over one box: for each difference
/// vector `t` the integrand is `E_x prod_omega f_omega(x + sum_{i in omega} t_i u_i)`.
/// `family[omega]` is indexed by the bitmask of `omega`.
fn box_correlation(
    family: &[&GridFunction],
    directions: &[Vec<i64>],
    side: usize,
) -> Result<f64, GridError> {
    let s = directions.len();
    assert_eq!(family.len(), 1 << s);
    let base = family[0];
    let d = base.dim();
    let n = base.modulus();
    for f in family {
        if !f.same_shape(base) {
            return Err(GridError::DimensionMismatch(
                "family members live on different grids".into(),
            ));
        }
    }
    for u in directions {
        if u.len() != d {
            return Err(GridError::DimensionMismatch(format!(
                "direction has {} coordinates on a {}-dimensional grid",
                u.len(),
                d
            )));
        }
    }
    let m = side as i64;
    let reduced: Vec<Vec<usize>> = directions.iter().map(|u| reduce_direction(u, n)).collect();
    let len = base.len();
    let span = (2 * m - 1) as usize;
    let combos = span.pow(s as u32);
    let mut total = 0.0;
    let mut t = vec![-(m - 1); s];
    for _ in 0..combos {
        let mut weight = 1.0;
        for &ti in &t {
            weight *= (m - ti.abs()) as f64 / (m * m) as f64;
        }
        // Offsets per vertex: delta_omega = sum_{i in omega} t_i u_i.
        let mut deltas: Vec<Vec<usize>> = Vec::with_capacity(1 << s);
        for omega in 0..(1usize << s) {
            let mut delta = vec![0usize; d];
            for (i, &ti) in t.iter().enumerate() {
                if omega >> i & 1 == 1 {
                    let ti_mod = ti.rem_euclid(n as i64) as u128;
                    for (axis, dv) in delta.iter_mut().enumerate() {
                        let add = (ti_mod * reduced[i][axis] as u128 % n as u128) as usize;
                        *dv = (*dv + add) % n;
                    }
                }
            }
            deltas.push(delta);
        }
        let inner = exec::det_mean(len, |idx| {
            let mut p = 1.0;
            for (omega, f) in family.iter().enumerate() {
                p *= f.at_shifted(idx, &deltas[omega]);
            }
            p
        });
        total += weight * inner;
        // odometer over t in [-(m-1), m-1]^s
        for i in 0..s {
            t[i] += 1;
            if t[i] <= m - 1 {
                break;
            }
            t[i] = -(m - 1);
        }
    }
    Ok(total)
}

/// Box-norm inner product of a complete `2^s` family (the vertex at the
/// empty pattern included).
pub fn gowers_inner(
    family: &[&GridFunction],
    spec: &BoxSpec,
) -> Result<f64, GridError> {
    if family.len() != 1 << spec.order() {
        return Err(GridError::IncompleteFamily {
            expected: 1 << spec.order(),
            got: family.len(),
        });
    }
    box_correlation(family, &spec.directions, spec.side)
}

/// Local box norm of `f` with the given directions and side length: the
/// `2^s`-th root of the complete self-correlation. The inner average is a
/// mean of squares up to floating noise; small negatives are clamped.
pub fn box_norm(f: &GridFunction, spec: &BoxSpec) -> Result<f64, GridError> {
    let family: Vec<&GridFunction> = vec![f; 1 << spec.order()];
    let raw = box_correlation(&family, &spec.directions, spec.side)?;
    let clamped = clamp_power(raw);
    Ok(clamped.powf(1.0 / (1u64 << spec.order()) as f64))
}

/// The `2^s`-th powers are nonnegative in exact arithmetic; tolerate tiny
/// negative noise and surface anything worse.
fn clamp_power(raw: f64) -> f64 {
    if raw < 0.0 {
        debug_assert!(raw > -1e-8, "box power {} is negative beyond noise", raw);
        0.0
    } else {
        raw
    }
}

/// Averaged polynomial box norm
/// `( E_{h in [H]^t} box_norm(f; Q(h), M)^{2^s} )^{1 / 2^s}`.
///
/// Exhaustive over the parameter box when the estimated term count fits
/// the budget, otherwise seeded stratified sampling with a reported
/// standard error. `require_exhaustive` turns an over-budget request into
/// an error instead.
pub fn avg_box_norm(
    f: &GridFunction,
    spec: &AvgBoxSpec,
    opts: EvalOptions,
    require_exhaustive: bool,
) -> Result<AvgNorm, GridError> {
    let s = spec.order();
    let t = spec.nparams();
    let per_h = (spec.side as u128).pow(2 * s as u32) * (f.len() as u128);
    if require_exhaustive {
        let total = (spec.h_range as u128)
            .checked_pow(t as u32)
            .unwrap_or(u128::MAX);
        let need = total.saturating_mul(per_h);
        if need > opts.budget {
            return Err(GridError::BudgetExceeded {
                need,
                budget: opts.budget,
            });
        }
    }
    let (h_vectors, exhaustive) = param_vectors(
        t,
        spec.h_range,
        per_h,
        opts.budget,
        opts.max_samples,
        opts.seed,
    );
    let family: Vec<&GridFunction> = vec![f; 1 << s];
    let mut powers = Vec::with_capacity(h_vectors.len());
    for h in &h_vectors {
        let dirs: Vec<Vec<i64>> = spec
            .maps
            .iter()
            .map(|m| m.eval_i64(h))
            .collect::<Result<_, _>>()
            .map_err(|e| GridError::DimensionMismatch(e.to_string()))?;
        powers.push(clamp_power(box_correlation(&family, &dirs, spec.side)?));
    }
    let k = powers.len() as f64;
    let mean_pow = powers.iter().sum::<f64>() / k;
    let std_error = if powers.len() > 1 && !exhaustive {
        let var = powers.iter().map(|v| (v - mean_pow).powi(2)).sum::<f64>() / (k - 1.0);
        Some((var / k).sqrt())
    } else {
        None
    };
    Ok(AvgNorm {
        value: clamp_power(mean_pow).powf(1.0 / (1u64 << s) as f64),
        mean_pow,
        std_error,
        samples: powers.len() as u64,
        exhaustive,
    })
}

/// Evaluates scalar polynomial coefficients (ascending) at `y`, reduced
/// into `[0, n)`.
pub(crate) fn poly_shift(coeffs: &[i64], y: i64, n: usize) -> usize {
    let n_i = n as i128;
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = (acc * y as i128 + c as i128).rem_euclid(n_i);
    }
    acc.rem_euclid(n_i) as usize
}

/// Counting average of a polynomial configuration:
/// `E_{x in X} E_{y in [M]} prod_j f_j(x + P_j(y) v_j)`, all shifts cyclic.
pub fn lambda_average(
    polys: &[Vec<i64>],
    directions: &[Vec<i64>],
    fns: &[&GridFunction],
    side_m: usize,
    enforce_zero_constant: bool,
) -> Result<f64, GridError> {
    if polys.len() != directions.len() || fns.len() != polys.len() || fns.is_empty() {
        return Err(GridError::DimensionMismatch(format!(
            "{} polynomials, {} directions, {} functions",
            polys.len(),
            directions.len(),
            fns.len()
        )));
    }
    let base = fns[0];
    let d = base.dim();
    let n = base.modulus();
    for f in fns {
        if !f.same_shape(base) {
            return Err(GridError::DimensionMismatch(
                "weights live on different grids".into(),
            ));
        }
    }
    for u in directions {
        if u.len() != d {
            return Err(GridError::DimensionMismatch(
                "direction dimension mismatch".into(),
            ));
        }
    }
    if enforce_zero_constant {
        for p in polys {
            if p.first().copied().unwrap_or(0) != 0 {
                return Err(GridError::DimensionMismatch(
                    "polynomial has a nonzero constant term".into(),
                ));
            }
        }
    }
    if side_m == 0 {
        return Err(GridError::DimensionMismatch("empty y range".into()));
    }
    let len = base.len();
    let mut acc = 0.0;
    for y in 1..=side_m as i64 {
        let deltas: Vec<Vec<usize>> = polys
            .iter()
            .zip(directions)
            .map(|(p, u)| {
                let py = poly_shift(p, y, n);
                u.iter()
                    .map(|&c| {
                        (py as u128 * c.rem_euclid(n as i64) as u128 % n as u128) as usize
                    })
                    .collect()
            })
            .collect();
        acc += exec::det_mean(len, |idx| {
            let mut prod = 1.0;
            for (j, f) in fns.iter().enumerate() {
                prod *= f.at_shifted(idx, &deltas[j]);
            }
            prod
        });
    }
    Ok(acc / side_m as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::IntPoly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_grid(dim: usize, n: usize, seed: u64) -> GridFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = n.pow(dim as u32);
        let values: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
        GridFunction::from_values(dim, n, values).unwrap()
    }

    #[test]
    fn constant_box_norm_is_the_constant() {
        let g = GridFunction::constant(1, 40, -2.5).unwrap();
        let spec = BoxSpec::new(vec![vec![3]], 4).unwrap();
        assert!((box_norm(&g, &spec).unwrap() - 2.5).abs() < 1e-12);
        let z = GridFunction::zeros(1, 40).unwrap();
        assert_eq!(box_norm(&z, &spec).unwrap(), 0.0);
    }

    #[test]
    fn s1_box_matches_direct_oracle() {
        // ||f||^2 = E_x (E_{y in [M]} f(x + y u))^2, computed naively.
        let g = random_grid(1, 37, 5);
        let m = 5usize;
        let u = 4i64;
        let spec = BoxSpec::new(vec![vec![u]], m).unwrap();
        let got = box_norm(&g, &spec).unwrap();
        let n = 37usize;
        let mut acc = 0.0;
        for x in 0..n {
            let mut inner = 0.0;
            for y in 1..=m {
                inner += g.values()[(x + y * u as usize) % n];
            }
            inner /= m as f64;
            acc += inner * inner;
        }
        let expected = (acc / n as f64).sqrt();
        assert!((got - expected).abs() < 1e-12, "{} vs {}", got, expected);
    }

    #[test]
    fn s2_box_matches_quadruple_loop_oracle() {
        let g = random_grid(2, 7, 9);
        let m = 3usize;
        let dirs = vec![vec![1, 2], vec![2, 1]];
        let spec = BoxSpec::new(dirs.clone(), m).unwrap();
        let got = box_norm(&g, &spec).unwrap();
        // Naive oracle over all y pairs and x.
        let n = 7usize;
        let mut acc = 0.0;
        for x0 in 0..n {
            for x1 in 0..n {
                for y10 in 1..=m {
                    for y11 in 1..=m {
                        for y20 in 1..=m {
                            for y21 in 1..=m {
                                let mut prod = 1.0;
                                for omega in 0..4usize {
                                    let ya = if omega & 1 == 1 { y11 } else { y10 };
                                    let yb = if omega & 2 == 2 { y21 } else { y20 };
                                    let cx = (x0
                                        + ya * dirs[0][0] as usize
                                        + yb * dirs[1][0] as usize)
                                        % n;
                                    let cy = (x1
                                        + ya * dirs[0][1] as usize
                                        + yb * dirs[1][1] as usize)
                                        % n;
                                    prod *= g.at(&[cx, cy]);
                                }
                                acc += prod;
                            }
                        }
                    }
                }
            }
        }
        let expected = (acc / (n * n * m.pow(4)) as f64).max(0.0).powf(0.25);
        assert!((got - expected).abs() < 1e-10, "{} vs {}", got, expected);
    }

    #[test]
    fn gowers_inner_collapses_to_box_power() {
        let g = random_grid(1, 31, 11);
        let spec = BoxSpec::new(vec![vec![2], vec![5]], 3).unwrap();
        let family: Vec<&GridFunction> = vec![&g; 4];
        let inner = gowers_inner(&family, &spec).unwrap();
        let norm = box_norm(&g, &spec).unwrap();
        assert!((inner.abs().powf(0.25) - norm).abs() < 1e-9);
        // Any zero member kills the product.
        let z = GridFunction::zeros(1, 31).unwrap();
        let family2: Vec<&GridFunction> = vec![&g, &z, &g, &g];
        assert!(gowers_inner(&family2, &spec).unwrap().abs() < 1e-15);
    }

    #[test]
    fn lambda_all_ones_is_one() {
        let one = GridFunction::constant(2, 11, 1.0).unwrap();
        let fns = vec![&one, &one];
        let v = lambda_average(
            &[vec![0], vec![0, 1]],
            &[vec![1, 1], vec![1, 2]],
            &fns,
            4,
            true,
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lambda_indicator_hand_case() {
        // d=1, N=5, M=1, P=(0, y): progressions x, x+1 never both 0.
        let mut vals = vec![0.0; 5];
        vals[0] = 1.0;
        let f = GridFunction::from_values(1, 5, vals).unwrap();
        let fns = vec![&f, &f];
        let v = lambda_average(&[vec![0], vec![0, 1]], &[vec![1], vec![1]], &fns, 1, true)
            .unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn lambda_matches_triple_loop_oracle() {
        let f0 = random_grid(1, 23, 1);
        let f1 = random_grid(1, 23, 2);
        let f2 = random_grid(1, 23, 3);
        let polys = [vec![0], vec![0, 1], vec![0, 0, 2]];
        let dirs = [vec![1], vec![1], vec![1]];
        let m = 6usize;
        let fns = vec![&f0, &f1, &f2];
        let got = lambda_average(&polys, &dirs, &fns, m, true).unwrap();
        let n = 23usize;
        let mut acc = 0.0;
        for x in 0..n {
            for y in 1..=m {
                let p1 = y % n;
                let p2 = 2 * y * y % n;
                acc += f0.values()[x] * f1.values()[(x + p1) % n] * f2.values()[(x + p2) % n];
            }
        }
        let expected = acc / (n * m) as f64;
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn avg_box_norm_degenerate_to_single_box() {
        // Q constant in h: averaging over h is a no-op.
        let g = random_grid(1, 19, 21);
        let q = PolyMap::new(vec![IntPoly::constant(1, 3)]).unwrap();
        let spec = AvgBoxSpec::new(vec![q], 4, 3).unwrap();
        let avg = avg_box_norm(&g, &spec, EvalOptions::default(), false).unwrap();
        let single = box_norm(&g, &BoxSpec::new(vec![vec![3]], 3).unwrap()).unwrap();
        assert!((avg.value - single).abs() < 1e-12);
        assert!(avg.exhaustive);
        // Constant function: norm equals |c|.
        let c = GridFunction::constant(1, 19, 1.5).unwrap();
        let spec2 = AvgBoxSpec::new(
            vec![PolyMap::new(vec![IntPoly::var(1, 0)]).unwrap()],
            4,
            3,
        )
        .unwrap();
        let avg2 = avg_box_norm(&c, &spec2, EvalOptions::default(), false).unwrap();
        assert!((avg2.value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn budget_guard_errors_when_exhaustive_demanded() {
        let g = random_grid(1, 19, 22);
        let q = PolyMap::new(vec![IntPoly::var(2, 0).add(&IntPoly::var(2, 1))]).unwrap();
        let spec = AvgBoxSpec::new(vec![q], 1000, 4).unwrap();
        let opts = EvalOptions {
            budget: 100,
            max_samples: 8,
            seed: 0,
        };
        assert!(matches!(
            avg_box_norm(&g, &spec, opts, true),
            Err(GridError::BudgetExceeded { .. })
        ));
        let sampled = avg_box_norm(&g, &spec, opts, false).unwrap();
        assert!(!sampled.exhaustive);
        assert!(sampled.std_error.is_some());
    }

    #[test]
    fn triangle_inequality_on_random_pairs() {
        for seed in 0..20 {
            let f = random_grid(1, 29, 100 + seed);
            let g = random_grid(1, 29, 200 + seed);
            let spec = BoxSpec::new(vec![vec![2], vec![7]], 3).unwrap();
            let nf = box_norm(&f, &spec).unwrap();
            let ng = box_norm(&g, &spec).unwrap();
            let nfg = box_norm(&f.add(&g).unwrap(), &spec).unwrap();
            assert!(nfg <= nf + ng + 1e-9, "{} > {} + {}", nfg, nf, ng);
        }
    }
}
