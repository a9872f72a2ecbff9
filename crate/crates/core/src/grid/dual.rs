//! Dual functions of box-norm families and the orthogonality diagnostic.
//!
//! The dual at `x` averages the product of the family over all
//! parallelepipeds having `x` as their empty-pattern vertex, so the
//! pairing `<f, D(f)>` recovers the averaged box-norm power exactly.

use crate::exec;
use crate::sampling::param_vectors;

use super::function::GridFunction;
use super::norms::{AvgBoxSpec, EvalOptions};
use super::GridError;

/// Family of grid functions indexed by vertex patterns `{0,1}^s`; slot 0
/// (the empty pattern) is optional and unused by dual evaluation.
#[derive(Clone, Debug)]
pub struct CubeFamily {
    order: usize,
    members: Vec<Option<GridFunction>>,
}

impl CubeFamily {
    pub fn new(order: usize) -> Self {
        CubeFamily {
            order,
            members: vec![None; 1 << order],
        }
    }

    /// All nonzero patterns share one function.
    pub fn uniform(order: usize, f: &GridFunction) -> Self {
        let mut fam = CubeFamily::new(order);
        for omega in 1..(1usize << order) {
            fam.members[omega] = Some(f.clone());
        }
        fam
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn set(&mut self, omega: usize, f: GridFunction) -> &mut Self {
        self.members[omega] = Some(f);
        self
    }

    pub fn get(&self, omega: usize) -> Option<&GridFunction> {
        self.members[omega].as_ref()
    }

    /// Members for every nonzero pattern, in pattern order.
    fn nonzero_members(&self) -> Result<Vec<&GridFunction>, GridError> {
        let mut out = Vec::with_capacity((1 << self.order) - 1);
        for omega in 1..(1usize << self.order) {
            match &self.members[omega] {
                Some(f) => out.push(f),
                None => {
                    return Err(GridError::IncompleteFamily {
                        expected: (1 << self.order) - 1,
                        got: out.len(),
                    })
                }
            }
        }
        Ok(out)
    }
}

/// Dual function of a family along polynomial directions:
/// `D(x) = E_h E_t prod_{omega != 0} f_omega(x + sum_{i in omega} t_i Q_i(h))`
/// with triangle-weighted side differences `t`. Exhaustive over the
/// parameter box within budget, otherwise seeded sampling.
pub fn dual_function(
    spec: &AvgBoxSpec,
    family: &CubeFamily,
    opts: EvalOptions,
) -> Result<GridFunction, GridError> {
    let s = spec.order();
    if family.order() != s {
        return Err(GridError::IncompleteFamily {
            expected: 1 << s,
            got: 1 << family.order(),
        });
    }
    let members = family.nonzero_members()?;
    let base = members[0];
    let d = base.dim();
    let n = base.modulus();
    for f in &members {
        if !f.same_shape(base) {
            return Err(GridError::DimensionMismatch(
                "family members live on different grids".into(),
            ));
        }
    }
    let m = spec.side as i64;
    let per_h = (spec.side as u128).pow(2 * s as u32) * base.len() as u128;
    let (h_vectors, _) = param_vectors(
        spec.nparams(),
        spec.h_range,
        per_h,
        opts.budget,
        opts.max_samples,
        opts.seed,
    );

    let len = base.len();
    let mut acc = vec![0.0f64; len];
    let span = (2 * m - 1) as usize;
    let combos = span.pow(s as u32);
    for h in &h_vectors {
        let dirs: Vec<Vec<usize>> = spec
            .maps
            .iter()
            .map(|q| {
                q.eval_i64(h).map(|u| {
                    u.iter()
                        .map(|&c| c.rem_euclid(n as i64) as usize)
                        .collect::<Vec<usize>>()
                })
            })
            .collect::<Result<_, _>>()
            .map_err(|e| GridError::DimensionMismatch(e.to_string()))?;
        let mut t = vec![-(m - 1); s];
        for _ in 0..combos {
            let mut weight = 1.0;
            for &ti in &t {
                weight *= (m - ti.abs()) as f64 / (m * m) as f64;
            }
            // Offset of each nonzero vertex relative to x.
            let mut deltas = Vec::with_capacity(members.len());
            for omega in 1..(1usize << s) {
                let mut delta = vec![0usize; d];
                for (i, &ti) in t.iter().enumerate() {
                    if omega >> i & 1 == 1 {
                        let ti_mod = ti.rem_euclid(n as i64) as u128;
                        for (axis, dv) in delta.iter_mut().enumerate() {
                            let add = (ti_mod * dirs[i][axis] as u128 % n as u128) as usize;
                            *dv = (*dv + add) % n;
                        }
                    }
                }
                deltas.push(delta);
            }
            let w = weight / h_vectors.len() as f64;
            let contrib = exec::map_indexed(len, |idx| {
                let mut p = 1.0;
                for (k, f) in members.iter().enumerate() {
                    p *= f.at_shifted(idx, &deltas[k]);
                }
                p * w
            });
            for (a, c) in acc.iter_mut().zip(contrib) {
                *a += c;
            }
            for i in 0..s {
                t[i] += 1;
                if t[i] <= m - 1 {
                    break;
                }
                t[i] = -(m - 1);
            }
        }
    }
    GridFunction::from_values(d, n, acc)
}

/// `E_x (nu(x) - 1) * prod_k duals[k](x)`; the empty product makes the
/// zero-dual case the plain mean deviation.
pub fn orthogonality_check(
    nu: &GridFunction,
    duals: &[&GridFunction],
) -> Result<f64, GridError> {
    for d in duals {
        if !d.same_shape(nu) {
            return Err(GridError::DimensionMismatch(
                "dual lives on a different grid".into(),
            ));
        }
    }
    Ok(exec::det_mean(nu.len(), |i| {
        let mut p = nu.at_flat(i) - 1.0;
        for d in duals {
            p *= d.at_flat(i);
        }
        p
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::norms::avg_box_norm;
    use crate::polysys::{IntPoly, PolyMap};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_grid(dim: usize, n: usize, seed: u64) -> GridFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = n.pow(dim as u32);
        let values: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
        GridFunction::from_values(dim, n, values).unwrap()
    }

    fn linear_spec(n_params: usize, h: u64, m: usize, s: usize) -> AvgBoxSpec {
        let maps: Vec<PolyMap> = (0..s)
            .map(|j| {
                PolyMap::new(vec![IntPoly::from_univariate(
                    n_params,
                    j % n_params,
                    &[0, (j + 1) as i64],
                )])
                .unwrap()
            })
            .collect();
        AvgBoxSpec::new(maps, h, m).unwrap()
    }

    #[test]
    fn all_ones_family_gives_constant_one() {
        let one = GridFunction::constant(1, 17, 1.0).unwrap();
        let spec = linear_spec(1, 3, 3, 2);
        let fam = CubeFamily::uniform(2, &one);
        let d = dual_function(&spec, &fam, EvalOptions::default()).unwrap();
        for &v in d.values() {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dual_is_bounded_by_family_bound() {
        let f = random_grid(1, 23, 3);
        let spec = linear_spec(1, 4, 3, 2);
        let fam = CubeFamily::uniform(2, &f);
        let d = dual_function(&spec, &fam, EvalOptions::default()).unwrap();
        assert!(d.sup_abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn pairing_identity_matches_norm_power() {
        for seed in [1u64, 7, 42] {
            let f = random_grid(1, 19, seed);
            let spec = linear_spec(1, 5, 3, 2);
            let fam = CubeFamily::uniform(2, &f);
            let d = dual_function(&spec, &fam, EvalOptions::default()).unwrap();
            let pairing = f.inner(&d).unwrap();
            let norm = avg_box_norm(&f, &spec, EvalOptions::default(), true).unwrap();
            let rel = (pairing - norm.mean_pow).abs() / norm.mean_pow.abs().max(1e-30);
            assert!(rel < 1e-10, "seed {}: {} vs {}", seed, pairing, norm.mean_pow);
        }
    }

    #[test]
    fn incomplete_family_is_rejected() {
        let spec = linear_spec(1, 3, 3, 2);
        let mut fam = CubeFamily::new(2);
        fam.set(1, GridFunction::constant(1, 17, 1.0).unwrap());
        assert!(matches!(
            dual_function(&spec, &fam, EvalOptions::default()),
            Err(GridError::IncompleteFamily { .. })
        ));
    }

    #[test]
    fn orthogonality_trivial_cases() {
        let one = GridFunction::constant(1, 50, 1.0).unwrap();
        let d = random_grid(1, 50, 9);
        assert_eq!(orthogonality_check(&one, &[&d]).unwrap(), 0.0);
        // Empty dual list: mean(nu) - 1.
        let nu = GridFunction::constant(1, 50, 1.25).unwrap();
        assert!((orthogonality_check(&nu, &[]).unwrap() - 0.25).abs() < 1e-12);
    }
}
