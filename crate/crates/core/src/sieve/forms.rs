//! Numerical check of the shifted-product condition: averages of
//! `prod_j nu^(d)(x + Q_j(h))` over the parameter box and the grid should
//! sit near one for non-degenerate maps.

use crate::exec;
use crate::polysys::{is_nondegenerate, PolyMap};
use crate::sampling::param_vectors;

use super::nu::NuTable;
use super::SieveError;

/// Outcome of a shifted-product estimate.
#[derive(Clone, Debug)]
pub struct FormsStatistic {
    /// Mean of the inner grid average over the sampled parameter vectors.
    pub value: f64,
    /// Deviation from one.
    pub deviation: f64,
    /// Standard error over parameter samples (None when only one sample).
    pub std_error: Option<f64>,
    pub samples: u64,
    pub exhaustive: bool,
}

/// Options for [`polynomial_forms_check`].
#[derive(Clone, Copy, Debug)]
pub struct FormsOptions {
    /// Maximum number of term evaluations before switching to sampling.
    pub budget: u128,
    pub max_samples: u64,
    pub seed: u64,
}

impl Default for FormsOptions {
    fn default() -> Self {
        FormsOptions {
            budget: 1_000_000_000,
            max_samples: 512,
            seed: 0,
        }
    }
}

/// Estimates `E_{h in [H]^t} E_x prod_j nu^(d)(x + Q_j(h))`.
///
/// The inner grid average factorizes per axis because the weight is a
/// product, so each parameter vector costs `d * N * J` evaluations. The
/// parameter box is enumerated exhaustively when affordable, otherwise
/// sampled with a seeded generator.
pub fn polynomial_forms_check(
    nu: &NuTable,
    maps: &[PolyMap],
    h_range: u64,
    opts: FormsOptions,
) -> Result<FormsStatistic, SieveError> {
    if maps.is_empty() {
        return Err(SieveError::DegenerateSystem("empty map family".into()));
    }
    let d = nu.dim();
    for m in maps {
        if m.dim() != d {
            return Err(SieveError::DegenerateSystem(format!(
                "map has dimension {}, majorant has {}",
                m.dim(),
                d
            )));
        }
    }
    if maps.len() > 1 && !is_nondegenerate(maps) {
        return Err(SieveError::DegenerateSystem(
            "a pairwise difference has a constant coordinate".into(),
        ));
    }
    let t = maps[0].nparams();
    if h_range == 0 {
        return Err(SieveError::DegenerateSystem("empty parameter box".into()));
    }

    let per_h_cost = (d as u128) * (nu.n as u128) * (maps.len() as u128);
    let (h_vectors, exhaustive) = param_vectors(
        t,
        h_range,
        per_h_cost,
        opts.budget,
        opts.max_samples,
        opts.seed,
    );

    // Inner average for one parameter vector, factorized per axis.
    let n = nu.n as i64;
    let inner = |h: &Vec<i64>| -> Result<f64, SieveError> {
        let offsets: Vec<Vec<i64>> = maps
            .iter()
            .map(|m| m.eval_i64(h))
            .collect::<Result<_, _>>()
            .map_err(|e| SieveError::DegenerateSystem(e.to_string()))?;
        let mut prod = 1.0;
        for axis in 0..d {
            let table = nu.axis(axis);
            let deltas: Vec<usize> = offsets
                .iter()
                .map(|o| o[axis].rem_euclid(n) as usize)
                .collect();
            let nn = n as usize;
            let axis_mean = exec::det_mean(nn, |i| {
                deltas
                    .iter()
                    .map(|&dl| {
                        let j = i + dl;
                        table[if j >= nn { j - nn } else { j }]
                    })
                    .product()
            });
            prod *= axis_mean;
        }
        Ok(prod)
    };

    let values = h_vectors
        .iter()
        .map(inner)
        .collect::<Result<Vec<f64>, _>>()?;
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let std_error = if values.len() > 1 {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
        Some((var / k).sqrt())
    } else {
        None
    };
    Ok(FormsStatistic {
        value: mean,
        deviation: mean - 1.0,
        std_error,
        samples: values.len() as u64,
        exhaustive,
    })
}
