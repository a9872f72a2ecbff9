//! Cutoff functions for the divisor-sum weight.
//!
//! A cutoff is an even function supported on (-1, 1) with
//! `int_0^1 chi'(t)^2 dt = 1` and `chi(0) >= 1/2`. The default is the
//! normalized cosine arch; a compactly supported bump is available for
//! experiments that want infinite smoothness away from the normalization
//! constant's quadrature.

use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Which cutoff to use; serialized into context dumps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ChiKind {
    #[default]
    Cosine,
    Bump,
}

impl std::str::FromStr for ChiKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cosine" => Ok(ChiKind::Cosine),
            "bump" => Ok(ChiKind::Bump),
            other => Err(format!("unknown cutoff '{}', expected cosine|bump", other)),
        }
    }
}

/// `sqrt(8)/pi`, the cosine normalization: with
/// `chi(t) = c cos(pi t / 2)` one gets `int_0^1 chi'^2 = c^2 pi^2 / 8`,
/// so `c = 2 sqrt(2) / pi` makes the integral exactly one.
pub const COSINE_SCALE: f64 = 0.900_316_316_157_106_2;

fn bump_scale() -> f64 {
    static SCALE: OnceLock<f64> = OnceLock::new();
    *SCALE.get_or_init(|| {
        // Normalize g(t) = exp(-1/(1-t^2)) so the derivative energy on
        // [0,1] is one; Simpson quadrature, the integrand vanishes to all
        // orders at t = 1.
        let n = 200_000usize;
        let h = 1.0 / n as f64;
        let f = |t: f64| {
            if t <= 0.0 || t >= 1.0 {
                return 0.0;
            }
            let u = 1.0 - t * t;
            let g = (-1.0 / u).exp();
            let d = g * (-2.0 * t / (u * u));
            d * d
        };
        let mut acc = 0.0;
        for i in 0..n {
            let a = i as f64 * h;
            acc += (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h)) * h / 6.0;
        }
        1.0 / acc.sqrt()
    })
}

/// Evaluates the cutoff at `t`; even, vanishes outside (-1, 1).
pub fn chi(kind: ChiKind, t: f64) -> f64 {
    let a = t.abs();
    if a >= 1.0 {
        return 0.0;
    }
    match kind {
        ChiKind::Cosine => COSINE_SCALE * (std::f64::consts::FRAC_PI_2 * a).cos(),
        ChiKind::Bump => bump_scale() * (-1.0 / (1.0 - a * a)).exp(),
    }
}

/// Derivative of the cutoff, for quadrature checks. At the support edge
/// the one-sided (interior) branch is returned, which is what quadrature
/// over `[0, 1]` wants; the bump's limit there is zero anyway.
pub fn chi_deriv(kind: ChiKind, t: f64) -> f64 {
    let a = t.abs();
    if a > 1.0 {
        return 0.0;
    }
    let sign = if t < 0.0 { -1.0 } else { 1.0 };
    sign * match kind {
        ChiKind::Cosine => {
            -COSINE_SCALE * std::f64::consts::FRAC_PI_2 * (std::f64::consts::FRAC_PI_2 * a).sin()
        }
        ChiKind::Bump => {
            if a >= 1.0 {
                0.0
            } else {
                let u = 1.0 - a * a;
                bump_scale() * (-1.0 / u).exp() * (-2.0 * a / (u * u))
            }
        }
    }
}
