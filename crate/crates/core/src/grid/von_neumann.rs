//! Empirical comparison of a configuration average against the averaged
//! box norms certified by linearization runs.
//!
//! The inequality this probes holds only up to an error vanishing with
//! the range, so the probe reports the pair (average, smallest norm term)
//! without asserting an ordering.

use crate::polysys::{json, LinearizationCertificate};

use super::function::GridFunction;
use super::norms::{avg_box_norm, lambda_average, AvgBoxSpec, EvalOptions};
use super::GridError;

/// One certificate's contribution to the probe.
#[derive(Clone, Debug)]
pub struct ProbeTerm {
    /// Distinguished node of the certificate.
    pub node: usize,
    pub label: String,
    /// Exponent `S` recorded by the run.
    pub exponent: u32,
    /// `avg_box_norm(f_node, Q^node)^(2^-S)`.
    pub norm_term: f64,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub lambda_abs: f64,
    pub min_norm_term: f64,
    pub terms: Vec<ProbeTerm>,
}

/// Checks that a certificate was produced from the given configuration by
/// re-encoding both initial systems.
fn certificate_matches(
    cert: &LinearizationCertificate,
    polys: &[Vec<i64>],
    directions: &[Vec<i64>],
) -> bool {
    let init = &cert.initial;
    if init.directions() != directions || init.nodes().len() != polys.len() {
        return false;
    }
    // Node order must mirror the configuration order; compare encodings.
    let dto = json::system_to_dto(init);
    for (node, coeffs) in dto.nodes.iter().zip(polys) {
        let mut expect: Vec<(usize, u32, i64)> = Vec::new();
        // Node j holds P_j(y) on direction j (zero polynomials encode as
        // empty component lists).
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                expect.push((node.id, k as u32, c));
            }
        }
        let mut got: Vec<(usize, u32, i64)> = Vec::new();
        for comp in &node.components {
            if comp.direction != node.id + 1 {
                return false;
            }
            for term in &comp.terms {
                let deg = term.exponents.get("y").copied().unwrap_or(0);
                if term.exponents.len() > usize::from(deg > 0) {
                    return false;
                }
                match term.coeff.parse::<i64>() {
                    Ok(c) => got.push((node.id, deg, c)),
                    Err(_) => return false,
                }
            }
        }
        expect.sort_unstable();
        got.sort_unstable();
        if expect != got {
            return false;
        }
    }
    true
}

/// Evaluates the configuration average with the supplied weights and the
/// certified norm term for each provided certificate (certificates are
/// keyed by their distinguished node's index into `fns`).
pub fn von_neumann_probe(
    polys: &[Vec<i64>],
    directions: &[Vec<i64>],
    fns: &[&GridFunction],
    certs: &[&LinearizationCertificate],
    h_range: u64,
    side_m: usize,
    opts: EvalOptions,
) -> Result<ProbeReport, GridError> {
    if certs.is_empty() {
        return Err(GridError::CertificateMismatch(
            "no certificates provided".into(),
        ));
    }
    let lambda = lambda_average(polys, directions, fns, side_m, false)?;
    let mut terms = Vec::with_capacity(certs.len());
    for cert in certs {
        if !certificate_matches(cert, polys, directions) {
            return Err(GridError::CertificateMismatch(format!(
                "certificate for node {} was not produced from this configuration",
                cert.distinguished
            )));
        }
        let maps = cert.box_directions();
        if maps.is_empty() {
            return Err(GridError::CertificateMismatch(
                "certificate extracts no box directions".into(),
            ));
        }
        let node = cert.distinguished;
        let f = fns.get(node).ok_or_else(|| {
            GridError::CertificateMismatch(format!(
                "certificate points at node {} but only {} weights given",
                node,
                fns.len()
            ))
        })?;
        let spec = AvgBoxSpec::new(maps, h_range, side_m)?;
        let norm = avg_box_norm(f, &spec, opts, false)?;
        let term = norm.value.powf(2f64.powi(-(cert.exponent as i32)));
        terms.push(ProbeTerm {
            node,
            label: cert
                .initial
                .node(node)
                .map(|n| n.label.clone())
                .unwrap_or_default(),
            exponent: cert.exponent,
            norm_term: term,
        });
    }
    let min_norm_term = terms.iter().map(|t| t.norm_term).fold(f64::INFINITY, f64::min);
    Ok(ProbeReport {
        lambda_abs: lambda.abs(),
        min_norm_term,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::{pet_linearize, IntPoly, Node, ShiftPolySystem, VecPoly, DEFAULT_STEP_CAP};

    /// Builds the shift system of a configuration `P_j(y) v_j` with node
    /// ids in configuration order.
    pub(crate) fn config_system(
        dim: usize,
        polys: &[Vec<i64>],
        dirs: &[Vec<i64>],
        distinguished: usize,
    ) -> ShiftPolySystem {
        let l = dirs.len();
        let nodes: Vec<Node> = polys
            .iter()
            .enumerate()
            .map(|(j, coeffs)| {
                let mut comps = vec![IntPoly::zero(1); l];
                comps[j] = IntPoly::from_univariate(1, 0, coeffs);
                Node {
                    id: j,
                    poly: VecPoly::new(comps).unwrap(),
                    active: true,
                    label: format!("f{}", j),
                    origin: format!("n{}", j),
                }
            })
            .collect();
        ShiftPolySystem::new(dim, dirs.to_vec(), vec![], nodes, Some(distinguished)).unwrap()
    }

    #[test]
    fn all_ones_probe_is_unit() {
        let polys = vec![vec![0], vec![0, 1]];
        let dirs = vec![vec![1, 1], vec![1, 2]];
        let sys = config_system(2, &polys, &dirs, 0);
        let cert = pet_linearize(&sys, DEFAULT_STEP_CAP).unwrap();
        let one = GridFunction::constant(2, 13, 1.0).unwrap();
        let fns = vec![&one, &one];
        let report = von_neumann_probe(
            &polys,
            &dirs,
            &fns,
            &[&cert],
            4,
            4,
            EvalOptions::default(),
        )
        .unwrap();
        assert!((report.lambda_abs - 1.0).abs() < 1e-12);
        assert!((report.min_norm_term - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_weight_zeroes_both_sides() {
        let polys = vec![vec![0], vec![0, 1]];
        let dirs = vec![vec![1, 1], vec![1, 2]];
        let sys = config_system(2, &polys, &dirs, 1);
        let cert = pet_linearize(&sys, DEFAULT_STEP_CAP).unwrap();
        let one = GridFunction::constant(2, 13, 1.0).unwrap();
        let zero = GridFunction::zeros(2, 13).unwrap();
        let fns = vec![&one, &zero];
        let report = von_neumann_probe(
            &polys,
            &dirs,
            &fns,
            &[&cert],
            4,
            4,
            EvalOptions::default(),
        )
        .unwrap();
        assert_eq!(report.lambda_abs, 0.0);
        assert!(report.min_norm_term.abs() < 1e-12);
    }

    #[test]
    fn mismatched_certificate_is_rejected() {
        let polys = vec![vec![0], vec![0, 1]];
        let dirs = vec![vec![1, 1], vec![1, 2]];
        let sys = config_system(2, &polys, &dirs, 0);
        let cert = pet_linearize(&sys, DEFAULT_STEP_CAP).unwrap();
        let other_polys = vec![vec![0], vec![0, 0, 1]];
        let one = GridFunction::constant(2, 13, 1.0).unwrap();
        let fns = vec![&one, &one];
        assert!(matches!(
            von_neumann_probe(
                &other_polys,
                &dirs,
                &fns,
                &[&cert],
                4,
                4,
                EvalOptions::default()
            ),
            Err(GridError::CertificateMismatch(_))
        ));
    }
}
