//! JSON encoding of polynomial systems, maps and certificates.
//!
//! Coefficients are decimal strings so arbitrary precision survives the
//! round trip. Exponents are keyed by variable name; absent keys mean
//! exponent zero. Zero components of a node may be omitted.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::pet::{LinearizationCertificate, StepSummary};
use super::poly::{IntPoly, VecPoly};
use super::system::{Node, PolyMap, ShiftPolySystem};
use super::PolyError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDto {
    pub exponents: BTreeMap<String, u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentDto {
    /// 1-based index into the direction list.
    pub direction: usize,
    pub terms: Vec<TermDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeDto {
    pub id: usize,
    pub components: Vec<ComponentDto>,
    pub active: bool,
    pub function: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemDto {
    pub dimension: usize,
    pub directions: Vec<Vec<i64>>,
    pub parameters: Vec<String>,
    pub nodes: Vec<NodeDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished: Option<usize>,
}

/// One scalar polynomial over named parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalarPolyDto {
    pub terms: Vec<TermDto>,
}

/// Coordinate map: one polynomial per axis over shared parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyMapDto {
    pub parameters: Vec<String>,
    pub coords: Vec<ScalarPolyDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearPartDto {
    pub node: usize,
    pub label: String,
    pub b: Vec<ComponentDto>,
    pub c: Vec<ComponentDto>,
    pub b_coords: PolyMapDto,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDto {
    pub initial: SystemDto,
    pub final_system: SystemDto,
    pub distinguished: usize,
    pub rule: super::SelectionRule,
    pub steps: Vec<StepSummary>,
    pub linear: Vec<LinearPartDto>,
    pub exponent: u32,
}

fn poly_to_terms(p: &IntPoly, names: &[String]) -> Vec<TermDto> {
    p.terms()
        .map(|(e, c)| {
            let mut m = BTreeMap::new();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m.insert(names[i].clone(), k);
                }
            }
            TermDto {
                exponents: m,
                coeff: c.to_string(),
            }
        })
        .collect()
}

fn poly_from_terms(terms: &[TermDto], names: &[String]) -> Result<IntPoly, PolyError> {
    let nvars = names.len();
    let idx: BTreeMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let mut raw = Vec::with_capacity(terms.len());
    for t in terms {
        let mut exps = vec![0u32; nvars];
        for (name, &k) in &t.exponents {
            let i = *idx
                .get(name.as_str())
                .ok_or_else(|| PolyError::Json(format!("unknown variable '{}'", name)))?;
            exps[i] = k;
        }
        let c = BigInt::from_str(&t.coeff)
            .map_err(|e| PolyError::Json(format!("bad coefficient '{}': {}", t.coeff, e)))?;
        raw.push((exps, c));
    }
    IntPoly::from_terms(nvars, raw)
}

fn vecpoly_to_components(p: &VecPoly, names: &[String]) -> Vec<ComponentDto> {
    p.components()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| ComponentDto {
            direction: j + 1,
            terms: poly_to_terms(c, names),
        })
        .collect()
}

fn vecpoly_from_components(
    comps: &[ComponentDto],
    l: usize,
    names: &[String],
) -> Result<VecPoly, PolyError> {
    let nvars = names.len();
    let mut parts = vec![IntPoly::zero(nvars); l];
    for c in comps {
        if c.direction == 0 || c.direction > l {
            return Err(PolyError::Json(format!(
                "component direction {} out of range 1..={}",
                c.direction, l
            )));
        }
        parts[c.direction - 1] = parts[c.direction - 1].add(&poly_from_terms(&c.terms, names)?);
    }
    VecPoly::new(parts)
}

pub fn system_to_dto(s: &ShiftPolySystem) -> SystemDto {
    let names = s.var_names();
    SystemDto {
        dimension: s.dim(),
        directions: s.directions().to_vec(),
        parameters: s.params().to_vec(),
        nodes: s
            .nodes()
            .iter()
            .map(|n| NodeDto {
                id: n.id,
                components: vecpoly_to_components(&n.poly, &names),
                active: n.active,
                function: n.label.clone(),
                origin: Some(n.origin.clone()),
            })
            .collect(),
        distinguished: s.distinguished(),
    }
}

pub fn system_from_dto(dto: &SystemDto) -> Result<ShiftPolySystem, PolyError> {
    let mut names = Vec::with_capacity(1 + dto.parameters.len());
    names.push("y".to_string());
    names.extend(dto.parameters.iter().cloned());
    let l = dto.directions.len();
    let nodes = dto
        .nodes
        .iter()
        .map(|n| {
            Ok(Node {
                id: n.id,
                poly: vecpoly_from_components(&n.components, l, &names)?,
                active: n.active,
                label: n.function.clone(),
                origin: n.origin.clone().unwrap_or_else(|| format!("n{}", n.id)),
            })
        })
        .collect::<Result<Vec<_>, PolyError>>()?;
    ShiftPolySystem::new(
        dto.dimension,
        dto.directions.clone(),
        dto.parameters.clone(),
        nodes,
        dto.distinguished,
    )
}

pub fn system_to_json(s: &ShiftPolySystem) -> String {
    serde_json::to_string_pretty(&system_to_dto(s)).expect("system serializes")
}

pub fn system_from_json(text: &str) -> Result<ShiftPolySystem, PolyError> {
    let dto: SystemDto =
        serde_json::from_str(text).map_err(|e| PolyError::Json(e.to_string()))?;
    system_from_dto(&dto)
}

pub fn polymap_to_dto(m: &PolyMap, params: &[String]) -> PolyMapDto {
    PolyMapDto {
        parameters: params.to_vec(),
        coords: m
            .coords()
            .iter()
            .map(|c| ScalarPolyDto {
                terms: poly_to_terms(c, params),
            })
            .collect(),
    }
}

pub fn polymap_from_dto(dto: &PolyMapDto) -> Result<PolyMap, PolyError> {
    let coords = dto
        .coords
        .iter()
        .map(|c| poly_from_terms(&c.terms, &dto.parameters))
        .collect::<Result<Vec<_>, _>>()?;
    PolyMap::new(coords)
}

pub fn certificate_to_dto(cert: &LinearizationCertificate) -> CertificateDto {
    let names = cert.final_system.var_names();
    let params = cert.final_system.params().to_vec();
    CertificateDto {
        initial: system_to_dto(&cert.initial),
        final_system: system_to_dto(&cert.final_system),
        distinguished: cert.distinguished,
        rule: cert.rule,
        steps: cert.steps.iter().map(StepSummary::from).collect(),
        linear: cert
            .linear
            .iter()
            .map(|lp| LinearPartDto {
                node: lp.node,
                label: lp.label.clone(),
                b: vecpoly_to_components(&lp.b, &names),
                c: vecpoly_to_components(&lp.c, &names),
                b_coords: polymap_to_dto(&lp.b_coords, &params),
            })
            .collect(),
        exponent: cert.exponent,
    }
}

pub fn certificate_to_json(cert: &LinearizationCertificate) -> String {
    serde_json::to_string_pretty(&certificate_to_dto(cert)).expect("certificate serializes")
}
