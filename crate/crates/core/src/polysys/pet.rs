//! The van der Corput linearization engine.
//!
//! The run lowers a polynomial system until every active node is affine
//! in `y` relative to the distinguished node, alternating two legal step
//! shapes:
//!
//! * **Reduce** (the workhorse): double every `y`-dependent node with
//!   `y -> y + h^1` and `y -> y + h^2`, then subtract the pivot's
//!   *undoubled* polynomial `R_pivot(y)` from every node; `y`-free nodes
//!   deactivate into majorant slots first. Subtracting the undoubled
//!   pivot erases the pivot's whole leading-term class: picking the pivot
//!   at the first nonzero cell of the absolute weight tally makes that
//!   tally strictly decrease with new classes appearing only at less
//!   significant positions, which bounds the run length.
//! * **Recenter**: translate the system by an active node of relative
//!   degree at least two, then double. Used when the distinguished node's
//!   frame degree drops below two, which is what keeps its two copies
//!   separated in `y` (and is required before the first reduce step).
//!   Its weight pair is the relative one: the tally with respect to the
//!   pivot strictly dominates the successor's tally with respect to the
//!   first copy of a node at its first nonzero cell.
//!
//! Both step shapes preserve general position: all pairwise differences
//! of the successor are plain doubling differences, so the doubling
//! preservation lemmas apply unchanged.

use serde::{Deserialize, Serialize};

use super::poly::{IntPoly, VecPoly};
use super::system::{vecpoly_to_map, Node, NodeKind, PolyMap, ShiftPolySystem};
use super::weight::{
    reduced_slot, weight_less, weight_matrix, weight_matrix_absolute, WeightMatrix,
};
use super::PolyError;

/// Default iteration guard for [`pet_linearize`]. Descent guarantees
/// termination; the cap only trips on malformed input or an
/// implementation bug.
pub const DEFAULT_STEP_CAP: usize = 10_000;

/// Full pairwise general-position revalidation is quadratic in the node
/// count; past this size the step relies on the doubling preservation
/// lemmas and the extraction-time projection checks instead.
const GP_RECHECK_LIMIT: usize = 96;

/// Which move a step performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// Translation of the whole system by one node's polynomial, no
    /// doubling. Free, and applied whenever it strictly lowers the
    /// absolute tally: a level whose members share their leading term
    /// collapses in one move instead of one van der Corput step per
    /// member.
    Collapse,
    Reduce,
    Recenter,
}

/// Record of a single step.
#[derive(Clone, Debug)]
pub struct PetStep {
    pub kind: StepKind,
    /// Pivot node (id in the pre-step system).
    pub chosen: usize,
    /// Node of the post-step system whose frame certifies descent: the
    /// pivot's first copy for reduce steps, the descent witness for
    /// recenter steps.
    pub produced: usize,
    /// For reduce steps the absolute active tallies before/after; for
    /// recenter steps the relative tallies (pre-step versus pivot,
    /// post-step versus the witness).
    pub weight_before: WeightMatrix,
    pub weight_after: WeightMatrix,
    /// Names of the two parameters introduced by the doubling.
    pub params_added: Vec<String>,
}

/// Direction and offset polynomials of one active node in the final
/// translated system: `R_alpha = b_alpha(h) * y + c_alpha(h)`.
#[derive(Clone, Debug)]
pub struct LinearPart {
    pub node: usize,
    pub label: String,
    /// Component-basis coefficient of `y`.
    pub b: VecPoly,
    /// Component-basis `y`-free offset.
    pub c: VecPoly,
    /// Coordinate form of `b`, ready for box-norm specifications.
    pub b_coords: PolyMap,
}

/// Full audit trail of a linearization run.
#[derive(Clone, Debug)]
pub struct LinearizationCertificate {
    pub initial: ShiftPolySystem,
    /// Final system, translated so the distinguished node is the zero map.
    pub final_system: ShiftPolySystem,
    pub distinguished: usize,
    /// Recenter pivot selection rule; recorded so alternate orders can be
    /// replayed.
    pub rule: SelectionRule,
    pub steps: Vec<PetStep>,
    pub linear: Vec<LinearPart>,
    /// Exponent bookkeeping: one squaring per step plus one per extracted
    /// linear node.
    pub exponent: u32,
}

impl LinearizationCertificate {
    /// The box directions this run certifies: the coordinate form of each
    /// extracted `b_alpha`.
    pub fn box_directions(&self) -> Vec<PolyMap> {
        self.linear.iter().map(|lp| lp.b_coords.clone()).collect()
    }

    /// Weight chain as (before, after) pairs in step order.
    pub fn weight_chain(&self) -> impl Iterator<Item = (&WeightMatrix, &WeightMatrix)> {
        self.steps.iter().map(|s| (&s.weight_before, &s.weight_after))
    }
}

fn active_nonlinear(system: &ShiftPolySystem, a0: usize) -> Result<Vec<usize>, PolyError> {
    let mut out = Vec::new();
    for n in system.active_nodes() {
        if n.id != a0 && system.node_kind(n.id, a0)? == NodeKind::Nonlinear {
            out.push(n.id);
        }
    }
    Ok(out)
}

/// How recenter steps choose their pivot among active nodes of relative
/// degree at least two. All rules are deterministic (ties go to the
/// lowest node id), so certificates replay exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionRule {
    /// One-step lookahead: simulate every candidate and keep the one
    /// whose successor has the fewest active nonlinear nodes, then the
    /// smallest relative tally.
    #[default]
    Lookahead,
    /// Smallest absolute map degree, then smallest relative tally.
    MinDegree,
    /// Smallest relative tally in the comparison order.
    MinWeight,
    /// Largest first-nonzero position of the relative tally.
    MaxFirstNonzeroPos,
}

/// One step with the default selection rule.
pub fn pet_step(system: &ShiftPolySystem) -> Result<(ShiftPolySystem, PetStep), PolyError> {
    pet_step_with_rule(system, SelectionRule::default())
}

/// One linearization step. Requires the system to be in general position
/// relative to its distinguished node and to contain an active node of
/// relative degree at least two.
pub fn pet_step_with_rule(
    system: &ShiftPolySystem,
    rule: SelectionRule,
) -> Result<(ShiftPolySystem, PetStep), PolyError> {
    let a0 = system.distinguished().ok_or(PolyError::MissingDistinguished)?;
    if !system.node(a0)?.active {
        return Err(PolyError::InactiveDistinguished(a0));
    }
    if system.nodes().len() <= GP_RECHECK_LIMIT {
        if let Err(w) = system.general_position_wrt(a0)? {
            return Err(PolyError::GeneralPositionViolated(w.to_string()));
        }
    }
    let candidates = active_nonlinear(system, a0)?;
    if candidates.is_empty() {
        return Err(PolyError::NoNonlinearNode);
    }

    // A free translation is preferred whenever one helps; relative
    // structure is translation invariant, so this only reorganizes the
    // frame the reduce move works in.
    if let Some(step) = collapse_step(system, a0)? {
        return Ok(step);
    }
    // The reduce move needs the distinguished node at frame degree two or
    // more, otherwise its two copies would land at the same y-line.
    let d0 = system
        .map_deg_y(&system.node(a0)?.poly)
        .unwrap_or(0);
    if d0 >= 2 {
        if let Some(pivot) = reduce_pivot(system, a0)? {
            return reduce_step(system, a0, pivot);
        }
    }
    recenter_step(system, a0, &candidates, rule)
}

/// Free translation by an active node polynomial that strictly lowers
/// the absolute active tally; `None` when none does. Candidates are
/// scanned from the least significant tally cell upward and the first
/// improvement wins. The move also retires every `y`-free active node it
/// leaves behind (other than the distinguished one) into a majorant
/// slot, so cleared classes cannot climb back into the tally under later
/// translations.
fn collapse_step(
    system: &ShiftPolySystem,
    a0: usize,
) -> Result<Option<(ShiftPolySystem, PetStep)>, PolyError> {
    let before = weight_matrix_absolute(system, true)?;
    if before.is_zero() {
        return Ok(None);
    }
    let mut candidates: Vec<(usize, u32, usize)> = system
        .active_nodes()
        .filter_map(|n| reduced_slot(n.poly.components()).map(|(j, k, _)| (j, k, n.id)))
        .collect();
    candidates.sort_unstable();
    for (_, _, pivot) in candidates {
        let mut next = system.shift(pivot)?;
        let tally = weight_matrix_absolute(&next, true)?;
        let cols = tally.cols().max(before.cols());
        if !weight_less(&tally.pad_cols(cols), &before.pad_cols(cols))? {
            continue;
        }
        next.retire_flat_nodes(a0);
        return Ok(Some((
            next,
            PetStep {
                kind: StepKind::Collapse,
                chosen: pivot,
                produced: pivot,
                weight_before: before.pad_cols(cols),
                weight_after: tally.pad_cols(cols),
                params_added: Vec::new(),
            },
        )));
    }
    Ok(None)
}

/// First nonzero cell of the absolute active tally, restricted to pivots
/// that keep the distinguished node at frame degree two or more after the
/// move. `None` when no member of the first cell passes, in which case
/// the caller falls back to a recenter step.
fn reduce_pivot(system: &ShiftPolySystem, a0: usize) -> Result<Option<usize>, PolyError> {
    let tally = weight_matrix_absolute(system, true)?;
    let (j0, k0) = match tally.first_nonzero() {
        Some(cell) => cell,
        None => return Ok(None),
    };
    let nvars = 1 + system.num_params();
    let ext = nvars + 2;
    let y_plus_h1 = IntPoly::var(ext, 0).add(&IntPoly::var(ext, ext - 2));
    let a0_poly = system.node(a0)?.poly.clone();
    for n in system.active_nodes() {
        match reduced_slot(n.poly.components()) {
            Some((j, k, _)) if j == j0 && k as usize == k0 => {}
            _ => continue,
        }
        // Successor distinguished polynomial: R_a0(y + h^1) - R_pivot(y).
        let succ = a0_poly
            .extend_vars(ext)
            .substitute(0, &y_plus_h1)
            .sub(&n.poly.extend_vars(ext));
        if system.map_deg_y(&succ).unwrap_or(0) >= 2 {
            return Ok(Some(n.id));
        }
    }
    Ok(None)
}

/// Double every `y`-dependent node and subtract the pivot's undoubled
/// polynomial; `y`-free nodes are kept single and deactivated.
fn reduce_step(
    system: &ShiftPolySystem,
    a0: usize,
    pivot: usize,
) -> Result<(ShiftPolySystem, PetStep), PolyError> {
    let weight_before = weight_matrix_absolute(system, true)?;
    let t = system.num_params();
    let mut params = system.params().to_vec();
    params.push(fresh_param(&params, t + 1));
    params.push(fresh_param(&params, t + 2));
    let ext = 1 + params.len();
    let y = IntPoly::var(ext, 0);
    let subs = [
        y.add(&IntPoly::var(ext, ext - 2)),
        y.add(&IntPoly::var(ext, ext - 1)),
    ];
    let pivot_poly = system.node(pivot)?.poly.extend_vars(ext);

    let mut kept = Vec::new();
    let mut copies: [Vec<(usize, Node)>; 2] = [Vec::new(), Vec::new()];
    for n in system.nodes() {
        let extended = n.poly.extend_vars(ext);
        if system.map_deg_y(&n.poly).unwrap_or(0) == 0 {
            kept.push(Node {
                id: 0,
                poly: extended.sub(&pivot_poly),
                active: false,
                label: if n.active { "nu".into() } else { n.label.clone() },
                origin: format!("{}/kept", n.origin),
            });
        } else {
            for (side, bucket) in copies.iter_mut().enumerate() {
                bucket.push((
                    n.id,
                    Node {
                        id: 0,
                        poly: extended.substitute(0, &subs[side]).sub(&pivot_poly),
                        active: n.active,
                        label: n.label.clone(),
                        origin: format!("{}/c{}", n.origin, side + 1),
                    },
                ));
            }
        }
    }
    let mut nodes = Vec::with_capacity(kept.len() + 2 * copies[0].len());
    for mut n in kept {
        n.id = nodes.len();
        nodes.push(n);
    }
    let mut copy1_of = std::collections::HashMap::new();
    let [c1, c2] = copies;
    for (old, mut n) in c1 {
        n.id = nodes.len();
        copy1_of.insert(old, n.id);
        nodes.push(n);
    }
    for (_, mut n) in c2 {
        n.id = nodes.len();
        nodes.push(n);
    }
    let new_a0 = *copy1_of
        .get(&a0)
        .ok_or_else(|| PolyError::GeneralPositionViolated("distinguished node lost".into()))?;
    let produced = *copy1_of
        .get(&pivot)
        .ok_or_else(|| PolyError::GeneralPositionViolated("pivot copy lost".into()))?;
    let next = ShiftPolySystem::new(
        system.dim(),
        system.directions().to_vec(),
        params.clone(),
        nodes,
        Some(new_a0),
    )?;
    if next.nodes().len() <= GP_RECHECK_LIMIT {
        if let Err(w) = next.general_position_wrt(new_a0)? {
            return Err(PolyError::GeneralPositionViolated(format!(
                "reduce step broke general position: {}",
                w
            )));
        }
    }
    let weight_after = weight_matrix_absolute(&next, true)?;
    let cols = weight_before.cols().max(weight_after.cols());
    let weight_before = weight_before.pad_cols(cols);
    let weight_after = weight_after.pad_cols(cols);
    if !weight_less(&weight_after, &weight_before)? {
        return Err(PolyError::GeneralPositionViolated(format!(
            "absolute tally did not decrease at reduce step (pivot {})",
            pivot
        )));
    }
    Ok((
        next,
        PetStep {
            kind: StepKind::Reduce,
            chosen: pivot,
            produced,
            weight_before,
            weight_after,
            params_added: params[t..].to_vec(),
        },
    ))
}

/// Translate by a relative-degree-two-or-more pivot, then double.
fn recenter_step(
    system: &ShiftPolySystem,
    _a0: usize,
    candidates: &[usize],
    rule: SelectionRule,
) -> Result<(ShiftPolySystem, PetStep), PolyError> {
    let mut best: Option<(usize, WeightMatrix)> = None;
    let mut best_key: Option<(u32, (usize, usize), (usize, usize))> = None;
    for &cand in candidates {
        let w = weight_matrix(system, cand, true)?;
        let pos = w.first_nonzero().ok_or_else(|| {
            PolyError::GeneralPositionViolated(format!(
                "candidate {} has an all-zero active tally",
                cand
            ))
        })?;
        let deg = system.map_deg_y(&system.node(cand)?.poly).unwrap_or(0);
        let look = if rule == SelectionRule::Lookahead {
            let next = system.shift(cand)?.double();
            let next_a0 = next.distinguished().ok_or(PolyError::MissingDistinguished)?;
            let nonlinear = active_nonlinear(&next, next_a0)?.len();
            (nonlinear, next.active_nodes().count())
        } else {
            (0, 0)
        };
        let better = match (&best, &best_key) {
            (None, _) => true,
            (Some((id, bw)), Some((bdeg, bpos, blook))) => match rule {
                SelectionRule::Lookahead => {
                    look < *blook
                        || (look == *blook && tie_by_weight(&w, bw, cand, *id)?)
                }
                SelectionRule::MinDegree => {
                    deg < *bdeg || (deg == *bdeg && tie_by_weight(&w, bw, cand, *id)?)
                }
                SelectionRule::MinWeight => tie_by_weight(&w, bw, cand, *id)?,
                SelectionRule::MaxFirstNonzeroPos => {
                    pos > *bpos || (pos == *bpos && cand < *id)
                }
            },
            _ => unreachable!(),
        };
        if better {
            best_key = Some((deg, pos, look));
            best = Some((cand, w));
        }
    }
    let (a_star, weight_before) = best.expect("nonempty candidates");
    let (j0, k0) = weight_before.first_nonzero().expect("nonzero tally");

    let shifted = system.shift(a_star)?;
    let doubled = shifted.double();
    let new_a0 = doubled.distinguished().ok_or(PolyError::MissingDistinguished)?;
    if doubled.nodes().len() <= GP_RECHECK_LIMIT {
        if let Err(w) = doubled.general_position_wrt(new_a0)? {
            return Err(PolyError::GeneralPositionViolated(format!(
                "doubling broke general position: {}",
                w
            )));
        }
    }

    // Descent witness: first copy of the lowest-id active node whose
    // reduced slot sits at the first nonzero cell of the relative tally.
    // Subtracting it erases exactly one class there while touching only
    // less significant positions.
    let mut produced = None;
    for n in shifted.active_nodes() {
        if let Some((j, k, _)) = reduced_slot(n.poly.components()) {
            if j == j0 && k as usize == k0 {
                if let Some(c1) = shifted.copy1_id(&doubled, n.id) {
                    produced = Some(c1);
                    break;
                }
            }
        }
    }
    // Degenerate direction bases can deactivate every first-cell node;
    // scan for any node that still certifies descent.
    let produced = match produced {
        Some(p) => Some(p),
        None => {
            let mut found = None;
            for n in doubled.active_nodes() {
                let w = weight_matrix(&doubled, n.id, true)?;
                let cols = w.cols().max(weight_before.cols());
                if weight_less(&w.pad_cols(cols), &weight_before.pad_cols(cols))? {
                    found = Some(n.id);
                    break;
                }
            }
            found
        }
    };
    let produced = produced.ok_or_else(|| {
        PolyError::GeneralPositionViolated("no descent witness after doubling".into())
    })?;

    let w_after = weight_matrix(&doubled, produced, true)?;
    let cols = w_after.cols().max(weight_before.cols());
    let weight_before = weight_before.pad_cols(cols);
    let weight_after = w_after.pad_cols(cols);
    if !weight_less(&weight_after, &weight_before)? {
        return Err(PolyError::GeneralPositionViolated(format!(
            "relative tally did not decrease at recenter step (pivot {})",
            a_star
        )));
    }
    let t_new = doubled.num_params();
    let params_added = doubled.params()[t_new - 2..].to_vec();
    Ok((
        doubled,
        PetStep {
            kind: StepKind::Recenter,
            chosen: a_star,
            produced,
            weight_before,
            weight_after,
            params_added,
        },
    ))
}

fn tie_by_weight(
    w: &WeightMatrix,
    best: &WeightMatrix,
    cand: usize,
    best_id: usize,
) -> Result<bool, PolyError> {
    let cols = w.cols().max(best.cols());
    let (a, b) = (w.pad_cols(cols), best.pad_cols(cols));
    Ok(weight_less(&a, &b)? || (!weight_less(&b, &a)? && cand < best_id))
}

fn fresh_param(existing: &[String], hint: usize) -> String {
    let mut k = hint;
    loop {
        let name = format!("h{}", k);
        if !existing.contains(&name) {
            return name;
        }
        k += 1;
    }
}

/// Runs steps until every active node is affine in `y` relative to the
/// distinguished node, then extracts the direction polynomials
/// `b_alpha(h)` and offsets `c_alpha(h)` from the system translated to
/// put the distinguished node at the origin. Every coordinate projection
/// of every `b_alpha` is checked to be a nonzero polynomial.
pub fn pet_linearize(
    system: &ShiftPolySystem,
    cap: usize,
) -> Result<LinearizationCertificate, PolyError> {
    pet_linearize_with_rule(system, cap, SelectionRule::default())
}

/// [`pet_linearize`] with an explicit recenter selection rule.
pub fn pet_linearize_with_rule(
    system: &ShiftPolySystem,
    cap: usize,
    rule: SelectionRule,
) -> Result<LinearizationCertificate, PolyError> {
    let a0 = system.distinguished().ok_or(PolyError::MissingDistinguished)?;
    if !system.node(a0)?.active {
        return Err(PolyError::InactiveDistinguished(a0));
    }
    for n in system.nodes() {
        if n.label.is_empty() {
            return Err(PolyError::MissingLabel(n.id));
        }
    }
    if let Err(w) = system.general_position_wrt(a0)? {
        return Err(PolyError::GeneralPositionViolated(w.to_string()));
    }

    let mut current = system.clone();
    let mut steps = Vec::new();
    loop {
        let a0 = current.distinguished().expect("distinguished maintained");
        if active_nonlinear(&current, a0)?.is_empty() {
            break;
        }
        if steps.len() >= cap {
            return Err(PolyError::IterationCapExceeded(cap));
        }
        let (next, rec) = pet_step_with_rule(&current, rule)?;
        steps.push(rec);
        current = next;
    }

    let a0 = current.distinguished().expect("distinguished maintained");
    let final_system = current.shift(a0)?;
    let mut linear = Vec::new();
    for n in final_system.active_nodes() {
        if n.id == a0 {
            continue;
        }
        match final_system.node_kind(n.id, a0)? {
            NodeKind::Linear => {}
            k => {
                return Err(PolyError::NonlinearResidual {
                    node: n.id,
                    detail: format!("{:?}", k),
                })
            }
        }
        let mut b_comps = Vec::new();
        let mut c_comps = Vec::new();
        for comp in n.poly.components() {
            if comp.deg_var(0) > 1 {
                return Err(PolyError::NonlinearResidual {
                    node: n.id,
                    detail: "component carries y-degree above one".into(),
                });
            }
            b_comps.push(comp.coeff_of_power(0, 1));
            c_comps.push(comp.coeff_of_power(0, 0));
        }
        let b = VecPoly::new(b_comps)?;
        let c = VecPoly::new(c_comps)?;
        let b_coords = vecpoly_to_map(&b, final_system.directions())?;
        for i in 0..b_coords.dim() {
            if b_coords.coord(i).is_zero() {
                return Err(PolyError::VanishingProjection {
                    node: n.id,
                    coord: i + 1,
                });
            }
        }
        linear.push(LinearPart {
            node: n.id,
            label: n.label.clone(),
            b,
            c,
            b_coords,
        });
    }

    let exponent = (steps.len() + linear.len()) as u32;
    Ok(LinearizationCertificate {
        initial: system.clone(),
        final_system,
        distinguished: a0,
        rule,
        steps,
        linear,
        exponent,
    })
}

/// Serializable summary of a certificate's weight chain, used by the
/// command-line trace output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepSummary {
    pub kind: StepKind,
    pub chosen: usize,
    pub produced: usize,
    pub weight_before: Vec<Vec<u64>>,
    pub weight_after: Vec<Vec<u64>>,
    pub params_added: Vec<String>,
}

impl From<&PetStep> for StepSummary {
    fn from(s: &PetStep) -> Self {
        StepSummary {
            kind: s.kind,
            chosen: s.chosen,
            produced: s.produced,
            weight_before: s.weight_before.to_vecs(),
            weight_after: s.weight_after.to_vecs(),
            params_added: s.params_added.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(id: usize, poly: VecPoly, label: &str) -> Node {
        Node {
            id,
            poly,
            active: true,
            label: label.to_string(),
            origin: format!("n{}", id),
        }
    }

    /// d=2, v1=(1,1), v2=(1,2), nodes {0, y v1, y^2 v2}, distinguished f2.
    fn example() -> ShiftPolySystem {
        let dirs = vec![vec![1, 1], vec![1, 2]];
        ShiftPolySystem::new(
            2,
            dirs,
            vec![],
            vec![
                node(0, VecPoly::zero(2, 1), "f0"),
                node(
                    1,
                    VecPoly::new(vec![
                        IntPoly::from_univariate(1, 0, &[0, 1]),
                        IntPoly::zero(1),
                    ])
                    .unwrap(),
                    "f1",
                ),
                node(
                    2,
                    VecPoly::new(vec![
                        IntPoly::zero(1),
                        IntPoly::from_univariate(1, 0, &[0, 0, 1]),
                    ])
                    .unwrap(),
                    "f2",
                ),
            ],
            Some(2),
        )
        .unwrap()
    }

    fn scalar_sys(polys: &[&[i64]], dist: usize) -> ShiftPolySystem {
        let nodes: Vec<Node> = polys
            .iter()
            .enumerate()
            .map(|(id, c)| node(id, VecPoly::new(vec![IntPoly::from_univariate(1, 0, c)]).unwrap(), &format!("f{}", id)))
            .collect();
        ShiftPolySystem::new(1, vec![vec![1]], vec![], nodes, Some(dist)).unwrap()
    }

    #[test]
    fn example_linearizes_shallow() {
        let cert = pet_linearize(&example(), DEFAULT_STEP_CAP).unwrap();
        assert!(cert.steps.len() <= 3, "took {} steps", cert.steps.len());
        // All extracted parts carry the target label and are y-free.
        assert!(!cert.linear.is_empty());
        for lp in &cert.linear {
            assert_eq!(lp.label, "f2");
            assert_eq!(lp.b.component_deg_y(), 0);
            for i in 0..lp.b_coords.dim() {
                assert!(!lp.b_coords.coord(i).is_zero());
            }
        }
        // Parameter-only majorant slots appear, mirroring the shifted
        // weight pair the worked example displays.
        let h_only_nus = cert
            .final_system
            .nodes()
            .iter()
            .filter(|n| {
                !n.active
                    && cert
                        .final_system
                        .map_deg_y(&n.poly)
                        .unwrap_or(0)
                        == 0
            })
            .count();
        assert!(h_only_nus >= 1);
        for (before, after) in cert.weight_chain() {
            assert!(weight_less(after, before).unwrap());
        }
        assert_eq!(
            cert.exponent,
            (cert.steps.len() + cert.linear.len()) as u32
        );
    }

    #[test]
    fn already_linear_system_extracts_unit_direction() {
        let dirs = vec![vec![1, 1]];
        let s = ShiftPolySystem::new(
            2,
            dirs,
            vec![],
            vec![
                node(0, VecPoly::zero(1, 1), "f0"),
                node(
                    1,
                    VecPoly::new(vec![IntPoly::from_univariate(1, 0, &[0, 1])]).unwrap(),
                    "f1",
                ),
            ],
            Some(0),
        )
        .unwrap();
        let cert = pet_linearize(&s, DEFAULT_STEP_CAP).unwrap();
        assert!(cert.steps.is_empty());
        assert_eq!(cert.linear.len(), 1);
        assert_eq!(*cert.linear[0].b.component(0), IntPoly::constant(1, 1));
    }

    #[test]
    fn step_on_linear_system_reports_no_nonlinear_node() {
        let s = scalar_sys(&[&[0], &[0, 1]], 0);
        assert!(matches!(pet_step(&s), Err(PolyError::NoNonlinearNode)));
    }

    #[test]
    fn mixed_degree_systems_terminate_quickly() {
        // Degree-mixed families are the stress case for run depth.
        for dist in 0..4 {
            let s = scalar_sys(&[&[0], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1]], dist);
            let cert = pet_linearize(&s, 64).unwrap();
            assert!(
                cert.steps.len() <= 20,
                "dist {} took {} steps",
                dist,
                cert.steps.len()
            );
            for (before, after) in cert.weight_chain() {
                assert!(weight_less(after, before).unwrap());
            }
        }
    }

    #[test]
    fn quadratic_pair_linearizes() {
        let s = scalar_sys(&[&[0], &[0, 0, 1], &[0, 0, 2]], 0);
        let cert = pet_linearize(&s, 64).unwrap();
        assert!(!cert.linear.is_empty());
        for lp in &cert.linear {
            assert!(!lp.b_coords.coord(0).is_zero());
        }
    }

    #[test]
    fn recenter_fires_first_on_flat_distinguished_node() {
        // Distinguished node at the origin: frame degree zero, so the
        // first step must recenter.
        let s = scalar_sys(&[&[0], &[0, 0, 1]], 0);
        let (_, rec) = pet_step(&s).unwrap();
        assert_eq!(rec.kind, StepKind::Recenter);
        assert!(weight_less(&rec.weight_after, &rec.weight_before).unwrap());
    }

    #[test]
    fn reduce_fires_on_centered_quadratic() {
        // Distinguished node already quadratic: the reduce move applies.
        let s = scalar_sys(&[&[0, 0, 1], &[0, 1], &[0, 0, 0, 1]], 0);
        let (next, rec) = pet_step(&s).unwrap();
        assert_eq!(rec.kind, StepKind::Reduce);
        assert!(weight_less(&rec.weight_after, &rec.weight_before).unwrap());
        // The pivot's first copy certifies the frame.
        assert!(next.node(rec.produced).unwrap().active);
    }
}
