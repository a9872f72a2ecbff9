//! Shift-polynomial systems: families of vector-valued polynomials in a
//! primary variable `y` and parameters `h1..ht`, expressed in a basis of
//! direction vectors, together with the general-position predicates and
//! the structural moves (shift, doubling, concatenation) that drive the
//! linearization procedure.

use num_bigint::BigInt;

use super::poly::{IntPoly, VecPoly};
use super::PolyError;

/// Node metadata: a vector polynomial plus the function slot it shifts.
///
/// A node is inactive when its slot holds the majorant weight rather than
/// one of the target functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: usize,
    pub poly: VecPoly,
    pub active: bool,
    pub label: String,
    /// Human-readable lineage, e.g. `"n2/c1"` for copy 1 of node 2.
    pub origin: String,
}

/// Pair-and-coordinate witness for a failed general-position check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GpWitness {
    pub alpha: usize,
    pub beta: usize,
    /// 1-based coordinate axis whose projection degenerates.
    pub coord: usize,
}

impl std::fmt::Display for GpWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "nodes ({}, {}) degenerate on coordinate {}",
            self.alpha, self.beta, self.coord
        )
    }
}

/// A family `{ R_alpha(y, h) }` of vector polynomials over a shared
/// registry `(y, h1..ht)` and direction basis `v_1..v_l` in `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftPolySystem {
    dim: usize,
    directions: Vec<Vec<i64>>,
    params: Vec<String>,
    nodes: Vec<Node>,
    distinguished: Option<usize>,
}

impl ShiftPolySystem {
    pub fn new(
        dim: usize,
        directions: Vec<Vec<i64>>,
        params: Vec<String>,
        nodes: Vec<Node>,
        distinguished: Option<usize>,
    ) -> Result<Self, PolyError> {
        if directions.is_empty() || nodes.is_empty() {
            return Err(PolyError::EmptySystem);
        }
        if directions.iter().any(|v| v.len() != dim) {
            return Err(PolyError::DimensionMismatch {
                expected: dim,
                got: directions.iter().map(|v| v.len()).max().unwrap(),
            });
        }
        let nvars = 1 + params.len();
        let l = directions.len();
        {
            let mut names: Vec<&String> = params.iter().collect();
            names.sort();
            names.dedup();
            if names.len() != params.len() {
                return Err(PolyError::DuplicateParameter);
            }
        }
        let mut seen = std::collections::HashSet::new();
        for n in &nodes {
            if !seen.insert(n.id) {
                return Err(PolyError::DuplicateNode(n.id));
            }
            if n.poly.len() != l {
                return Err(PolyError::DimensionMismatch {
                    expected: l,
                    got: n.poly.len(),
                });
            }
            if n.poly.nvars() != nvars {
                return Err(PolyError::ArityMismatch {
                    expected: nvars,
                    got: n.poly.nvars(),
                });
            }
        }
        if let Some(d) = distinguished {
            if !seen.contains(&d) {
                return Err(PolyError::UnknownNode(d));
            }
        }
        Ok(ShiftPolySystem {
            dim,
            directions,
            params,
            nodes,
            distinguished,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn directions(&self) -> &[Vec<i64>] {
        &self.directions
    }

    pub fn num_directions(&self) -> usize {
        self.directions.len()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn num_params(&self) -> usize {
        self.params.len()
    }

    /// Registry variable names: `y` followed by the parameters.
    pub fn var_names(&self) -> Vec<String> {
        let mut v = Vec::with_capacity(1 + self.params.len());
        v.push("y".to_string());
        v.extend(self.params.iter().cloned());
        v
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> Result<&Node, PolyError> {
        self.nodes
            .iter()
            .find(|n| n.id == id)
            .ok_or(PolyError::UnknownNode(id))
    }

    pub fn distinguished(&self) -> Option<usize> {
        self.distinguished
    }

    pub fn set_distinguished(&mut self, id: Option<usize>) -> Result<(), PolyError> {
        if let Some(d) = id {
            self.node(d)?;
        }
        self.distinguished = id;
        Ok(())
    }

    pub fn active_nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(|n| n.active)
    }

    /// Coordinate projection of `R_alpha - R_beta` on axis `i` (0-based).
    fn diff_coordinate(&self, a: &Node, b: &Node, i: usize) -> IntPoly {
        a.poly
            .coordinate_poly(&self.directions, i)
            .sub(&b.poly.coordinate_poly(&self.directions, i))
    }

    /// Geometric `y`-degree of a vector polynomial: the largest `y`-degree
    /// over coordinate projections. Returns `None` when the map is
    /// identically zero.
    pub fn map_deg_y(&self, p: &VecPoly) -> Option<u32> {
        let mut best: Option<u32> = None;
        for i in 0..self.dim {
            let c = p.coordinate_poly(&self.directions, i);
            if !c.is_zero() {
                best = Some(best.map_or(c.deg_var(0), |b| b.max(c.deg_var(0))));
            }
        }
        best
    }

    /// `y`-degree of `R_a - R_b` as a map; `None` when identical.
    pub fn pair_deg_y(&self, a: usize, b: usize) -> Result<Option<u32>, PolyError> {
        let na = self.node(a)?;
        let nb = self.node(b)?;
        Ok(self.map_deg_y(&na.poly.sub(&nb.poly)))
    }

    /// Checks that every coordinate projection of every pairwise difference
    /// attains the full `y`-degree of the difference (and that degree-zero
    /// differences are nonzero on every axis). Returns the first violating
    /// `(alpha, beta, axis)` on failure.
    pub fn general_position(&self) -> Result<(), GpWitness> {
        for (ai, a) in self.nodes.iter().enumerate() {
            for b in self.nodes.iter().skip(ai + 1) {
                let coords: Vec<IntPoly> = (0..self.dim)
                    .map(|i| self.diff_coordinate(a, b, i))
                    .collect();
                let full = coords
                    .iter()
                    .filter(|c| !c.is_zero())
                    .map(|c| c.deg_var(0))
                    .max();
                let full = match full {
                    // Identical nodes: every projection agrees.
                    None => {
                        return Err(GpWitness {
                            alpha: a.id,
                            beta: b.id,
                            coord: 1,
                        })
                    }
                    Some(d) => d,
                };
                for (i, c) in coords.iter().enumerate() {
                    if c.is_zero() || c.deg_var(0) != full {
                        return Err(GpWitness {
                            alpha: a.id,
                            beta: b.id,
                            coord: i + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_general_position(&self) -> bool {
        self.general_position().is_ok()
    }

    /// Linearity of node `a` relative to `a0`: degree of the difference map.
    /// `Linear` means exactly one, `Nonlinear` at least two.
    pub fn node_kind(&self, a: usize, a0: usize) -> Result<NodeKind, PolyError> {
        let d = self.pair_deg_y(a, a0)?;
        Ok(match d {
            None => NodeKind::Coincident,
            Some(0) => NodeKind::ConstantOffset,
            Some(1) => NodeKind::Linear,
            Some(_) => NodeKind::Nonlinear,
        })
    }

    /// General position relative to a distinguished node: general position
    /// plus every pair of distinct linear nodes differing with `y`-degree
    /// exactly one.
    pub fn general_position_wrt(&self, a0: usize) -> Result<Result<(), GpWitness>, PolyError> {
        self.node(a0)?;
        if let Err(w) = self.general_position() {
            return Ok(Err(w));
        }
        let linear: Vec<usize> = self
            .nodes
            .iter()
            .filter(|n| {
                n.id != a0 && matches!(self.node_kind(n.id, a0), Ok(NodeKind::Linear))
            })
            .map(|n| n.id)
            .collect();
        for (i, &a) in linear.iter().enumerate() {
            for &b in linear.iter().skip(i + 1) {
                if self.pair_deg_y(a, b)? != Some(1) {
                    return Ok(Err(GpWitness {
                        alpha: a,
                        beta: b,
                        coord: 0,
                    }));
                }
            }
        }
        Ok(Ok(()))
    }

    pub fn is_general_position_wrt(&self, a0: usize) -> Result<bool, PolyError> {
        Ok(self.general_position_wrt(a0)?.is_ok())
    }

    /// Translates every node by `-R_{a_star}`; metadata preserved.
    pub fn shift(&self, a_star: usize) -> Result<ShiftPolySystem, PolyError> {
        let pivot = self.node(a_star)?.poly.clone();
        let mut out = self.clone();
        for n in &mut out.nodes {
            n.poly = n.poly.sub(&pivot);
        }
        Ok(out)
    }

    /// Doubling: degree-zero maps are kept verbatim and deactivated (their
    /// slots now hold the majorant); positive-degree maps split into two
    /// copies with `y` replaced by `y + h^1` and `y + h^2` for two fresh
    /// parameters. The distinguished node follows its first copy.
    pub fn double(&self) -> ShiftPolySystem {
        let t = self.params.len();
        let mut params = self.params.clone();
        params.push(fresh_param(&params, t + 1));
        params.push(fresh_param(&params, t + 2));
        let nvars = 1 + params.len();
        let h1 = IntPoly::var(nvars, nvars - 2);
        let h2 = IntPoly::var(nvars, nvars - 1);
        let y = IntPoly::var(nvars, 0);
        let y_plus_h1 = y.add(&h1);
        let y_plus_h2 = y.add(&h2);

        let mut kept = Vec::new();
        let mut copy1 = Vec::new();
        let mut copy2 = Vec::new();
        for n in &self.nodes {
            let deg0 = self.map_deg_y(&n.poly).unwrap_or(0) == 0;
            let ext = n.poly.extend_vars(nvars);
            if deg0 {
                kept.push(Node {
                    id: 0,
                    poly: ext,
                    active: false,
                    label: if n.active { "nu".to_string() } else { n.label.clone() },
                    origin: format!("{}/kept", n.origin),
                });
            } else {
                copy1.push((
                    n.id,
                    Node {
                        id: 0,
                        poly: ext.substitute(0, &y_plus_h1),
                        active: n.active,
                        label: n.label.clone(),
                        origin: format!("{}/c1", n.origin),
                    },
                ));
                copy2.push(Node {
                    id: 0,
                    poly: ext.substitute(0, &y_plus_h2),
                    active: n.active,
                    label: n.label.clone(),
                    origin: format!("{}/c2", n.origin),
                });
            }
        }
        let mut nodes = Vec::with_capacity(kept.len() + copy1.len() + copy2.len());
        let mut new_distinguished = None;
        for mut n in kept {
            n.id = nodes.len();
            nodes.push(n);
        }
        let mut copy1_ids = std::collections::HashMap::new();
        for (old_id, mut n) in copy1 {
            n.id = nodes.len();
            copy1_ids.insert(old_id, n.id);
            nodes.push(n);
        }
        for mut n in copy2 {
            n.id = nodes.len();
            nodes.push(n);
        }
        if let Some(d) = self.distinguished {
            // Degree-zero distinguished nodes keep their (kept) position;
            // otherwise follow copy 1.
            new_distinguished = copy1_ids.get(&d).copied().or_else(|| {
                let old = self.node(d).unwrap();
                nodes
                    .iter()
                    .find(|n| n.origin == format!("{}/kept", old.origin))
                    .map(|n| n.id)
            });
        }
        ShiftPolySystem {
            dim: self.dim,
            directions: self.directions.clone(),
            params,
            nodes,
            distinguished: new_distinguished,
        }
    }

    /// Map from a node id to the id of its first copy in `self.double()`.
    pub fn copy1_id(&self, doubled: &ShiftPolySystem, old: usize) -> Option<usize> {
        let origin = format!("{}/c1", self.node(old).ok()?.origin);
        doubled.nodes.iter().find(|n| n.origin == origin).map(|n| n.id)
    }

    /// Deactivates every `y`-free active node except `keep`, moving its
    /// slot to the majorant.
    pub fn retire_flat_nodes(&mut self, keep: usize) {
        let flat: Vec<usize> = self
            .nodes
            .iter()
            .filter(|n| {
                n.active && n.id != keep && self.map_deg_y(&n.poly).unwrap_or(0) == 0
            })
            .map(|n| n.id)
            .collect();
        for id in flat {
            let n = self.nodes.iter_mut().find(|n| n.id == id).unwrap();
            n.active = false;
            n.label = "nu".into();
            n.origin = format!("{}/flat", n.origin);
        }
    }

    /// Evaluates node `id` at integer arguments.
    pub fn evaluate_node(
        &self,
        id: usize,
        y: &BigInt,
        h: &[BigInt],
    ) -> Result<Vec<BigInt>, PolyError> {
        self.node(id)?.poly.evaluate(&self.directions, y, h)
    }
}

/// Classification of a node relative to the distinguished node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Difference is the zero map.
    Coincident,
    /// Difference has `y`-degree zero but is not the zero map.
    ConstantOffset,
    Linear,
    Nonlinear,
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

/// A polynomial map `Z^t -> Z^d` in coordinate form: one scalar polynomial
/// per axis, all over the parameter registry `h1..ht` (no primary variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    coords: Vec<IntPoly>,
}

impl PolyMap {
    pub fn new(coords: Vec<IntPoly>) -> Result<Self, PolyError> {
        if coords.is_empty() {
            return Err(PolyError::EmptySystem);
        }
        let nv = coords[0].nvars();
        if coords.iter().any(|c| c.nvars() != nv) {
            return Err(PolyError::ArityMismatch {
                expected: nv,
                got: coords.iter().map(|c| c.nvars()).max().unwrap(),
            });
        }
        Ok(PolyMap { coords })
    }

    pub fn zero(dim: usize, nparams: usize) -> Self {
        PolyMap {
            coords: vec![IntPoly::zero(nparams); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn nparams(&self) -> usize {
        self.coords[0].nvars()
    }

    pub fn coord(&self, i: usize) -> &IntPoly {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[IntPoly] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn sub(&self, other: &PolyMap) -> PolyMap {
        PolyMap {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn extend_params(&self, nparams: usize) -> PolyMap {
        PolyMap {
            coords: self.coords.iter().map(|c| c.extend_vars(nparams)).collect(),
        }
    }

    /// Exact evaluation at integer parameters.
    pub fn eval(&self, h: &[BigInt]) -> Result<Vec<BigInt>, PolyError> {
        self.coords.iter().map(|c| c.eval(h)).collect()
    }

    /// Evaluation with `i64` parameters, for the numeric kernels. Values
    /// are exact as long as they fit; errors on overflow.
    pub fn eval_i64(&self, h: &[i64]) -> Result<Vec<i64>, PolyError> {
        use num_traits::ToPrimitive;
        let hb: Vec<BigInt> = h.iter().map(|&x| BigInt::from(x)).collect();
        let v = self.eval(&hb)?;
        v.into_iter()
            .map(|x| x.to_i64().ok_or(PolyError::ValueOverflow))
            .collect()
    }
}

/// Converts a component-basis vector polynomial in parameters only into a
/// coordinate map. Errors if any component still depends on `y`.
pub fn vecpoly_to_map(p: &VecPoly, directions: &[Vec<i64>]) -> Result<PolyMap, PolyError> {
    if p.component_deg_y() > 0 {
        return Err(PolyError::UnexpectedPrimaryVariable);
    }
    let d = directions[0].len();
    let coords: Vec<IntPoly> = (0..d)
        .map(|i| strip_y(&p.coordinate_poly(directions, i)))
        .collect();
    PolyMap::new(coords)
}

/// Drops the leading `y` slot from a polynomial known to have `y`-degree 0.
fn strip_y(p: &IntPoly) -> IntPoly {
    debug_assert_eq!(p.deg_var(0), 0);
    let nv = p.nvars() - 1;
    IntPoly::from_terms(
        nv,
        p.terms().map(|(e, c)| (e[1..].to_vec(), c.clone())),
    )
    .expect("arity preserved")
}

/// Non-degeneracy for a family of coordinate maps: every coordinate of
/// every pairwise difference is non-constant (degree at least one in the
/// parameters).
pub fn is_nondegenerate(maps: &[PolyMap]) -> bool {
    for (ai, a) in maps.iter().enumerate() {
        for b in maps.iter().skip(ai + 1) {
            let diff = a.sub(b);
            for i in 0..diff.dim() {
                if diff.coord(i).is_constant() {
                    return false;
                }
            }
        }
    }
    true
}

/// Distinctness on every axis: no coordinate of any pairwise difference is
/// identically zero. This is the degree-zero reading of general position
/// for parameter-only systems.
pub fn is_pairwise_separated(maps: &[PolyMap]) -> bool {
    for (ai, a) in maps.iter().enumerate() {
        for b in maps.iter().skip(ai + 1) {
            let diff = a.sub(b);
            for i in 0..diff.dim() {
                if diff.coord(i).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Concatenation of parameter-disjoint map families: re-registers each
/// block over the combined parameter space and returns the union. The
/// parameter count is the sum of the blocks' counts.
pub fn concat_systems(blocks: &[Vec<PolyMap>]) -> Result<Vec<PolyMap>, PolyError> {
    let total: usize = blocks
        .iter()
        .map(|b| b.first().map_or(0, |m| m.nparams()))
        .sum();
    let mut out = Vec::new();
    let mut offset = 0;
    for block in blocks {
        if block.is_empty() {
            continue;
        }
        let t = block[0].nparams();
        for m in block {
            if m.nparams() != t {
                return Err(PolyError::ArityMismatch {
                    expected: t,
                    got: m.nparams(),
                });
            }
            let coords: Vec<IntPoly> = m
                .coords()
                .iter()
                .map(|c| {
                    IntPoly::from_terms(
                        total,
                        c.terms().map(|(e, coef)| {
                            let mut e2 = vec![0u32; total];
                            e2[offset..offset + t].copy_from_slice(e);
                            (e2, coef.clone())
                        }),
                    )
                    .expect("arity preserved")
                })
                .collect();
            out.push(PolyMap::new(coords)?);
        }
        offset += t;
    }
    if out.is_empty() {
        return Err(PolyError::EmptySystem);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn simple_node(id: usize, poly: VecPoly, label: &str) -> Node {
        Node {
            id,
            poly,
            active: true,
            label: label.to_string(),
            origin: format!("n{}", id),
        }
    }

    /// The worked quadratic example: d=2, v1=(1,1), v2=(1,2),
    /// nodes {0, y v1, y^2 v2}.
    pub(crate) fn example_system() -> ShiftPolySystem {
        let dirs = vec![vec![1, 1], vec![1, 2]];
        let zero = VecPoly::zero(2, 1);
        let y_v1 = VecPoly::new(vec![
            IntPoly::from_univariate(1, 0, &[0, 1]),
            IntPoly::zero(1),
        ])
        .unwrap();
        let y2_v2 = VecPoly::new(vec![
            IntPoly::zero(1),
            IntPoly::from_univariate(1, 0, &[0, 0, 1]),
        ])
        .unwrap();
        ShiftPolySystem::new(
            2,
            dirs,
            vec![],
            vec![
                simple_node(0, zero, "f0"),
                simple_node(1, y_v1, "f1"),
                simple_node(2, y2_v2, "f2"),
            ],
            Some(2),
        )
        .unwrap()
    }

    #[test]
    fn example_is_general_position() {
        assert!(example_system().is_general_position());
    }

    #[test]
    fn zero_coordinate_direction_fails_with_witness() {
        // d=2, v1=(1,0): difference of {0, y v1} dies on axis 2.
        let dirs = vec![vec![1, 0]];
        let zero = VecPoly::zero(1, 1);
        let y_v1 = VecPoly::new(vec![IntPoly::from_univariate(1, 0, &[0, 1])]).unwrap();
        let s = ShiftPolySystem::new(
            2,
            dirs,
            vec![],
            vec![simple_node(0, zero, "f0"), simple_node(1, y_v1, "f1")],
            None,
        )
        .unwrap();
        let w = s.general_position().unwrap_err();
        assert_eq!(w.coord, 2);
    }

    #[test]
    fn singleton_system_is_general_position() {
        let dirs = vec![vec![1]];
        let s = ShiftPolySystem::new(
            1,
            dirs,
            vec![],
            vec![simple_node(0, VecPoly::zero(1, 1), "f0")],
            None,
        )
        .unwrap();
        assert!(s.is_general_position());
    }

    #[test]
    fn wrt_accepts_single_linear_node() {
        let mut s = example_system();
        s.set_distinguished(Some(0)).unwrap();
        assert!(s.is_general_position_wrt(0).unwrap());
    }

    #[test]
    fn wrt_rejects_constant_separated_linear_pair() {
        // {0, y v1, y v1 + h? } needs a parameter; use constant 1*v1 offset.
        let dirs = vec![vec![1, 1]];
        let zero = VecPoly::zero(1, 1);
        let y_v1 = VecPoly::new(vec![IntPoly::from_univariate(1, 0, &[0, 1])]).unwrap();
        let y_v1_plus = VecPoly::new(vec![IntPoly::from_univariate(1, 0, &[1, 1])]).unwrap();
        let s = ShiftPolySystem::new(
            2,
            dirs,
            vec![],
            vec![
                simple_node(0, zero, "f0"),
                simple_node(1, y_v1, "f1"),
                simple_node(2, y_v1_plus, "f2"),
            ],
            Some(0),
        )
        .unwrap();
        assert!(s.is_general_position());
        assert!(!s.is_general_position_wrt(0).unwrap());
    }

    #[test]
    fn shift_moves_pivot_to_zero_and_is_idempotent_there() {
        let s = example_system();
        let sh = s.shift(1).unwrap();
        assert!(sh.node(1).unwrap().poly.is_zero());
        let sh2 = sh.shift(1).unwrap();
        assert_eq!(sh.node(0).unwrap().poly, sh2.node(0).unwrap().poly);
    }

    #[test]
    fn double_splits_positive_degree_nodes() {
        // {0, y v1} -> {0 inactive, (y+h1) v1, (y+h2) v1}
        let dirs = vec![vec![1, 1]];
        let zero = VecPoly::zero(1, 1);
        let y_v1 = VecPoly::new(vec![IntPoly::from_univariate(1, 0, &[0, 1])]).unwrap();
        let s = ShiftPolySystem::new(
            2,
            dirs,
            vec![],
            vec![simple_node(0, zero, "f0"), simple_node(1, y_v1, "f1")],
            Some(0),
        )
        .unwrap();
        let d = s.double();
        assert_eq!(d.nodes().len(), 3);
        assert_eq!(d.num_params(), 2);
        let kept = &d.nodes()[0];
        assert!(!kept.active);
        assert_eq!(kept.label, "nu");
        assert!(kept.poly.is_zero());
        // Copies: y+h1 and y+h2 in component 0.
        let c1 = &d.nodes()[1];
        let c2 = &d.nodes()[2];
        assert_eq!(c1.poly.component(0).deg_var(0), 1);
        assert_eq!(c1.poly.component(0).deg_var(1), 1);
        assert_eq!(c2.poly.component(0).deg_var(2), 1);
        assert_eq!(c1.label, "f1");
        assert_eq!(c2.label, "f1");
        // Distinguished followed the kept degree-zero node.
        assert_eq!(d.distinguished(), Some(0));
    }

    #[test]
    fn concat_adds_parameter_counts() {
        let q1 = vec![PolyMap::new(vec![IntPoly::var(1, 0)]).unwrap()];
        let q2 = vec![PolyMap::new(vec![IntPoly::from_univariate(2, 1, &[0, 0, 1])]).unwrap()];
        let q = concat_systems(&[q1.clone(), q2]).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q[0].nparams(), 3);
        // Identity on a single block.
        let same = concat_systems(&[q1.clone()]).unwrap();
        assert_eq!(same[0], q1[0]);
    }

    #[test]
    fn nondegenerate_examples() {
        // (h1 e1, h1^2 e1) in d=1: nondegenerate.
        let a = PolyMap::new(vec![IntPoly::var(1, 0)]).unwrap();
        let b = PolyMap::new(vec![IntPoly::from_univariate(1, 0, &[0, 0, 1])]).unwrap();
        assert!(is_nondegenerate(&[a.clone(), b]));
        // Constant difference: degenerate.
        let c = PolyMap::new(vec![IntPoly::from_univariate(1, 0, &[1, 1])]).unwrap();
        assert!(!is_nondegenerate(&[a, c]));
        // ((h1,h2),(h2,h1)) in d=2: nondegenerate.
        let p = PolyMap::new(vec![IntPoly::var(2, 0), IntPoly::var(2, 1)]).unwrap();
        let q = PolyMap::new(vec![IntPoly::var(2, 1), IntPoly::var(2, 0)]).unwrap();
        assert!(is_nondegenerate(&[p, q]));
    }
}
