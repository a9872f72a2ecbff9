//! Weight matrices: the termination bookkeeping for the linearization
//! procedure.
//!
//! The entry at `(j, k)` counts equivalence classes of component
//! polynomials that carry `y`-degree `k` in direction slot `j` while all
//! higher slots are `y`-free; two components are equivalent when their
//! leading `y`-coefficients agree as polynomials in the parameters.

use std::collections::BTreeSet;

use super::poly::IntPoly;
use super::system::ShiftPolySystem;
use super::PolyError;

/// An `l x D` tally of leading-term equivalence classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl WeightMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        WeightMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry for slot `j` and degree `k`, both 1-based.
    pub fn get(&self, j: usize, k: usize) -> u64 {
        self.entries[(j - 1) * self.cols + (k - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Widens the degree axis; existing entries keep their positions.
    pub fn pad_cols(&self, cols: usize) -> WeightMatrix {
        assert!(cols >= self.cols);
        let mut out = WeightMatrix::zero(self.rows, cols);
        for j in 1..=self.rows {
            for k in 1..=self.cols {
                out.entries[(j - 1) * cols + (k - 1)] = self.get(j, k);
            }
        }
        out
    }

    /// First nonzero position scanning slots upward and degrees upward,
    /// i.e. the least significant end of the comparison order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        for j in 1..=self.rows {
            for k in 1..=self.cols {
                if self.get(j, k) > 0 {
                    return Some((j, k));
                }
            }
        }
        None
    }

    pub fn to_vecs(&self) -> Vec<Vec<u64>> {
        (1..=self.rows)
            .map(|j| (1..=self.cols).map(|k| self.get(j, k)).collect())
            .collect()
    }

    pub fn from_vecs(v: &[Vec<u64>]) -> Result<Self, PolyError> {
        if v.is_empty() || v[0].is_empty() {
            return Err(PolyError::EmptySystem);
        }
        let rows = v.len();
        let cols = v[0].len();
        if v.iter().any(|r| r.len() != cols) {
            return Err(PolyError::ShapeMismatch {
                a: (rows, cols),
                b: (rows, v.iter().map(|r| r.len()).max().unwrap()),
            });
        }
        let mut m = WeightMatrix::zero(rows, cols);
        for (j, r) in v.iter().enumerate() {
            for (k, &e) in r.iter().enumerate() {
                m.entries[j * cols + k] = e;
            }
        }
        Ok(m)
    }
}

impl std::fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for j in 1..=self.rows {
            let row: Vec<String> = (1..=self.cols).map(|k| self.get(j, k).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Strict comparison: positions are scanned from the largest `(j, k)`
/// downward (slot major, degree minor) and the first differing entry
/// decides. Decrementing any entry while only entries at strictly smaller
/// positions change therefore produces a smaller matrix, which is what
/// makes the step-by-step descent terminate.
pub fn weight_less(a: &WeightMatrix, b: &WeightMatrix) -> Result<bool, PolyError> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(PolyError::ShapeMismatch {
            a: (a.rows, a.cols),
            b: (b.rows, b.cols),
        });
    }
    for j in (1..=a.rows).rev() {
        for k in (1..=a.cols).rev() {
            let (x, y) = (a.get(j, k), b.get(j, k));
            if x != y {
                return Ok(x < y);
            }
        }
    }
    Ok(false)
}

/// The reduced slot of a node: the largest direction index whose component
/// depends on `y`, together with that component's `y`-degree and leading
/// `y`-coefficient. `None` when no component depends on `y`.
pub(crate) fn reduced_slot(components: &[IntPoly]) -> Option<(usize, u32, IntPoly)> {
    for j in (0..components.len()).rev() {
        let d = components[j].deg_var(0);
        if d >= 1 {
            return Some((j + 1, d, components[j].coeff_of_power(0, d)));
        }
    }
    None
}

/// Weight matrix of `system` relative to node `pivot`. The system is first
/// translated by `-R_pivot`; each remaining node lands in the reduced set
/// of its highest `y`-carrying slot overall and contributes its leading
/// `y`-coefficient to the class count there. With `active_only` the tally
/// is restricted to active nodes.
pub fn weight_matrix(
    system: &ShiftPolySystem,
    pivot: usize,
    active_only: bool,
) -> Result<WeightMatrix, PolyError> {
    let shifted = system.shift(pivot)?;
    weight_matrix_absolute(&shifted, active_only)
}

/// Frame tally without a pivot translation: classes of the node
/// polynomials as they stand.
pub fn weight_matrix_absolute(
    system: &ShiftPolySystem,
    active_only: bool,
) -> Result<WeightMatrix, PolyError> {
    let l = system.num_directions();
    let mut cols = 1usize;
    for n in system.nodes() {
        cols = cols.max(n.poly.component_deg_y() as usize);
    }
    // classes[(j,k)] -> set of leading coefficients seen
    let mut classes: std::collections::BTreeMap<(usize, usize), BTreeSet<IntPoly>> =
        Default::default();
    for n in system.nodes() {
        if active_only && !n.active {
            continue;
        }
        if let Some((j, k, lead)) = reduced_slot(n.poly.components()) {
            classes.entry((j, k as usize)).or_default().insert(lead);
        }
    }
    let mut m = WeightMatrix::zero(l, cols);
    for ((j, k), set) in classes {
        m.entries[(j - 1) * m.cols + (k - 1)] = set.len() as u64;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::poly::{IntPoly, VecPoly};
    use crate::polysys::system::{Node, ShiftPolySystem};

    fn node(id: usize, poly: VecPoly, label: &str) -> Node {
        Node {
            id,
            poly,
            active: true,
            label: label.to_string(),
            origin: format!("n{}", id),
        }
    }

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

    #[test]
    fn example_weights_match_hand_computation() {
        // Relative to node 0: w(1,1) = 1 from y in slot 1, w(2,2) = 1 from
        // y^2 in slot 2, all else zero.
        let w = weight_matrix(&example(), 0, false).unwrap();
        assert_eq!(w.get(1, 1), 1);
        assert_eq!(w.get(2, 2), 1);
        assert_eq!(w.get(1, 2), 0);
        assert_eq!(w.get(2, 1), 0);
    }

    #[test]
    fn singleton_weight_is_zero_matrix() {
        let dirs = vec![vec![1]];
        let s = ShiftPolySystem::new(
            1,
            dirs,
            vec![],
            vec![node(0, VecPoly::zero(1, 1), "f")],
            None,
        )
        .unwrap();
        let w = weight_matrix(&s, 0, false).unwrap();
        assert!(w.is_zero());
        assert_eq!((w.rows(), w.cols()), (1, 1));
    }

    #[test]
    fn scalar_case_matches_weight_vector() {
        // l=1: the matrix degenerates to the class counts per degree.
        // System {0, y, 2y, y^2} relative to 0: degree-1 classes {1, 2},
        // degree-2 classes {1}.
        let dirs = vec![vec![1]];
        let p = |coeffs: &[i64]| {
            VecPoly::new(vec![IntPoly::from_univariate(1, 0, coeffs)]).unwrap()
        };
        let s = ShiftPolySystem::new(
            1,
            dirs,
            vec![],
            vec![
                node(0, VecPoly::zero(1, 1), "f0"),
                node(1, p(&[0, 1]), "f1"),
                node(2, p(&[0, 2]), "f2"),
                node(3, p(&[0, 0, 1]), "f3"),
            ],
            None,
        )
        .unwrap();
        let w = weight_matrix(&s, 0, false).unwrap();
        assert_eq!(w.get(1, 1), 2);
        assert_eq!(w.get(1, 2), 1);
    }

    #[test]
    fn identical_leading_terms_collapse_to_one_class() {
        // {0, y^2, y^2 + y} relative to 0: leading terms of both quadratics
        // agree, one class at (1,2); the difference polynomial y lands
        // nowhere because we tally nodes, and y^2+y has slot 1 degree 2.
        let dirs = vec![vec![1]];
        let p = |coeffs: &[i64]| {
            VecPoly::new(vec![IntPoly::from_univariate(1, 0, coeffs)]).unwrap()
        };
        let s = ShiftPolySystem::new(
            1,
            dirs,
            vec![],
            vec![
                node(0, VecPoly::zero(1, 1), "f0"),
                node(1, p(&[0, 0, 1]), "f1"),
                node(2, p(&[0, 1, 1]), "f2"),
            ],
            None,
        )
        .unwrap();
        let w = weight_matrix(&s, 0, false).unwrap();
        assert_eq!(w.get(1, 2), 1);
        assert_eq!(w.get(1, 1), 0);
    }

    #[test]
    fn ordering_is_irreflexive_and_decides_at_scan_order() {
        let a = WeightMatrix::from_vecs(&[vec![1, 0], vec![0, 2]]).unwrap();
        assert!(!weight_less(&a, &a).unwrap());
        // Reduce the entry at the scanned-first position (2,2).
        let b = WeightMatrix::from_vecs(&[vec![5, 7], vec![9, 1]]).unwrap();
        assert!(weight_less(&b, &a).unwrap());
        // Shape mismatch errors.
        let c = WeightMatrix::zero(1, 2);
        assert!(weight_less(&a, &c).is_err());
    }
}
