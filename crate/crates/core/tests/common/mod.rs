//! Shared corpus generation for the integration suites.

use polyprime::polysys::{IntPoly, Node, ShiftPolySystem, VecPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fixed corpus seed; every suite derives its instances from here.
pub const CORPUS_SEED: u64 = 0x00C0FFEE;

/// Bounds for random system generation.
#[derive(Clone, Copy)]
pub struct SystemBounds {
    pub max_dim: usize,
    pub max_dirs: usize,
    pub max_deg: u32,
    pub max_nodes: usize,
}

impl Default for SystemBounds {
    fn default() -> Self {
        SystemBounds {
            max_dim: 3,
            max_dirs: 3,
            max_deg: 3,
            max_nodes: 4,
        }
    }
}

fn nonzero(rng: &mut ChaCha8Rng, span: i64) -> i64 {
    loop {
        let v = rng.random_range(-span..=span);
        if v != 0 {
            return v;
        }
    }
}

/// Draws until the sampled system is in general position relative to its
/// zero node. Directions carry no zero coordinates, polynomials have zero
/// constant term, node 0 is the zero map.
pub fn random_gp_system(seed: u64, bounds: SystemBounds) -> ShiftPolySystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let d = rng.random_range(1..=bounds.max_dim);
        let l = rng.random_range(1..=bounds.max_dirs);
        let dirs: Vec<Vec<i64>> = (0..l)
            .map(|_| (0..d).map(|_| nonzero(&mut rng, 3)).collect())
            .collect();
        let node_count = rng.random_range(2..=bounds.max_nodes);
        let mut nodes = vec![Node {
            id: 0,
            poly: VecPoly::zero(l, 1),
            active: true,
            label: "f0".into(),
            origin: "n0".into(),
        }];
        for id in 1..node_count {
            let mut comps = Vec::with_capacity(l);
            let mut any = false;
            for _ in 0..l {
                if rng.random_range(0..3) == 0 && l > 1 {
                    comps.push(IntPoly::zero(1));
                    continue;
                }
                let deg = rng.random_range(1..=bounds.max_deg);
                let mut coeffs = vec![0i64; (deg + 1) as usize];
                for c in coeffs.iter_mut().skip(1) {
                    *c = rng.random_range(-3..=3);
                }
                coeffs[deg as usize] = nonzero(&mut rng, 3);
                any = true;
                comps.push(IntPoly::from_univariate(1, 0, &coeffs));
            }
            if !any {
                comps[0] = IntPoly::from_univariate(1, 0, &[0, nonzero(&mut rng, 3)]);
            }
            nodes.push(Node {
                id,
                poly: VecPoly::new(comps).unwrap(),
                active: true,
                label: format!("f{}", id),
                origin: format!("n{}", id),
            });
        }
        if let Ok(sys) = ShiftPolySystem::new(d, dirs, vec![], nodes, Some(0)) {
            if sys.is_general_position() && sys.is_general_position_wrt(0).unwrap_or(false) {
                return sys;
            }
        }
    }
}

/// The worked quadratic example: d = 2, v1 = (1,1), v2 = (1,2),
/// nodes {0, y v1, y^2 v2}, distinguished at the quadratic node.
pub fn worked_example() -> ShiftPolySystem {
    let dirs = vec![vec![1, 1], vec![1, 2]];
    let nodes = vec![
        Node {
            id: 0,
            poly: VecPoly::zero(2, 1),
            active: true,
            label: "f0".into(),
            origin: "n0".into(),
        },
        Node {
            id: 1,
            poly: VecPoly::new(vec![
                IntPoly::from_univariate(1, 0, &[0, 1]),
                IntPoly::zero(1),
            ])
            .unwrap(),
            active: true,
            label: "f1".into(),
            origin: "n1".into(),
        },
        Node {
            id: 2,
            poly: VecPoly::new(vec![
                IntPoly::zero(1),
                IntPoly::from_univariate(1, 0, &[0, 0, 1]),
            ])
            .unwrap(),
            active: true,
            label: "f2".into(),
            origin: "n2".into(),
        },
    ];
    ShiftPolySystem::new(2, dirs, vec![], nodes, Some(2)).unwrap()
}

/// Random bounded grid in [-1, 1].
pub fn random_grid(dim: usize, n: usize, seed: u64) -> polyprime::grid::GridFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = n.pow(dim as u32);
    let values: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
    polyprime::grid::GridFunction::from_values(dim, n, values).unwrap()
}
