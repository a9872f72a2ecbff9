use polyprime::polysys::*;

fn scalar_sys(polys: &[&[i64]], dist: usize) -> ShiftPolySystem {
    let nodes: Vec<Node> = polys
        .iter()
        .enumerate()
        .map(|(id, c)| Node {
            id,
            poly: VecPoly::new(vec![IntPoly::from_univariate(1, 0, c)]).unwrap(),
            active: true,
            label: format!("f{}", id),
            origin: format!("n{}", id),
        })
        .collect();
    ShiftPolySystem::new(1, vec![vec![1]], vec![], nodes, Some(dist)).unwrap()
}

fn run(name: &str, s: &ShiftPolySystem) {
    let t = std::time::Instant::now();
    match pet_linearize(s, 200) {
        Ok(c) => {
            let mut kinds = std::collections::BTreeMap::new();
            for s in &c.steps {
                *kinds.entry(format!("{:?}", s.kind)).or_insert(0usize) += 1;
            }
            println!(
                "{name}: steps={} {:?} nodes={} linear={} params={} [{:?}]",
                c.steps.len(),
                kinds,
                c.final_system.nodes().len(),
                c.linear.len(),
                c.final_system.num_params(),
                t.elapsed()
            );
        }
        Err(e) => println!("{name}: ERR {} [{:?}]", e, t.elapsed()),
    }
}

fn main() {
    for dist in [0usize, 1, 2, 3] {
        run(
            &format!("cubic dist={dist}"),
            &scalar_sys(&[&[0], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1]], dist),
        );
    }
    run(
        "quartic mix",
        &scalar_sys(
            &[&[0], &[0, 1], &[0, 0, 3], &[0, 0, 0, 2], &[0, 1, 0, 0, 1]],
            0,
        ),
    );
    run(
        "two cubics",
        &scalar_sys(&[&[0], &[0, 0, 0, 1], &[0, 0, 0, 2], &[0, 1, 2]], 0),
    );
    // d=2 worked example, distinguished at the quadratic node.
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
    let ex = ShiftPolySystem::new(2, dirs, vec![], nodes, Some(2)).unwrap();
    run("worked example", &ex);
}
