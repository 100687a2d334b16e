//! Acceptance criteria 1–12, one PASS/FAIL line each. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::panic;
use std::process::{Command, ExitCode};

use efcheck_core::augmentation::{build_example_1, demonstrate_mutual_ef, random_spec};
use efcheck_core::auxiliary::{check_equivalence, LinkingMap};
use efcheck_core::ef::{
    check_ef_linear_map, check_ef_standard, map_through_point, verify_map_image,
    BlockedPolyhedron, DEFAULT_MAP_SEARCH_LIMIT,
};
use efcheck_core::instances::*;
use efcheck_core::mstp::{
    build_edmonds, build_martin, build_martin_restated, check_subtour_redundancy, default_roots,
    kruskal, paradox_demo, random_connected_graph, random_costs, WeightedGraph,
};
use efcheck_core::numeric::{int_vec, ratio};
use efcheck_core::projection::{fm_eliminate, ProjectionKind};
use efcheck_core::vertex::{enumerate_vertices, in_convex_hull, DEFAULT_BASIS_LIMIT};
use efcheck_core::Vector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion_1() {
    let v = enumerate_vertices(&u_bar(), DEFAULT_BASIS_LIMIT).unwrap();
    assert_eq!(v.vertices, vec![int_vec(&[3, 2, 0, 0, 0])]);
    assert!(v.rays.is_empty());

    let r = verify_map_image(&BlockedPolyhedron::from_labels(u_bar()), &map_a(), &x_bar()).unwrap();
    assert!(r.valid);
    assert_eq!(r.images[0].1, int_vec(&[2, 1, 5]));

    let standard =
        check_ef_standard(&BlockedPolyhedron::from_labels(u_bar_embedded()), &x_bar()).unwrap();
    assert!(!standard.holds());
    assert!(standard.notes.iter().any(|n| n == "projection kind: FULL_SPACE"));

    let map = check_ef_linear_map(
        &BlockedPolyhedron::from_labels(u_bar()),
        &x_bar(),
        DEFAULT_MAP_SEARCH_LIMIT,
    )
    .unwrap();
    assert!(map.holds());
}

fn criterion_2() {
    let v = enumerate_vertices(&x_bar(), DEFAULT_BASIS_LIMIT).unwrap();
    assert_eq!(v.vertices, vec![int_vec(&[2, 1, 5])]);
    assert!(v.rays.is_empty());
}

fn criterion_3() {
    let linked = check_ef_standard(&BlockedPolyhedron::from_labels(u_prime()), &x_bar()).unwrap();
    assert!(linked.holds());
    let unlinked =
        check_ef_standard(&BlockedPolyhedron::from_labels(u_bar_embedded()), &x_bar()).unwrap();
    assert!(!unlinked.holds());
}

fn criterion_4() {
    let x = BlockedPolyhedron::from_labels(x_bar());
    let printed = verify_map_image(&x, &map_b_printed(), &u_bar()).unwrap();
    assert!(!printed.valid);
    assert_eq!(printed.images[0].1, int_vec(&[4, 1, -3, -2, 10]));
    let fitted = map_through_point(&x_bar_point(), &u_bar_point()).unwrap().unwrap();
    assert!(verify_map_image(&x, &fitted, &u_bar()).unwrap().valid);
}

fn criterion_5() {
    let r = demonstrate_mutual_ef(&build_example_1()).unwrap();
    assert!(r.x1_projection_equals_p1);
    assert!(r.x2_projection_equals_p2);
    assert!(r.mixed_rows_redundant);
    assert_eq!(r.u_induced_rows, 0);
    assert!(r.valid());
}

fn criterion_6() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..20 {
        let spec = random_spec(&mut rng);
        assert!(spec.p1.dim() <= 3 && spec.p2.dim() <= 3);
        assert!(!spec.p1.is_empty().unwrap() && !spec.p2.is_empty().unwrap());
        assert!(demonstrate_mutual_ef(&spec).unwrap().valid(), "spec {k}: {spec:?}");
    }
}

fn criterion_7() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs: Vec<WeightedGraph> = (3..=5).map(WeightedGraph::complete_unit).collect();
    for _ in 0..5 {
        let n = rng.gen_range(3..=5);
        graphs.push(random_connected_graph(&mut rng, n));
    }
    for g in graphs {
        for _ in 0..10 {
            let g = g.with_costs(&random_costs(&mut rng, g.edges().len())).unwrap();
            let oracle = kruskal(&g).unwrap().0;
            let p = build_edmonds(&g).unwrap().solve().unwrap();
            let q = build_martin(&g).unwrap().solve().unwrap();
            let qp = build_martin_restated(&g, &default_roots(&g).unwrap())
                .unwrap()
                .solve()
                .unwrap();
            assert_eq!(p.optimal_value(), &oracle, "{g}");
            assert_eq!(q.optimal_value(), &oracle, "{g}");
            assert_eq!(qp.optimal_value(), &oracle, "{g}");
        }
    }
}

fn criterion_8() {
    for n in 3..=5 {
        let r = check_subtour_redundancy(&WeightedGraph::complete_unit(n)).unwrap();
        let expected: usize = (2..n).map(|k| efcheck_core::vertex::binomial(n, k) as usize).sum();
        assert_eq!(r.checks.len(), expected);
        for c in &r.checks {
            assert!(c.maximum <= c.bound, "K{n}, S = {:?}", c.set);
        }
    }
}

fn criterion_9() {
    let r = paradox_demo(&WeightedGraph::complete_unit(4)).unwrap();
    assert_eq!(r.edmonds.rows, 11);
    assert_eq!(r.martin.rows, 41);
    assert!(r.restated.vars < r.martin.vars);
    assert_eq!(r.restated.x_vars, 0);
    assert!(r.optima_agree());
}

fn criterion_10() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for link in [
        LinkingMap::linear(map_a()),
        LinkingMap::new(map_a(), int_vec(&[1, 1, 1])).unwrap(),
    ] {
        let alphas: Vec<Vector> = (0..10)
            .map(|_| {
                (0..3)
                    .map(|_| ratio(rng.gen_range(-10..=10), rng.gen_range(1..=4)))
                    .collect()
            })
            .collect();
        let r = check_equivalence(&u_bar(), &link, &alphas).unwrap();
        assert_eq!(r.cases.len(), 10);
        for c in &r.cases {
            assert_eq!(c.direct, &c.auxiliary + &c.offset);
        }
    }
}

fn criterion_11() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tested = 0;
    while tested < 50 {
        let p = random_bounded_polyhedron(&mut rng, 4, 8);
        if p.dim() < 2 {
            continue;
        }
        assert!(p.constraints().len() <= 8);
        let keep: Vec<usize> = loop {
            let k: Vec<usize> = (0..p.dim()).filter(|_| rng.gen_bool(0.5)).collect();
            if !k.is_empty() && k.len() < p.dim() {
                break k;
            }
        };
        let drop: Vec<&str> = (0..p.dim())
            .filter(|j| !keep.contains(j))
            .map(|j| p.space().name(j))
            .collect();
        let projected: Vec<Vector> = enumerate_vertices(&p, DEFAULT_BASIS_LIMIT)
            .unwrap()
            .vertices
            .into_iter()
            .map(|v| keep.iter().map(|&j| v[j].clone()).collect())
            .collect::<BTreeSet<Vector>>()
            .into_iter()
            .collect();
        let hull: BTreeSet<Vector> = projected
            .iter()
            .filter(|v| {
                let others: Vec<Vector> = projected.iter().filter(|o| o != v).cloned().collect();
                !in_convex_hull(&others, v).unwrap()
            })
            .cloned()
            .collect();
        let r = fm_eliminate(&p, &drop).unwrap();
        assert_eq!(r.kind, ProjectionKind::Polyhedron);
        let fm: BTreeSet<Vector> = enumerate_vertices(&r.description.unwrap(), DEFAULT_BASIS_LIMIT)
            .unwrap()
            .vertices
            .into_iter()
            .collect();
        assert_eq!(fm, hull, "{p}");
        tested += 1;
    }
}

fn criterion_12() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_efcheck"))
            .args(["paper-suite", "--seed", "7"])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "paper-suite exited with {}", out.status);
        out.stdout
    };
    let first = run();
    let second = run();
    assert!(!first.is_empty());
    assert!(first == second, "paper-suite output differs between runs");
}

const CRITERIA: &[(&str, fn())] = &[
    ("counterexample: U-bar vertex, map image, FULL_SPACE refutation, map acceptance", criterion_1),
    ("X-bar has the single vertex (2,1,5)", criterion_2),
    ("linking rows make the projection definition hold", criterion_3),
    ("printed B misses U-bar; fitted B' hits it", criterion_4),
    ("worked augmentation example passes all four facts", criterion_5),
    ("20 seeded random augmentation specs", criterion_6),
    ("MSTP optima of P, Q, Q' and Kruskal agree", criterion_7),
    ("subtour rows redundant for Q on K3-K5", criterion_8),
    ("size paradox report on K4", criterion_9),
    ("auxiliary two-step equivalence, b = 0 and b != 0", criterion_10),
    ("FM projection equals hull of projected vertices (50 seeds)", criterion_11),
    ("paper-suite --seed 7 is byte-identical across runs", criterion_12),
];

fn main() -> ExitCode {
    panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (i, (name, check)) in CRITERIA.iter().enumerate() {
        let ok = panic::catch_unwind(check).is_ok();
        println!("criterion {:>2}: {} - {name}", i + 1, if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
