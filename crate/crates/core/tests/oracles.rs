//! Cross-checks against small, independent reference computations written
//! here from scratch: Laplace determinants, Cramer's rule, spanning-tree
//! enumeration.

use std::collections::BTreeSet;

use efcheck_core::instances::{map_a, random_bounded_polyhedron};
use efcheck_core::lp::Sense;
use efcheck_core::mstp::{
    build_edmonds, build_martin, build_martin_restated, default_roots, kruskal,
    random_connected_graph, random_costs, WeightedGraph,
};
use efcheck_core::numeric::{int, ratio, Rational, Vector};
use efcheck_core::projection::fm_eliminate;
use efcheck_core::vertex::{enumerate_vertices, in_convex_hull, DEFAULT_BASIS_LIMIT};
use efcheck_core::{HPolyhedron, Relation};
use itertools::Itertools;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => int(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

/// `(coeffs, rhs)` rows of `a·z ≤ b`, sign restrictions included.
fn le_rows(p: &HPolyhedron) -> Vec<(Vector, Rational)> {
    let mut rows: Vec<(Vector, Rational)> = p
        .constraints()
        .iter()
        .map(|c| {
            assert_eq!(c.rel, Relation::Le, "oracle expects <= rows");
            (c.coeffs.clone(), c.rhs.clone())
        })
        .collect();
    for j in 0..p.dim() {
        if p.is_nonneg(j) {
            let mut a = vec![Rational::zero(); p.dim()];
            a[j] = int(-1);
            rows.push((a, Rational::zero()));
        }
    }
    rows
}

fn feasible(rows: &[(Vector, Rational)], z: &[Rational]) -> bool {
    rows.iter().all(|(a, b)| {
        let lhs: Rational = a.iter().zip(z).map(|(x, y)| x * y).sum();
        lhs <= *b
    })
}

/// Vertices by Cramer's rule over every square subsystem.
fn cramer_vertices(p: &HPolyhedron) -> BTreeSet<Vector> {
    let d = p.dim();
    let rows = le_rows(p);
    let mut out = BTreeSet::new();
    for chosen in (0..rows.len()).combinations(d) {
        let a: Vec<Vector> = chosen.iter().map(|&i| rows[i].0.clone()).collect();
        let base = det(&a);
        if base.is_zero() {
            continue;
        }
        let z: Vector = (0..d)
            .map(|j| {
                let mut aj = a.clone();
                for (r, &i) in chosen.iter().enumerate() {
                    aj[r][j] = rows[i].1.clone();
                }
                det(&aj) / &base
            })
            .collect();
        if feasible(&rows, &z) {
            out.insert(z);
        }
    }
    out
}

#[test]
fn rank_of_a_via_a_nonzero_minor() {
    let a = map_a();
    let minor: Vec<Vector> = (0..3).map(|i| a.row(i)[..3].to_vec()).collect();
    assert_eq!(det(&minor), ratio(3, 2));
    assert_eq!(a.rank(), 3);
}

#[test]
fn vertices_match_cramer_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let p = random_bounded_polyhedron(&mut rng, 3, 6);
        let ours: BTreeSet<Vector> = enumerate_vertices(&p, DEFAULT_BASIS_LIMIT)
            .unwrap()
            .vertices
            .into_iter()
            .collect();
        assert_eq!(ours, cramer_vertices(&p), "{p}");
    }
}

#[test]
fn lp_optimum_is_the_best_vertex() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let p = random_bounded_polyhedron(&mut rng, 3, 6);
        let c: Vector = (0..p.dim()).map(|_| int(rng.gen_range(-7..=7))).collect();
        let best = cramer_vertices(&p)
            .iter()
            .map(|v| v.iter().zip(&c).map(|(x, y)| x * y).sum::<Rational>())
            .max()
            .unwrap();
        let out = p.optimize(&c, Sense::Max).unwrap();
        assert_eq!(out.optimal_value(), &best, "{p}");
    }
}

#[test]
fn projection_matches_hull_of_projected_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let p = random_bounded_polyhedron(&mut rng, 4, 8);
        if p.dim() < 2 {
            continue;
        }
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
        let projected: Vec<Vector> = cramer_vertices(&p)
            .into_iter()
            .map(|v| keep.iter().map(|&j| v[j].clone()).collect())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let extreme: BTreeSet<Vector> = projected
            .iter()
            .filter(|v| {
                let others: Vec<Vector> = projected.iter().filter(|o| o != v).cloned().collect();
                !in_convex_hull(&others, v).unwrap()
            })
            .cloned()
            .collect();
        let description = fm_eliminate(&p, &drop).unwrap().description.unwrap();
        let fm: BTreeSet<Vector> = enumerate_vertices(&description, DEFAULT_BASIS_LIMIT)
            .unwrap()
            .vertices
            .into_iter()
            .collect();
        assert_eq!(fm, extreme, "{p} dropping {drop:?}");
    }
}

fn spanning_tree_minimum(g: &WeightedGraph) -> Rational {
    let n = g.n();
    let mut best: Option<Rational> = None;
    for subset in (0..g.edges().len()).combinations(n - 1) {
        let mut comp: Vec<usize> = (0..=n).collect();
        let mut acyclic = true;
        for &e in &subset {
            let (a, b) = (comp[g.edges()[e].i], comp[g.edges()[e].j]);
            if a == b {
                acyclic = false;
                break;
            }
            for c in comp.iter_mut() {
                if *c == b {
                    *c = a;
                }
            }
        }
        if acyclic {
            let w: Rational = subset.iter().map(|&e| g.edges()[e].cost.clone()).sum();
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
    }
    best.expect("connected graph")
}

#[test]
fn mst_models_agree_with_tree_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut graphs: Vec<WeightedGraph> = (3..=5).map(WeightedGraph::complete_unit).collect();
    for _ in 0..3 {
        let n = rng.gen_range(3..=5);
        graphs.push(random_connected_graph(&mut rng, n));
    }
    for g in graphs {
        for _ in 0..3 {
            let g = g.with_costs(&random_costs(&mut rng, g.edges().len())).unwrap();
            let oracle = spanning_tree_minimum(&g);
            assert_eq!(kruskal(&g).unwrap().0, oracle);
            let p = build_edmonds(&g).unwrap().solve().unwrap();
            let q = build_martin(&g).unwrap().solve().unwrap();
            let qp = build_martin_restated(&g, &default_roots(&g).unwrap()).unwrap();
            let qp_out = qp.solve().unwrap();
            assert_eq!(p.optimal_value(), &oracle);
            assert_eq!(q.optimal_value(), &oracle);
            assert_eq!(qp_out.optimal_value(), &oracle);
            let x = qp.edge_values(qp_out.point.as_ref().unwrap());
            let edmonds = build_edmonds(&g).unwrap();
            assert!(edmonds.lp.feasible_set.contains_point(&x).unwrap());
        }
    }
}

#[test]
fn restated_optimum_does_not_depend_on_roots() {
    let g = WeightedGraph::complete(
        4,
        &[int(4), ratio(1, 2), int(3), int(-1), int(2), ratio(7, 3)],
    )
    .unwrap();
    let lowest = default_roots(&g).unwrap();
    let highest: Vec<usize> = g
        .edges()
        .iter()
        .map(|e| (1..=4).rev().find(|&r| r != e.i && r != e.j).unwrap())
        .collect();
    assert_ne!(lowest, highest);
    let a = build_martin_restated(&g, &lowest).unwrap().solve().unwrap();
    let b = build_martin_restated(&g, &highest).unwrap().solve().unwrap();
    assert_eq!(a.optimal_value(), b.optimal_value());
    assert_eq!(a.optimal_value(), &spanning_tree_minimum(&g));
}
