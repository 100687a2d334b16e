//! The small published instances, reproduced exactly.

use efcheck_core::augmentation::{build_augmentation, build_example_1, demonstrate_mutual_ef};
use efcheck_core::auxiliary::{solve_direct, solve_via_auxiliary, LinkingMap};
use efcheck_core::ef::{
    check_ef_iff, check_ef_linear_map, check_ef_standard, map_through_point, verify_map_image,
    BlockedPolyhedron, Outcome, Witness, DEFAULT_MAP_SEARCH_LIMIT,
};
use efcheck_core::instances::*;
use efcheck_core::numeric::{int, int_vec, ratio};
use efcheck_core::projection::ProjectionKind;
use efcheck_core::vertex::{enumerate_vertices, DEFAULT_BASIS_LIMIT};
use efcheck_core::Matrix;

#[test]
fn u_bar_has_the_single_vertex() {
    let v = enumerate_vertices(&u_bar(), DEFAULT_BASIS_LIMIT).unwrap();
    assert_eq!(v.vertices, vec![int_vec(&[3, 2, 0, 0, 0])]);
    assert!(v.rays.is_empty());
}

#[test]
fn x_bar_has_the_single_vertex() {
    let v = enumerate_vertices(&x_bar(), DEFAULT_BASIS_LIMIT).unwrap();
    assert_eq!(v.vertices, vec![int_vec(&[2, 1, 5])]);
    assert!(v.rays.is_empty());
}

#[test]
fn map_a_sends_u_bar_onto_x_bar() {
    let u = BlockedPolyhedron::from_labels(u_bar());
    let r = verify_map_image(&u, &map_a(), &x_bar()).unwrap();
    assert!(r.valid);
    assert_eq!(r.images, vec![(int_vec(&[3, 2, 0, 0, 0]), int_vec(&[2, 1, 5]))]);
}

#[test]
fn projection_definition_rejects_unlinked_u_bar() {
    let u = BlockedPolyhedron::from_labels(u_bar_embedded());
    let v = check_ef_standard(&u, &x_bar()).unwrap();
    assert_eq!(v.outcome, Outcome::Refuted);
    assert!(v.notes.iter().any(|n| n == "projection kind: FULL_SPACE"));
    match v.witness {
        Witness::Counterexample { x, lifted, .. } => {
            assert!(!x_bar().contains_point(&x).unwrap());
            assert!(u.poly().contains_point(&lifted.unwrap()).unwrap());
        }
        other => panic!("expected a counterexample, got {other:?}"),
    }
    assert!(!check_ef_iff(&u, &x_bar()).unwrap().holds());
}

#[test]
fn linear_map_definition_accepts_u_bar() {
    let u = BlockedPolyhedron::from_labels(u_bar());
    let v = check_ef_linear_map(&u, &x_bar(), DEFAULT_MAP_SEARCH_LIMIT).unwrap();
    assert!(v.holds());
    let Witness::LinearMap(w) = v.witness else {
        panic!("expected a map witness");
    };
    assert!(verify_map_image(&u, &w.matrix, &x_bar()).unwrap().valid);
}

#[test]
fn linking_rows_make_the_projection_definition_hold() {
    let u = BlockedPolyhedron::from_labels(u_prime());
    let v = check_ef_standard(&u, &x_bar()).unwrap();
    assert!(v.holds(), "{v:?}");
    match v.witness {
        Witness::Projection(p) => assert_eq!(p.kind, ProjectionKind::Polyhedron),
        other => panic!("expected a projection witness, got {other:?}"),
    }
    assert!(check_ef_iff(&u, &x_bar()).unwrap().holds());
}

#[test]
fn printed_b_misses_u_bar_and_a_fitted_b_hits_it() {
    let x = BlockedPolyhedron::from_labels(x_bar());
    let printed = verify_map_image(&x, &map_b_printed(), &u_bar()).unwrap();
    assert!(!printed.valid);
    assert_eq!(printed.images[0].1, int_vec(&[4, 1, -3, -2, 10]));
    assert_eq!(printed.outside, vec![int_vec(&[4, 1, -3, -2, 10])]);

    let fitted = map_through_point(&x_bar_point(), &u_bar_point()).unwrap().unwrap();
    assert_eq!(fitted.mul_vec(&x_bar_point()).unwrap(), u_bar_point());
    assert!(verify_map_image(&x, &fitted, &u_bar()).unwrap().valid);
    // Particular solution: only the first column is used.
    assert_eq!(fitted.column(0), vec![ratio(3, 2), int(1), int(0), int(0), int(0)]);
}

#[test]
fn augmentation_example_rows_and_facts() {
    let w = build_augmentation(&build_example_1()).unwrap();
    let shown: Vec<String> = w
        .poly
        .constraints()
        .iter()
        .map(|c| c.display_with(w.poly.space()))
        .collect();
    assert_eq!(shown[0], "14 x1 + 7 x2 <= 42");
    assert_eq!(shown[3], "36 w1 - 2 w2 <= 46");
    assert_eq!(shown[4], "59/2 w1 + 1/2 w3 <= 42");
    let r = demonstrate_mutual_ef(&build_example_1()).unwrap();
    assert!(r.x1_projection_equals_p1);
    assert!(r.x2_projection_equals_p2);
    assert!(r.mixed_rows_redundant);
    assert_eq!(r.u_induced_rows, 0);
    assert_eq!(r.conclusions.len(), 2);
}

#[test]
fn auxiliary_solve_on_u_bar() {
    let link = LinkingMap::linear(map_a());
    for alpha in [int_vec(&[1, 0, 0]), int_vec(&[0, 0, 0]), int_vec(&[-3, 7, 2])] {
        let expected = efcheck_core::numeric::dot(&alpha, &x_bar_point());
        let two_step = solve_via_auxiliary(&u_bar(), &link, &alpha).unwrap();
        let direct = solve_direct(&u_bar(), &link, &alpha).unwrap();
        assert_eq!(two_step.value, expected);
        assert_eq!(direct.value, expected);
        assert_eq!(two_step.x_star, x_bar_point());
    }
}

#[test]
fn a_has_full_row_rank() {
    assert_eq!(map_a().rank(), 3);
    assert_eq!(map_a().transpose().rank(), 3);
    assert_eq!(Matrix::zeros(3, 5).rank(), 0);
}
