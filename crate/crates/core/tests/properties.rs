use efcheck_core::instances::random_bounded_polyhedron;
use efcheck_core::lp::Sense;
use efcheck_core::numeric::{int, ratio, Rational};
use efcheck_core::projection::{fm_eliminate_with, EliminationOrder};
use efcheck_core::vertex::{enumerate_vertices, DEFAULT_BASIS_LIMIT};
use efcheck_core::{HPolyhedron, Matrix};
use num::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(rational(), r * c).prop_map(move |e| Matrix::new(r, c, e).unwrap())
    })
}

fn polytope() -> impl Strategy<Value = HPolyhedron> {
    any::<u64>().prop_map(|seed| random_bounded_polyhedron(&mut ChaCha8Rng::seed_from_u64(seed), 3, 6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_transpose_invariant(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(&a * Rational::one(), a);
    }

    #[test]
    fn subset_is_reflexive_and_transitive(p in polytope(), seed in any::<u64>()) {
        prop_assert!(p.is_subset(&p).unwrap().holds());
        // p ⊆ p without a row ⊆ p without two rows
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = p.constraints().len();
        let i = rng.gen_range(0..m);
        let looser = p.without(i);
        let loosest = if looser.constraints().is_empty() {
            looser.clone()
        } else {
            looser.without(rng.gen_range(0..looser.constraints().len()))
        };
        prop_assert!(p.is_subset(&looser).unwrap().holds());
        prop_assert!(looser.is_subset(&loosest).unwrap().holds());
        prop_assert!(p.is_subset(&loosest).unwrap().holds());
    }

    #[test]
    fn elimination_order_does_not_change_the_projection(p in polytope()) {
        prop_assume!(p.dim() >= 2);
        let names: Vec<&str> = p.space().names().skip(1).collect();
        let reversed: Vec<&str> = names.iter().rev().copied().collect();
        let a = fm_eliminate_with(&p, &names, EliminationOrder::Heuristic).unwrap();
        let b = fm_eliminate_with(&p, &reversed, EliminationOrder::AsGiven).unwrap();
        prop_assert!(a.description.unwrap().equals(&b.description.unwrap()).unwrap());
    }

    #[test]
    fn lp_maximum_matches_vertex_maximum(p in polytope(), c in prop::collection::vec(-6i64..=6, 3)) {
        let c: Vec<Rational> = c.into_iter().take(p.dim()).map(int).collect();
        let vertices = enumerate_vertices(&p, DEFAULT_BASIS_LIMIT).unwrap().vertices;
        let best = vertices
            .iter()
            .map(|v| v.iter().zip(&c).map(|(x, y)| x * y).sum::<Rational>())
            .max()
            .unwrap();
        let out = p.optimize(&c, Sense::Max).unwrap();
        prop_assert_eq!(out.optimal_value(), &best);
    }

    #[test]
    fn redundancy_removal_keeps_the_set_and_leaves_no_redundant_row(p in polytope()) {
        let r = p.remove_redundant().unwrap();
        prop_assert!(r.reduced.equals(&p).unwrap());
        prop_assert_eq!(
            enumerate_vertices(&r.reduced, DEFAULT_BASIS_LIMIT).unwrap(),
            enumerate_vertices(&p, DEFAULT_BASIS_LIMIT).unwrap()
        );
        for i in 0..r.reduced.constraints().len() {
            prop_assert!(!r.reduced.without(i).is_subset(&r.reduced).unwrap().holds());
        }
    }
}
