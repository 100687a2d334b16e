//! Exact vertex and extreme-ray enumeration by brute-force basis search.
//!
//! Every vertex of a pointed polyhedron is the unique solution of its
//! equality rows together with `d - rank(E)` tight inequality rows, where
//! `d` is the dimension and `E` the equality block. Enumerating all such
//! choices, solving each square system exactly and keeping the feasible
//! solutions is hopeless at scale but exact and simple for the desk-sized
//! instances this crate works with. Degenerate vertices (many tight rows)
//! are found repeatedly and merged by exact equality.

use std::collections::BTreeSet;

use itertools::Itertools;
use num::Zero;

use crate::error::{Error, Result};
use crate::numeric::{normalize_direction, solve_linear_system, Matrix, Rational, SolutionSet, Vector};
use crate::polyhedron::{HPolyhedron, LinearConstraint, Relation, VPolytope};

/// Default guard on the number of candidate bases.
pub const DEFAULT_BASIS_LIMIT: u128 = 2_000_000;

/// `n choose k` without overflow for the sizes that matter here.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of candidate bases [`enumerate_vertices`] would examine.
pub fn candidate_bases(p: &HPolyhedron) -> u128 {
    let (eq, ineq) = split_rows(p);
    let rank = coefficient_rank(&eq, p.dim());
    let k = p.dim() - rank;
    binomial(ineq.len(), k) + if k > 0 { binomial(ineq.len(), k - 1) } else { 0 }
}

/// All vertices (and, for unbounded input, extreme rays) in sorted order.
///
/// An empty polyhedron yields an empty result. A nonempty polyhedron that
/// contains a line has no vertices and is reported as
/// [`Error::NotPointed`].
pub fn enumerate_vertices(p: &HPolyhedron, limit: u128) -> Result<VPolytope> {
    let empty = VPolytope {
        space: p.space().clone(),
        vertices: Vec::new(),
        rays: Vec::new(),
    };
    let (eq, ineq) = split_rows(p);
    let dim = p.dim();
    let eq_rank = coefficient_rank(&eq, dim);
    let k = dim - eq_rank;
    let needed = candidate_bases(p);
    if needed > limit {
        return Err(Error::LimitExceeded {
            what: "vertex enumeration bases",
            needed,
            limit,
        });
    }
    if p.is_empty()? {
        return Ok(empty);
    }
    let all: Vec<&LinearConstraint> = eq.iter().chain(ineq.iter()).collect();
    if coefficient_rank(&all.iter().map(|c| (*c).clone()).collect::<Vec<_>>(), dim) < dim {
        return Err(Error::NotPointed);
    }

    let mut vertices = BTreeSet::new();
    for chosen in (0..ineq.len()).combinations(k) {
        let (a, b) = system(&eq, chosen.iter().map(|&i| &ineq[i]), dim, false);
        if let SolutionSet::Unique(z) = solve_linear_system(&a, &b)? {
            if p.contains_point(&z)? {
                vertices.insert(z);
            }
        }
    }

    let mut rays = BTreeSet::new();
    if k > 0 {
        for chosen in (0..ineq.len()).combinations(k - 1) {
            let (a, b) = system(&eq, chosen.iter().map(|&i| &ineq[i]), dim, true);
            let SolutionSet::Parametric { basis, .. } = solve_linear_system(&a, &b)? else {
                continue;
            };
            if basis.len() != 1 {
                continue;
            }
            let d = &basis[0];
            for candidate in [d.clone(), d.iter().map(|x| -x).collect::<Vector>()] {
                if ineq.iter().all(|row| row.lhs(&candidate) <= Rational::zero()) {
                    rays.insert(normalize_direction(&candidate));
                }
            }
        }
    }

    Ok(VPolytope {
        space: p.space().clone(),
        vertices: vertices.into_iter().collect(),
        rays: rays.into_iter().collect(),
    })
}

/// Whether `target` is a convex combination of `points` (LP in the weights).
pub fn in_convex_hull(points: &[Vector], target: &[Rational]) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    if points.iter().any(|p| p.len() != target.len()) {
        return Err(Error::DimensionMismatch("points of differing dimension".into()));
    }
    let n = points.len();
    let mut rows = Vec::with_capacity(target.len() + 1);
    for (i, t) in target.iter().enumerate() {
        let coeffs = points.iter().map(|p| p[i].clone()).collect();
        rows.push(LinearConstraint::eq(coeffs, t.clone()));
    }
    rows.push(LinearConstraint::eq(
        vec![Rational::from_integer(1.into()); n],
        Rational::from_integer(1.into()),
    ));
    let weights = HPolyhedron::new(
        crate::polyhedron::VarSpace::uniform("lambda", n, crate::polyhedron::Block::W),
        rows,
        vec![true; n],
    )?;
    Ok(!weights.is_empty()?)
}

/// Equality rows, and every other row in `≤` form (nonnegativity flags
/// included as `-z_j ≤ 0`).
fn split_rows(p: &HPolyhedron) -> (Vec<LinearConstraint>, Vec<LinearConstraint>) {
    p.expanded_rows()
        .into_iter()
        .filter(|c| !c.is_trivial())
        .partition(|c| c.rel == Relation::Eq)
}

fn coefficient_rank(rows: &[LinearConstraint], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(rows.iter().map(|c| c.coeffs.clone()).collect())
        .expect("rows share the space dimension");
    debug_assert_eq!(m.cols(), dim);
    m.rank()
}

fn system<'a>(
    eq: &'a [LinearConstraint],
    tight: impl Iterator<Item = &'a LinearConstraint>,
    dim: usize,
    homogeneous: bool,
) -> (Matrix, Vector) {
    let rows: Vec<&LinearConstraint> = eq.iter().chain(tight).collect();
    let mut a = Matrix::zeros(rows.len(), dim);
    let mut b = Vec::with_capacity(rows.len());
    for (i, c) in rows.iter().enumerate() {
        for j in 0..dim {
            a[(i, j)] = c.coeffs[j].clone();
        }
        b.push(if homogeneous {
            Rational::zero()
        } else {
            c.rhs.clone()
        });
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int_vec;
    use crate::polyhedron::{Block, VarSpace};

    fn poly(n: usize, rows: &[&str], nonneg: &[&str]) -> HPolyhedron {
        HPolyhedron::parse(VarSpace::uniform("x", n, Block::X), rows, nonneg).unwrap()
    }

    #[test]
    fn unit_square_has_four_vertices() {
        let p = poly(2, &["x1 <= 1", "x2 <= 1"], &["x1", "x2"]);
        let v = enumerate_vertices(&p, DEFAULT_BASIS_LIMIT).unwrap();
        assert_eq!(
            v.vertices,
            vec![int_vec(&[0, 0]), int_vec(&[0, 1]), int_vec(&[1, 0]), int_vec(&[1, 1])]
        );
        assert!(v.rays.is_empty());
    }

    #[test]
    fn unbounded_polyhedron_reports_rays() {
        let p = poly(2, &["x1 - x2 <= 1"], &["x1", "x2"]);
        let v = enumerate_vertices(&p, DEFAULT_BASIS_LIMIT).unwrap();
        assert_eq!(v.vertices, vec![int_vec(&[0, 0]), int_vec(&[1, 0])]);
        assert_eq!(v.rays, vec![int_vec(&[0, 1]), int_vec(&[1, 1])]);
    }

    #[test]
    fn empty_and_non_pointed_inputs() {
        let empty = poly(1, &["x1 >= 1", "x1 <= 0"], &[]);
        assert!(enumerate_vertices(&empty, 100).unwrap().is_empty());
        let strip = poly(2, &["x1 <= 1", "x1 >= 0"], &[]);
        assert_eq!(enumerate_vertices(&strip, 100), Err(Error::NotPointed));
    }

    #[test]
    fn limit_is_enforced() {
        let p = poly(2, &["x1 <= 1", "x2 <= 1"], &["x1", "x2"]);
        assert!(matches!(
            enumerate_vertices(&p, 3),
            Err(Error::LimitExceeded { needed: 10, .. })
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }
}
