//! Small named instances used by the guide, the tests and `paper-suite`.
//!
//! * [`u_bar`]: `Ū = {w ∈ ℝ⁵₊ : w1 + w2 = 5, w1 − w2 = 1, w3 + w4 + w5 = 0}`,
//!   whose only point is `(3, 2, 0, 0, 0)`.
//! * [`x_bar`]: an inequality description of the single point `(2, 1, 5)`.
//! * [`map_a`]: a 3×5 matrix sending `(3, 2, 0, 0, 0)` to `(2, 1, 5)`.
//! * [`map_b_printed`]: a 5×3 matrix offered as a map back from `(2, 1, 5)`
//!   to `(3, 2, 0, 0, 0)`; it does not actually do so (its image is
//!   `(4, 1, −3, −2, 10)`).

use rand::Rng;

use crate::numeric::{int, ratio, Matrix, Rational};
use crate::polyhedron::{Block, HPolyhedron, LinearConstraint, VarSpace};

const UBAR_ROWS: [&str; 3] = ["w1 + w2 = 5", "w1 - w2 = 1", "w3 + w4 + w5 = 0"];

/// `Ū` over `w1..w5` (all labelled `W`, all nonnegative).
pub fn u_bar() -> HPolyhedron {
    HPolyhedron::parse(
        VarSpace::uniform("w", 5, Block::W),
        &UBAR_ROWS,
        &["w1", "w2", "w3", "w4", "w5"],
    )
    .expect("builtin instance")
}

/// The unique point of [`u_bar`].
pub fn u_bar_point() -> Vec<Rational> {
    vec![int(3), int(2), int(0), int(0), int(0)]
}

/// `X̄` over `x1..x3`: `x1 − x2 + x3 = 6`, `x1 + x2 ≥ 3`, `x1 + x3 ≤ 7`,
/// `x2 + x3 ≥ 6`, `x1 ≤ 2`, `x ≥ 0`. Its feasible set is `{(2, 1, 5)}`.
pub fn x_bar() -> HPolyhedron {
    HPolyhedron::parse(
        VarSpace::uniform("x", 3, Block::X),
        &[
            "x1 - x2 + x3 = 6",
            "x1 + x2 >= 3",
            "x1 + x3 <= 7",
            "x2 + x3 >= 6",
            "x1 <= 2",
        ],
        &["x1", "x2", "x3"],
    )
    .expect("builtin instance")
}

/// The unique point of [`x_bar`].
pub fn x_bar_point() -> Vec<Rational> {
    vec![int(2), int(1), int(5)]
}

/// The space `x1..x3 (X) ∪ w1..w5 (W)`.
pub fn xw_space() -> VarSpace {
    VarSpace::uniform("x", 3, Block::X)
        .concat(&VarSpace::uniform("w", 5, Block::W))
        .expect("disjoint names")
}

/// `Ū` embedded in `(x, w)`-space with the three `x` variables left
/// completely unconstrained.
pub fn u_bar_embedded() -> HPolyhedron {
    u_bar()
        .embed(xw_space(), &[3, 4, 5, 6, 7])
        .expect("builtin instance")
}

/// `U′`: [`u_bar_embedded`] plus the linking rows `x − A w = 0` of
/// [`map_a`].
pub fn u_prime() -> HPolyhedron {
    let mut u = u_bar_embedded();
    for row in link_rows(&map_a()) {
        u.push(row).expect("row fits the space");
    }
    u
}

/// Rows `x_i − (M w)_i = 0` over [`xw_space`].
fn link_rows(m: &Matrix) -> Vec<LinearConstraint> {
    (0..m.rows())
        .map(|i| {
            let mut coeffs = vec![int(0); 8];
            coeffs[i] = int(1);
            for j in 0..m.cols() {
                coeffs[3 + j] = -m[(i, j)].clone();
            }
            LinearConstraint::eq(coeffs, int(0))
        })
        .collect()
}

/// The 3×5 map `A` with `A · (3, 2, 0, 0, 0) = (2, 1, 5)`.
pub fn map_a() -> Matrix {
    Matrix::from_rows(vec![
        vec![int(-1), ratio(5, 2), int(2), int(3), int(4)],
        vec![int(1), int(-1), int(5), int(6), int(7)],
        vec![int(-1), int(4), int(8), int(9), int(10)],
    ])
    .expect("builtin matrix")
}

/// The 5×3 matrix `B` exactly as printed; see the module docs.
pub fn map_b_printed() -> Matrix {
    Matrix::from_i64(&[
        &[-1, 1, 1],
        &[1, -1, 0],
        &[3, 1, -2],
        &[2, -11, 1],
        &[-10, 30, 0],
    ])
}

/// The origin of `ℝ³` as a polytope.
pub fn origin3() -> HPolyhedron {
    HPolyhedron::parse(
        VarSpace::uniform("x", 3, Block::X),
        &["x1 = 0", "x2 = 0", "x3 = 0"],
        &[],
    )
    .expect("builtin instance")
}

/// `P1 = {x ∈ ℝ²₊ : 2 x1 + x2 ≤ 6}` of the augmentation example.
pub fn example_p1() -> HPolyhedron {
    HPolyhedron::parse(
        VarSpace::uniform("x", 2, Block::X),
        &["2 x1 + x2 <= 6"],
        &["x1", "x2"],
    )
    .expect("builtin instance")
}

/// `P2 = {w ∈ ℝ³₊ : 18 w1 − w2 ≤ 23, 59 w1 + w3 ≤ 84}`; unbounded in `w2`.
pub fn example_p2() -> HPolyhedron {
    HPolyhedron::parse(
        VarSpace::uniform("w", 3, Block::W),
        &["18 w1 - w2 <= 23", "59 w1 + w3 <= 84"],
        &["w1", "w2", "w3"],
    )
    .expect("builtin instance")
}

/// Random nonempty polytope in `1..=max_vars` variables (named `z1..`).
///
/// Every variable is nonnegative and bounded above by a row `z_j ≤ b_j`;
/// the remaining rows (up to `max_rows` in total) have integer coefficients
/// in `[-5, 5]` and hold at an integer anchor point inside the box.
pub fn random_bounded_polyhedron<R: Rng>(rng: &mut R, max_vars: usize, max_rows: usize) -> HPolyhedron {
    let n = rng.gen_range(1..=max_vars.max(1));
    let extra = max_rows.saturating_sub(n);
    let m = if extra == 0 { 0 } else { rng.gen_range(0..=extra) };
    let bounds: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let anchor: Vec<i64> = bounds.iter().map(|&b| rng.gen_range(0..=b)).collect();
    let mut rows = Vec::with_capacity(n + m);
    for (j, &b) in bounds.iter().enumerate() {
        let mut coeffs = vec![int(0); n];
        coeffs[j] = int(1);
        rows.push(LinearConstraint::le(coeffs, int(b)));
    }
    while rows.len() < n + m {
        let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let at: i64 = coeffs.iter().zip(&anchor).map(|(c, x)| c * x).sum();
        let rhs = at + rng.gen_range(0..=4);
        rows.push(LinearConstraint::le(coeffs.into_iter().map(int).collect(), int(rhs)));
    }
    HPolyhedron::new(VarSpace::uniform("z", n, Block::W), rows, vec![true; n])
        .expect("generated dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinguished_points_are_members() {
        assert!(u_bar().contains_point(&u_bar_point()).unwrap());
        assert!(x_bar().contains_point(&x_bar_point()).unwrap());
        assert!(!x_bar().contains_point(&[int(0), int(0), int(0)]).unwrap());
        let mut joint = x_bar_point();
        joint.extend(u_bar_point());
        assert!(u_prime().contains_point(&joint).unwrap());
    }

    #[test]
    fn printed_maps() {
        assert_eq!(map_a().mul_vec(&u_bar_point()).unwrap(), x_bar_point());
        let image = map_b_printed().mul_vec(&x_bar_point()).unwrap();
        assert_eq!(image, vec![int(4), int(1), int(-3), int(-2), int(10)]);
    }
}
