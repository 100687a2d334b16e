//! Optimizing over `X = {x : x = C w + b, w ∈ U}` through `U`.
//!
//! `min αᵀx` over the joint polyhedron `{(x, w) : x − C w = b, w ∈ U}` has
//! the same value as `min (αᵀC) w` over `U` plus the constant `αᵀb`; the
//! optimal `x` is read back as `C w* + b`.

use std::thread;

use num::Zero;

use crate::error::{Error, Result};
use crate::lp::{LpStatus, Sense};
use crate::numeric::{dot, Matrix, Rational, Vector};
use crate::polyhedron::{Block, HPolyhedron, LinearConstraint, VarSpace};

/// The affine link `x = C w + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingMap {
    /// `p × q`.
    pub c: Matrix,
    /// Length `p`.
    pub b: Vector,
}

impl LinkingMap {
    pub fn new(c: Matrix, b: Vector) -> Result<Self> {
        if b.len() != c.rows() {
            return Err(Error::DimensionMismatch(format!(
                "C has {} rows but b has length {}",
                c.rows(),
                b.len()
            )));
        }
        Ok(LinkingMap { c, b })
    }

    /// `x = C w`.
    pub fn linear(c: Matrix) -> Self {
        let b = vec![Rational::zero(); c.rows()];
        LinkingMap { c, b }
    }

    pub fn apply(&self, w: &[Rational]) -> Result<Vector> {
        Ok(self
            .c
            .mul_vec(w)?
            .into_iter()
            .zip(&self.b)
            .map(|(a, b)| a + b)
            .collect())
    }

    fn check(&self, u: &HPolyhedron, alpha: &[Rational]) -> Result<()> {
        if self.c.cols() != u.dim() {
            return Err(Error::DimensionMismatch(format!(
                "C has {} columns but U has dimension {}",
                self.c.cols(),
                u.dim()
            )));
        }
        if alpha.len() != self.c.rows() {
            return Err(Error::DimensionMismatch(format!(
                "alpha has length {} but x has dimension {}",
                alpha.len(),
                self.c.rows()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliarySolution {
    pub w_star: Vector,
    pub x_star: Vector,
    /// `αᵀ x_star`.
    pub value: Rational,
}

fn solved(status: LpStatus, what: &str) -> Result<()> {
    match status {
        LpStatus::Optimal => Ok(()),
        LpStatus::Infeasible => Err(Error::Infeasible(format!("{what} is infeasible"))),
        LpStatus::Unbounded => Err(Error::Unbounded(format!("{what} is unbounded"))),
    }
}

/// Two steps: minimize `(αᵀC) w` over `U`, then set `x* = C w* + b`.
pub fn solve_via_auxiliary(
    u: &HPolyhedron,
    link: &LinkingMap,
    alpha: &[Rational],
) -> Result<AuxiliarySolution> {
    link.check(u, alpha)?;
    let objective = link.c.left_mul_vec(alpha)?;
    let out = u.optimize(&objective, Sense::Min)?;
    solved(out.status, "the auxiliary LP over U")?;
    let w_star = out.point.expect("optimal outcome carries a point");
    let x_star = link.apply(&w_star)?;
    let value = out.value.expect("optimal outcome carries a value") + dot(alpha, &link.b);
    debug_assert_eq!(value, dot(alpha, &x_star));
    Ok(AuxiliarySolution {
        w_star,
        x_star,
        value,
    })
}

/// The joint polyhedron `{(x, w) : x − C w = b, w ∈ U}` with `x` free.
pub fn joint_polyhedron(u: &HPolyhedron, link: &LinkingMap) -> Result<HPolyhedron> {
    if link.c.cols() != u.dim() {
        return Err(Error::DimensionMismatch(format!(
            "C has {} columns but U has dimension {}",
            link.c.cols(),
            u.dim()
        )));
    }
    let p = link.c.rows();
    let mut prefix = "x".to_owned();
    let x_space = loop {
        let s = VarSpace::uniform(&prefix, p, Block::X);
        if s.names().all(|n| u.space().index_of(n).is_none()) {
            break s;
        }
        prefix.insert(0, '_');
    };
    let space = x_space.concat(&u.space().relabel(Block::W))?;
    let target: Vec<usize> = (p..p + u.dim()).collect();
    let mut joint = u.embed(space, &target)?;
    for i in 0..p {
        let mut coeffs = vec![Rational::zero(); p + u.dim()];
        coeffs[i] = Rational::from_integer(1.into());
        for j in 0..u.dim() {
            coeffs[p + j] = -link.c[(i, j)].clone();
        }
        joint.push(LinearConstraint::eq(coeffs, link.b[i].clone()))?;
    }
    Ok(joint)
}

/// Minimizes `αᵀx` over the joint polyhedron directly.
pub fn solve_direct(
    u: &HPolyhedron,
    link: &LinkingMap,
    alpha: &[Rational],
) -> Result<AuxiliarySolution> {
    link.check(u, alpha)?;
    let joint = joint_polyhedron(u, link)?;
    let p = link.c.rows();
    let mut objective = alpha.to_vec();
    objective.resize(joint.dim(), Rational::zero());
    let out = joint.optimize(&objective, Sense::Min)?;
    solved(out.status, "the joint LP")?;
    let point = out.point.expect("optimal outcome carries a point");
    Ok(AuxiliarySolution {
        x_star: point[..p].to_vec(),
        w_star: point[p..].to_vec(),
        value: out.value.expect("optimal outcome carries a value"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCase {
    pub alpha: Vector,
    /// Optimum of the joint problem.
    pub direct: Rational,
    /// Optimum of `(αᵀC) w` over `U`, without the constant.
    pub auxiliary: Rational,
    /// `αᵀ b`.
    pub offset: Rational,
}

impl EquivalenceCase {
    pub fn agrees(&self) -> bool {
        self.direct == &self.auxiliary + &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub cases: Vec<EquivalenceCase>,
    /// Present when `rank(C)` equals the dimension of `U`, so `w ↦ C w + b`
    /// is injective.
    pub injectivity_note: Option<String>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.cases.iter().all(EquivalenceCase::agrees)
    }
}

/// Solves both problems for every `α`, in parallel.
pub fn check_equivalence(
    u: &HPolyhedron,
    link: &LinkingMap,
    alphas: &[Vector],
) -> Result<EquivalenceReport> {
    let case = |alpha: &Vector| -> Result<EquivalenceCase> {
        let direct = solve_direct(u, link, alpha)?.value;
        let offset = dot(alpha, &link.b);
        let auxiliary = solve_via_auxiliary(u, link, alpha)?.value - &offset;
        Ok(EquivalenceCase {
            alpha: alpha.clone(),
            direct,
            auxiliary,
            offset,
        })
    };
    let cases = thread::scope(|s| {
        let handles: Vec<_> = alphas.iter().map(|a| s.spawn(move || case(a))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("equivalence worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let injectivity_note = (link.c.rank() == u.dim()).then(|| {
        format!(
            "rank(C) = {} = dim(w), so the link is one-to-one",
            u.dim()
        )
    });
    Ok(EquivalenceReport {
        cases,
        injectivity_note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{map_a, u_bar, x_bar_point};
    use crate::numeric::{int, int_vec};

    #[test]
    fn two_step_solve_recovers_the_point() {
        let link = LinkingMap::linear(map_a());
        let aux = solve_via_auxiliary(&u_bar(), &link, &int_vec(&[1, 0, 0])).unwrap();
        assert_eq!(aux.x_star, x_bar_point());
        assert_eq!(aux.value, int(2));
        let direct = solve_direct(&u_bar(), &link, &int_vec(&[1, 0, 0])).unwrap();
        assert_eq!(direct, aux);
    }

    #[test]
    fn zero_objective_and_shift() {
        let link = LinkingMap::linear(map_a());
        let zero = solve_via_auxiliary(&u_bar(), &link, &int_vec(&[0, 0, 0])).unwrap();
        assert_eq!(zero.value, int(0));
        let shifted = LinkingMap::new(map_a(), int_vec(&[1, 1, 1])).unwrap();
        let alphas = vec![int_vec(&[1, 2, 3]), int_vec(&[0, 0, 0])];
        let r = check_equivalence(&u_bar(), &shifted, &alphas).unwrap();
        assert!(r.holds());
        assert_eq!(r.cases[0].offset, int(6));
        assert_eq!(r.cases[0].direct, int(2 + 2 + 15 + 6));
        assert!(r.injectivity_note.is_none());
    }

    #[test]
    fn dimension_errors() {
        let link = LinkingMap::linear(map_a());
        assert!(solve_via_auxiliary(&u_bar(), &link, &int_vec(&[1, 0])).is_err());
        assert!(LinkingMap::new(map_a(), int_vec(&[1])).is_err());
    }
}
