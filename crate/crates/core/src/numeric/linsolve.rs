use num::Zero;

use super::matrix::row_reduce;
use super::{Matrix, Rational, Vector};
use crate::error::{Error, Result};

/// Solution set of `A z = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    Unique(Vector),
    /// A particular solution plus a basis of the null space of `A`.
    Parametric {
        particular: Vector,
        basis: Vec<Vector>,
    },
    Inconsistent,
}

impl SolutionSet {
    /// Any one solution, if the system is consistent.
    pub fn any_solution(&self) -> Option<&Vector> {
        match self {
            SolutionSet::Unique(z) => Some(z),
            SolutionSet::Parametric { particular, .. } => Some(particular),
            SolutionSet::Inconsistent => None,
        }
    }
}

/// Solves `A z = b` exactly by Gauss-Jordan elimination.
///
/// The particular solution sets every free variable to zero; the null-space
/// basis has one vector per free column, with a one in that column.
pub fn solve_linear_system(a: &Matrix, b: &[Rational]) -> Result<SolutionSet> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut aug: Vec<Vector> = (0..a.rows())
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);

    if aug[pivots.len()..].iter().any(|row| !row[n].is_zero()) {
        return Ok(SolutionSet::Inconsistent);
    }

    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][n].clone();
    }
    if pivots.len() == n {
        return Ok(SolutionSet::Unique(particular));
    }

    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = super::int(1);
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[r][f].clone();
            }
            v
        })
        .collect();
    Ok(SolutionSet::Parametric { particular, basis })
}
