//! Exact two-phase simplex over the rationals.
//!
//! Problems are stated over an [`HPolyhedron`]: free variables are split into
//! a positive and a negative part, `≤` rows get a slack, `≥` and `=` rows get
//! an artificial variable, and phase one drives the artificials to zero.
//! Pivoting follows Bland's rule throughout, which guarantees termination on
//! degenerate problems at the price of speed.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{dot, Rational, Vector};
use crate::polyhedron::{HPolyhedron, LinearConstraint, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

/// Optimize `objective · z` over `feasible_set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vector,
    pub sense: Sense,
    pub feasible_set: HPolyhedron,
}

impl LpProblem {
    pub fn new(objective: Vector, sense: Sense, feasible_set: HPolyhedron) -> Result<Self> {
        if objective.len() != feasible_set.dim() {
            return Err(Error::DimensionMismatch(format!(
                "objective of length {} over a space of {}",
                objective.len(),
                feasible_set.dim()
            )));
        }
        Ok(LpProblem {
            objective,
            sense,
            feasible_set,
        })
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        solve(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

/// Result of a solve.
///
/// `Optimal` carries a feasible `point` with `value = objective · point`;
/// `Unbounded` carries a feasible `point` and a recession direction `ray`
/// along which the objective improves without bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub point: Option<Vector>,
    pub ray: Option<Vector>,
    pub iterations: usize,
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Optimal value; panics unless the status is `Optimal`.
    pub fn optimal_value(&self) -> &Rational {
        self.value.as_ref().expect("outcome is not optimal")
    }
}

pub fn solve(problem: &LpProblem) -> Result<LpOutcome> {
    if problem.objective.len() != problem.feasible_set.dim() {
        return Err(Error::DimensionMismatch(format!(
            "objective of length {} over a space of {}",
            problem.objective.len(),
            problem.feasible_set.dim()
        )));
    }
    optimize(
        &problem.feasible_set,
        problem.feasible_set.constraints().iter(),
        &problem.objective,
        problem.sense,
    )
}

/// Optimizes over the rows yielded by `rows` together with the
/// nonnegativity flags of `poly`; used by the redundancy probes to leave one
/// row out without cloning the polyhedron.
pub(crate) fn optimize<'a>(
    poly: &HPolyhedron,
    rows: impl Iterator<Item = &'a LinearConstraint>,
    objective: &[Rational],
    sense: Sense,
) -> Result<LpOutcome> {
    let mut tableau = Tableau::build(poly.nonneg(), rows);
    if tableau.trivially_infeasible {
        return Ok(infeasible(0));
    }
    let cap = 10 * (tableau.rows() + tableau.width()).pow(2);

    if !tableau.phase_one(cap)? {
        return Ok(infeasible(tableau.iterations));
    }

    let mut costs = tableau.column_costs(objective);
    if sense == Sense::Max {
        costs.iter_mut().for_each(|c| *c = -c.clone());
    }
    let point_of = |t: &Tableau| t.original_point(poly.dim());
    match tableau.phase_two(&costs, cap)? {
        PhaseTwo::Optimal => {
            let point = point_of(&tableau);
            Ok(LpOutcome {
                status: LpStatus::Optimal,
                value: Some(dot(objective, &point)),
                point: Some(point),
                ray: None,
                iterations: tableau.iterations,
            })
        }
        PhaseTwo::Unbounded(entering) => {
            let point = point_of(&tableau);
            let ray = tableau.original_ray(entering, poly.dim());
            Ok(LpOutcome {
                status: LpStatus::Unbounded,
                value: None,
                point: Some(point),
                ray: Some(ray),
                iterations: tableau.iterations,
            })
        }
    }
}

fn infeasible(iterations: usize) -> LpOutcome {
    LpOutcome {
        status: LpStatus::Infeasible,
        value: None,
        point: None,
        ray: None,
        iterations,
    }
}

enum PhaseTwo {
    Optimal,
    Unbounded(usize),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    /// Part of an original variable: `z_var += sign * column`.
    Structural { var: usize, positive: bool },
    Slack,
    Artificial,
}

struct Tableau {
    /// `rows() x (width() + 1)`; the last entry of each row is the rhs.
    rows: Vec<Vector>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    /// Reduced costs plus, in the last slot, minus the objective value.
    reduced: Vector,
    iterations: usize,
    trivially_infeasible: bool,
}

impl Tableau {
    fn build<'a>(nonneg: &[bool], constraints: impl Iterator<Item = &'a LinearConstraint>) -> Self {
        let mut kinds = Vec::new();
        let mut var_columns = Vec::with_capacity(nonneg.len());
        for (var, &nn) in nonneg.iter().enumerate() {
            let pos = kinds.len();
            kinds.push(ColumnKind::Structural {
                var,
                positive: true,
            });
            let neg = if nn {
                None
            } else {
                kinds.push(ColumnKind::Structural {
                    var,
                    positive: false,
                });
                Some(kinds.len() - 1)
            };
            var_columns.push((pos, neg));
        }

        // Normalize rows to a nonnegative rhs and decide which extra column
        // each needs.
        let mut trivially_infeasible = false;
        let mut normalized: Vec<(Vector, Relation, Rational)> = Vec::new();
        for c in constraints {
            if c.is_trivial() {
                if !c.rel.holds(&Rational::zero(), &c.rhs) {
                    trivially_infeasible = true;
                }
                continue;
            }
            let mut row = vec![Rational::zero(); kinds.len()];
            for (var, coef) in c.coeffs.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (pos, neg) = var_columns[var];
                row[pos] = coef.clone();
                if let Some(neg) = neg {
                    row[neg] = -coef.clone();
                }
            }
            let (row, rel, rhs) = if c.rhs.is_negative() {
                (
                    row.into_iter().map(|x| -x).collect(),
                    c.rel.flipped(),
                    -c.rhs.clone(),
                )
            } else {
                (row, c.rel, c.rhs.clone())
            };
            normalized.push((row, rel, rhs));
        }

        let structural = kinds.len();
        let slack_count = normalized.iter().filter(|(_, r, _)| *r != Relation::Eq).count();
        let art_count = normalized.iter().filter(|(_, r, _)| *r != Relation::Le).count();
        let width = structural + slack_count + art_count;
        kinds.extend(std::iter::repeat_n(ColumnKind::Slack, slack_count));
        kinds.extend(std::iter::repeat_n(ColumnKind::Artificial, art_count));

        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let mut next_slack = structural;
        let mut next_art = structural + slack_count;
        for (mut row, rel, rhs) in normalized {
            row.resize(width + 1, Rational::zero());
            match rel {
                Relation::Le => {
                    row[next_slack] = Rational::from_integer(1.into());
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = Rational::from_integer((-1).into());
                    next_slack += 1;
                    row[next_art] = Rational::from_integer(1.into());
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::from_integer(1.into());
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            row[width] = rhs;
            rows.push(row);
        }

        Tableau {
            rows,
            basis,
            kinds,
            reduced: vec![Rational::zero(); width + 1],
            iterations: 0,
            trivially_infeasible,
        }
    }

    fn rows(&self) -> usize {
        self.rows.len()
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn is_artificial(&self, col: usize) -> bool {
        self.kinds[col] == ColumnKind::Artificial
    }

    /// Internal costs for each column of an objective over original
    /// variables.
    fn column_costs(&self, objective: &[Rational]) -> Vector {
        self.kinds
            .iter()
            .map(|k| match *k {
                ColumnKind::Structural { var, positive } => {
                    if positive {
                        objective[var].clone()
                    } else {
                        -objective[var].clone()
                    }
                }
                _ => Rational::zero(),
            })
            .collect()
    }

    fn price(&mut self, costs: &[Rational]) {
        let w = self.width();
        let mut reduced = costs.to_vec();
        reduced.push(Rational::zero());
        for (r, row) in self.rows.iter().enumerate() {
            let cb = &costs[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                if !row[j].is_zero() {
                    reduced[j] -= cb * &row[j];
                }
            }
        }
        self.reduced = reduced;
    }

    /// Returns `false` when the rows admit no feasible point.
    fn phase_one(&mut self, cap: usize) -> Result<bool> {
        let costs: Vector = self
            .kinds
            .iter()
            .map(|k| {
                Rational::from_integer(i64::from(*k == ColumnKind::Artificial).into())
            })
            .collect();
        self.price(&costs);
        if let PhaseTwo::Unbounded(_) = self.run(cap)? {
            unreachable!("phase one objective is bounded below by zero");
        }
        let w = self.width();
        if !self.reduced[w].is_zero() {
            return Ok(false);
        }

        // Pivot zero-level artificials out of the basis; a row with no
        // eligible column is a linear combination of the others.
        let mut r = 0;
        while r < self.rows.len() {
            if !self.is_artificial(self.basis[r]) {
                r += 1;
                continue;
            }
            let col = (0..w).find(|&j| !self.is_artificial(j) && !self.rows[r][j].is_zero());
            match col {
                Some(j) => {
                    self.pivot(r, j);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
        Ok(true)
    }

    fn phase_two(&mut self, costs: &[Rational], cap: usize) -> Result<PhaseTwo> {
        self.price(costs);
        self.run(cap)
    }

    fn run(&mut self, cap: usize) -> Result<PhaseTwo> {
        let w = self.width();
        loop {
            // Bland: lowest-index improving column, lowest-index leaving
            // variable among ratio ties.
            let Some(entering) =
                (0..w).find(|&j| !self.is_artificial(j) && self.reduced[j].is_negative())
            else {
                return Ok(PhaseTwo::Optimal);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[entering].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[entering];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Ok(PhaseTwo::Unbounded(entering));
            };
            if self.iterations >= cap {
                return Err(Error::IterationLimit(cap));
            }
            self.pivot(r, entering);
            self.iterations += 1;
        }
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let support: Vec<usize> = (0..pivot_row.len())
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        let eliminate = |row: &mut Vector| {
            if row[col].is_zero() {
                return;
            }
            let factor = row[col].clone();
            for &j in &support {
                row[j] -= &factor * &pivot_row[j];
            }
        };
        for row in self.rows.iter_mut() {
            if !row.is_empty() {
                eliminate(row);
            }
        }
        eliminate(&mut self.reduced);
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    fn column_values(&self) -> Vector {
        let w = self.width();
        let mut values = vec![Rational::zero(); w];
        for (r, &b) in self.basis.iter().enumerate() {
            values[b] = self.rows[r][w].clone();
        }
        values
    }

    fn to_original(&self, columns: &[Rational], dim: usize) -> Vector {
        let mut z = vec![Rational::zero(); dim];
        for (j, kind) in self.kinds.iter().enumerate() {
            if let ColumnKind::Structural { var, positive } = *kind {
                if positive {
                    z[var] += &columns[j];
                } else {
                    z[var] -= &columns[j];
                }
            }
        }
        z
    }

    fn original_point(&self, dim: usize) -> Vector {
        self.to_original(&self.column_values(), dim)
    }

    fn original_ray(&self, entering: usize, dim: usize) -> Vector {
        let mut direction = vec![Rational::zero(); self.width()];
        direction[entering] = Rational::from_integer(1.into());
        for (r, &b) in self.basis.iter().enumerate() {
            direction[b] = -self.rows[r][entering].clone();
        }
        self.to_original(&direction, dim)
    }
}
