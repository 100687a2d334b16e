use num::{One, Signed, Zero};

use super::{HPolyhedron, LinearConstraint, Relation};
use crate::error::{Error, Result};
use crate::lp::{self, LpStatus, Sense};
use crate::numeric::{normalize_direction, Rational, Vector};

/// Outcome of a containment test `P ⊆ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    /// `vacuous` is set when `P` is empty.
    Contained { vacuous: bool },
    /// `witness` lies in `P` and violates `Q`'s row `violated` (rendered
    /// against `Q`'s variable names).
    Violated { witness: Vector, violated: String },
}

impl Containment {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Contained { .. })
    }

    pub fn witness(&self) -> Option<&Vector> {
        match self {
            Containment::Violated { witness, .. } => Some(witness),
            Containment::Contained { .. } => None,
        }
    }
}

/// Result of [`HPolyhedron::remove_redundant`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redundancy {
    pub reduced: HPolyhedron,
    /// Indices (into the input's constraint list) of the removed rows.
    pub removed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundedness {
    Bounded,
    /// A nonzero recession direction, scaled so its first nonzero entry has
    /// absolute value one.
    Unbounded { direction: Vector },
}

impl Boundedness {
    pub fn is_bounded(&self) -> bool {
        matches!(self, Boundedness::Bounded)
    }
}

impl HPolyhedron {
    pub fn contains_point(&self, z: &[Rational]) -> Result<bool> {
        self.check_point(z)?;
        let signs_ok = self
            .nonneg()
            .iter()
            .zip(z)
            .all(|(&nn, v)| !nn || !v.is_negative());
        Ok(signs_ok && self.constraints().iter().all(|c| c.is_satisfied_by(z)))
    }

    /// Some point of the polyhedron, or `None` when it is empty.
    pub fn find_point(&self) -> Result<Option<Vector>> {
        let zero = vec![Rational::zero(); self.dim()];
        let out = lp::optimize(self, self.constraints().iter(), &zero, Sense::Min)?;
        Ok(out.point.filter(|_| out.status != LpStatus::Infeasible))
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.find_point()?.is_none())
    }

    /// Maximize (or minimize) a linear function over the polyhedron.
    pub fn optimize(&self, objective: &[Rational], sense: Sense) -> Result<lp::LpOutcome> {
        if objective.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "objective of length {} over a space of {}",
                objective.len(),
                self.dim()
            )));
        }
        lp::optimize(self, self.constraints().iter(), objective, sense)
    }

    /// Is `row` implied by this polyhedron's rows, leaving out `skip`?
    ///
    /// Returns `None` when implied, otherwise a point of the (reduced)
    /// polyhedron that violates `row`.
    pub(crate) fn violating_point(
        &self,
        skip: Option<usize>,
        row: &LinearConstraint,
    ) -> Result<Option<Vector>> {
        let directions: &[Sense] = match row.rel {
            Relation::Le => &[Sense::Max],
            Relation::Ge => &[Sense::Min],
            Relation::Eq => &[Sense::Max, Sense::Min],
        };
        for &sense in directions {
            let rows = self
                .constraints()
                .iter()
                .enumerate()
                .filter(|(i, _)| Some(*i) != skip)
                .map(|(_, c)| c);
            let out = lp::optimize(self, rows, &row.coeffs, sense)?;
            let bad = |v: &Rational| match sense {
                Sense::Max => *v > row.rhs,
                Sense::Min => *v < row.rhs,
            };
            match out.status {
                LpStatus::Infeasible => return Ok(None),
                LpStatus::Optimal => {
                    if bad(out.optimal_value()) {
                        return Ok(out.point);
                    }
                }
                LpStatus::Unbounded => {
                    let point = out.point.expect("unbounded outcome carries a point");
                    let ray = out.ray.expect("unbounded outcome carries a ray");
                    return Ok(Some(push_past(&point, &ray, row)));
                }
            }
        }
        Ok(None)
    }

    /// Decides `self ⊆ other` with one LP per row (and per nonnegativity
    /// flag) of `other`.
    pub fn is_subset(&self, other: &HPolyhedron) -> Result<Containment> {
        if !self.space().same_names(other.space()) {
            return Err(Error::DimensionMismatch(
                "containment requires identical variable spaces".into(),
            ));
        }
        if self.is_empty()? {
            return Ok(Containment::Contained { vacuous: true });
        }
        for c in other.constraints() {
            if let Some(witness) = self.violating_point(None, c)? {
                return Ok(Containment::Violated {
                    witness,
                    violated: c.display_with(other.space()),
                });
            }
        }
        for j in (0..other.dim()).filter(|&j| other.is_nonneg(j)) {
            let mut coeffs = vec![Rational::zero(); other.dim()];
            coeffs[j] = Rational::one();
            let row = LinearConstraint::ge(coeffs, Rational::zero());
            if let Some(witness) = self.violating_point(None, &row)? {
                return Ok(Containment::Violated {
                    witness,
                    violated: format!("{} >= 0", other.space().name(j)),
                });
            }
        }
        Ok(Containment::Contained { vacuous: false })
    }

    /// Point-set equality by mutual containment.
    pub fn equals(&self, other: &HPolyhedron) -> Result<bool> {
        Ok(self.is_subset(other)?.holds() && other.is_subset(self)?.holds())
    }

    /// Drops rows one at a time, in order, whenever the remaining rows imply
    /// them. Nonnegativity flags are never removed.
    pub fn remove_redundant(&self) -> Result<Redundancy> {
        if self.is_empty()? {
            return Err(Error::Infeasible(
                "redundancy removal needs a nonempty polyhedron".into(),
            ));
        }
        let mut current = self.clone();
        let mut removed = Vec::new();
        let mut offset = 0;
        for original in 0..self.constraints().len() {
            let i = original - offset;
            let row = current.constraints()[i].clone();
            if current.violating_point(Some(i), &row)?.is_none() {
                current = current.without(i);
                removed.push(original);
                offset += 1;
            }
        }
        Ok(Redundancy {
            reduced: current,
            removed,
        })
    }

    /// Whether every coordinate is bounded above and below.
    pub fn is_bounded(&self) -> Result<Boundedness> {
        if self.is_empty()? {
            return Err(Error::Infeasible("boundedness of an empty polyhedron".into()));
        }
        for j in 0..self.dim() {
            for sense in [Sense::Max, Sense::Min] {
                let mut e = vec![Rational::zero(); self.dim()];
                e[j] = Rational::one();
                let out = self.optimize(&e, sense)?;
                if out.status == LpStatus::Unbounded {
                    let ray = out.ray.expect("unbounded outcome carries a ray");
                    return Ok(Boundedness::Unbounded {
                        direction: normalize_direction(&ray),
                    });
                }
            }
        }
        Ok(Boundedness::Bounded)
    }
}

/// Moves `point` along `ray` until `row` is strictly violated; `ray` must
/// move the row's left-hand side in the violating direction.
fn push_past(point: &[Rational], ray: &[Rational], row: &LinearConstraint) -> Vector {
    let at = row.lhs(point);
    let slope = row.lhs(ray);
    debug_assert!(!slope.is_zero());
    let gap = (&row.rhs - &at) / &slope;
    let step = if gap.is_negative() {
        Rational::one()
    } else {
        gap + Rational::one()
    };
    point
        .iter()
        .zip(ray)
        .map(|(p, r)| p + r * &step)
        .collect()
}
