//! Projection by Fourier–Motzkin elimination.
//!
//! Variables occurring in an equality row are removed by substitution;
//! the rest are eliminated by pairing every row with a positive coefficient
//! against every row with a negative one. After each single-variable step the
//! rows are canonicalized, deduplicated and pruned with LP redundancy tests,
//! which keeps the row count from exploding on small inputs.

use std::collections::BTreeSet;

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::polyhedron::{Block, HPolyhedron, LinearConstraint, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProjectionKind {
    /// A genuine polyhedron over the surviving variables.
    Polyhedron,
    /// No constraint mentions a surviving variable: the projection is the
    /// whole space.
    FullSpace,
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EliminationMethod {
    Substitution,
    FourierMotzkin,
}

/// Bookkeeping for one eliminated variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationStep {
    pub variable: String,
    pub method: EliminationMethod,
    /// Rows with a positive / negative coefficient on the variable.
    pub positive: usize,
    pub negative: usize,
    /// Rows created by combining a positive with a negative row.
    pub induced: usize,
    /// Rows left after canonicalization and redundancy pruning.
    pub rows_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionResult {
    pub kind: ProjectionKind,
    /// Description over the surviving variables; `None` only when empty. A
    /// full-space projection carries a description with no rows.
    pub description: Option<HPolyhedron>,
    pub steps: Vec<EliminationStep>,
}

impl ProjectionResult {
    pub fn is_full_space(&self) -> bool {
        self.kind == ProjectionKind::FullSpace
    }

    /// Total rows induced by Fourier–Motzkin pairing across all steps.
    pub fn induced_rows(&self) -> usize {
        self.steps.iter().map(|s| s.induced).sum()
    }
}

/// Order in which [`fm_eliminate_with`] removes variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationOrder {
    /// Equalities first, then the variable minimizing
    /// `#positive × #negative` rows.
    Heuristic,
    /// Exactly the order of the `drop` list (substitution is still used
    /// when the variable sits in an equality row).
    AsGiven,
}

/// Projects `p` onto the variables not listed in `drop`.
pub fn fm_eliminate(p: &HPolyhedron, drop: &[&str]) -> Result<ProjectionResult> {
    fm_eliminate_with(p, drop, EliminationOrder::Heuristic)
}

/// Projects `p` onto the variables carrying the label `block`.
pub fn project_onto_block(p: &HPolyhedron, block: Block) -> Result<ProjectionResult> {
    let space = p.space();
    if space.indices_in(block).is_empty() {
        return Err(Error::InvalidInput(format!(
            "no variable carries block label {block}"
        )));
    }
    let drop: Vec<&str> = (0..space.len())
        .filter(|&j| space.block(j) != block)
        .map(|j| space.name(j))
        .collect();
    fm_eliminate(p, &drop)
}

pub fn fm_eliminate_with(
    p: &HPolyhedron,
    drop: &[&str],
    order: EliminationOrder,
) -> Result<ProjectionResult> {
    let dim = p.dim();
    let mut dropped = vec![false; dim];
    let mut pending = Vec::with_capacity(drop.len());
    for name in drop {
        let j = p
            .space()
            .index_of(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name:?}")))?;
        if !dropped[j] {
            dropped[j] = true;
            pending.push(j);
        }
    }
    let keep: Vec<usize> = (0..dim).filter(|&j| !dropped[j]).collect();

    if p.is_empty()? {
        return Ok(ProjectionResult {
            kind: ProjectionKind::Empty,
            description: None,
            steps: Vec::new(),
        });
    }

    // Working system over the full space; sign restrictions on dropped
    // variables become explicit rows, the others stay as flags.
    let mut nonneg = p.nonneg().to_vec();
    let mut rows: Vec<LinearConstraint> =
        p.constraints().iter().map(LinearConstraint::to_le_or_eq).collect();
    for &j in &pending {
        if nonneg[j] {
            nonneg[j] = false;
            let mut coeffs = vec![Rational::zero(); dim];
            coeffs[j] = Rational::from_integer((-1).into());
            rows.push(LinearConstraint::le(coeffs, Rational::zero()));
        }
    }
    let mut rows = tidy(rows).expect("feasible input has no contradictory rows");

    let mut steps = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let pick = match order {
            EliminationOrder::AsGiven => 0,
            EliminationOrder::Heuristic => choose(&rows, &pending),
        };
        let var = pending.remove(pick);
        let (next, mut step) = eliminate(rows, var);
        step.variable = p.space().name(var).to_owned();
        let Some(next) = tidy(next) else {
            unreachable!("projection of a nonempty polyhedron is nonempty");
        };
        let working = HPolyhedron::new(p.space().clone(), next, nonneg.clone())?;
        let pruned = working.remove_redundant()?.reduced;
        rows = pruned.constraints().to_vec();
        step.rows_after = rows.len();
        steps.push(step);
    }

    let space = p.space().select(&keep);
    let mut constraints: Vec<LinearConstraint> = rows
        .into_iter()
        .map(|c| {
            let coeffs = keep.iter().map(|&j| c.coeffs[j].clone()).collect();
            LinearConstraint::new(coeffs, c.rel, c.rhs)
        })
        .collect();
    constraints.sort();
    let flags: Vec<bool> = keep.iter().map(|&j| nonneg[j]).collect();
    let kind = if constraints.is_empty() && !flags.iter().any(|&f| f) {
        ProjectionKind::FullSpace
    } else {
        ProjectionKind::Polyhedron
    };
    Ok(ProjectionResult {
        kind,
        description: Some(HPolyhedron::new(space, constraints, flags)?),
        steps,
    })
}

fn choose(rows: &[LinearConstraint], pending: &[usize]) -> usize {
    if let Some(pos) = pending
        .iter()
        .position(|&v| rows.iter().any(|c| c.rel == Relation::Eq && c.involves(v)))
    {
        return pos;
    }
    let cost = |v: usize| {
        let pos = rows.iter().filter(|c| c.coeffs[v].is_positive()).count();
        let neg = rows.iter().filter(|c| c.coeffs[v].is_negative()).count();
        pos * neg
    };
    let mut best = 0;
    for (i, &v) in pending.iter().enumerate() {
        if cost(v) < cost(pending[best]) {
            best = i;
        }
    }
    best
}

fn eliminate(rows: Vec<LinearConstraint>, var: usize) -> (Vec<LinearConstraint>, EliminationStep) {
    let mut step = EliminationStep {
        variable: String::new(),
        method: EliminationMethod::FourierMotzkin,
        positive: rows.iter().filter(|c| c.coeffs[var].is_positive()).count(),
        negative: rows.iter().filter(|c| c.coeffs[var].is_negative()).count(),
        induced: 0,
        rows_after: 0,
    };

    if let Some(pivot) = rows
        .iter()
        .position(|c| c.rel == Relation::Eq && c.involves(var))
    {
        step.method = EliminationMethod::Substitution;
        let eq = rows[pivot].clone();
        let out = rows
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i != pivot)
            .map(|(_, c)| {
                if !c.involves(var) {
                    return c;
                }
                let factor = &c.coeffs[var] / &eq.coeffs[var];
                let coeffs = c
                    .coeffs
                    .iter()
                    .zip(&eq.coeffs)
                    .map(|(a, e)| a - &factor * e)
                    .collect();
                LinearConstraint::new(coeffs, c.rel, &c.rhs - &factor * &eq.rhs)
            })
            .collect();
        return (out, step);
    }

    let (touching, mut out): (Vec<_>, Vec<_>) =
        rows.into_iter().partition(|c| c.involves(var));
    let (pos, neg): (Vec<_>, Vec<_>) = touching
        .into_iter()
        .partition(|c| c.coeffs[var].is_positive());
    for p in &pos {
        for n in &neg {
            // (-n_v) * p + p_v * n has a zero coefficient on var; both
            // multipliers are positive so the inequality direction holds.
            let a = -n.coeffs[var].clone();
            let b = p.coeffs[var].clone();
            let coeffs = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(x, y)| &a * x + &b * y)
                .collect();
            out.push(LinearConstraint::le(coeffs, &a * &p.rhs + &b * &n.rhs));
            step.induced += 1;
        }
    }
    (out, step)
}

/// Canonicalizes, drops tautologies and duplicates. Returns `None` when a
/// row reads `0 ≤ c` with `c < 0` (or `0 = c ≠ 0`).
fn tidy(rows: Vec<LinearConstraint>) -> Option<Vec<LinearConstraint>> {
    let mut seen = BTreeSet::new();
    for c in rows {
        if c.is_trivial() {
            if !c.rel.holds(&Rational::zero(), &c.rhs) {
                return None;
            }
            continue;
        }
        seen.insert(c.canonical());
    }
    Some(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use crate::polyhedron::VarSpace;

    fn xw() -> VarSpace {
        VarSpace::new([("x", Block::X), ("w", Block::W)]).unwrap()
    }

    #[test]
    fn equality_link_projects_to_interval() {
        let p = HPolyhedron::parse(xw(), &["x - w = 0", "w <= 1"], &["w"]).unwrap();
        let r = fm_eliminate(&p, &["w"]).unwrap();
        assert_eq!(r.kind, ProjectionKind::Polyhedron);
        assert_eq!(r.steps[0].method, EliminationMethod::Substitution);
        let expected = HPolyhedron::parse(
            VarSpace::new([("x", Block::X)]).unwrap(),
            &["x >= 0", "x <= 1"],
            &[],
        )
        .unwrap();
        assert!(r.description.unwrap().equals(&expected).unwrap());
    }

    #[test]
    fn unlinked_variables_give_full_space() {
        let p = HPolyhedron::parse(xw(), &["w <= 1"], &["w"]).unwrap();
        let r = project_onto_block(&p, Block::X).unwrap();
        assert!(r.is_full_space());
        assert!(r.description.unwrap().constraints().is_empty());
    }

    #[test]
    fn empty_input_projects_to_empty() {
        let p = HPolyhedron::parse(xw(), &["x + w <= -1"], &["x", "w"]).unwrap();
        assert_eq!(fm_eliminate(&p, &["w"]).unwrap().kind, ProjectionKind::Empty);
    }

    #[test]
    fn pairing_produces_combined_row() {
        // x <= w, w <= 3  ==>  x <= 3
        let p = HPolyhedron::parse(xw(), &["x - w <= 0", "w <= 3"], &[]).unwrap();
        let r = fm_eliminate(&p, &["w"]).unwrap();
        assert_eq!(r.induced_rows(), 1);
        let d = r.description.unwrap();
        assert_eq!(d.constraints().len(), 1);
        assert_eq!(d.constraints()[0].coeffs, vec![int(1)]);
        assert_eq!(d.constraints()[0].rhs, int(3));
    }

    #[test]
    fn unknown_names_and_blocks_are_errors() {
        let p = HPolyhedron::parse(xw(), &["w <= 1"], &[]).unwrap();
        assert!(fm_eliminate(&p, &["nope"]).is_err());
        assert!(project_onto_block(&p, Block::UAux).is_err());
    }
}
