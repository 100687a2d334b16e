//! Extended-formulation checks under three competing definitions.
//!
//! Given `U = {(x, w) : G x + H w ≤ g}` and a polytope `X` in `x`-space:
//!
//! * [`Definition::Standard`]: the projection of `U` onto `x` equals `X`.
//! * [`Definition::LinearMap`]: some linear map `π` sends `U` onto `X`.
//! * [`Definition::Iff`]: `x ∈ X` iff some `w` has `(x, w) ∈ U`.
//!
//! Standard and Iff formalize the same set equality and always agree. The
//! linear-map definition does not look at how `U` constrains `x` at all, so
//! when every `x`-row of `U` is redundant ("effective `G = 0`", see
//! [`detect_effective_g_zero`]) the first two refute while the map check can
//! still succeed. Each verdict carries a witness that
//! [`verify_map_image`] or plain containment tests can re-check.

use itertools::Itertools;
use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{LpStatus, Sense};
use crate::numeric::{format_vector, solve_linear_system, Matrix, Rational, Vector};
use crate::polyhedron::{Block, HPolyhedron, LinearConstraint, Relation, VarSpace};
use crate::projection::{fm_eliminate, ProjectionKind, ProjectionResult};
use crate::vertex::{enumerate_vertices, in_convex_hull, DEFAULT_BASIS_LIMIT};

/// A polyhedron with a designated `x` block and `w` block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockedPolyhedron {
    poly: HPolyhedron,
    x_block: Vec<usize>,
    w_block: Vec<usize>,
}

impl BlockedPolyhedron {
    pub fn new(poly: HPolyhedron, x_block: &[&str], w_block: &[&str]) -> Result<Self> {
        let lookup = |names: &[&str]| -> Result<Vec<usize>> {
            names
                .iter()
                .map(|n| {
                    poly.space()
                        .index_of(n)
                        .ok_or_else(|| Error::InvalidInput(format!("unknown variable {n:?}")))
                })
                .collect()
        };
        let x = lookup(x_block)?;
        let w = lookup(w_block)?;
        if x.iter().any(|i| w.contains(i)) {
            return Err(Error::InvalidInput("x and w blocks overlap".into()));
        }
        if x.iter().duplicates().next().is_some() || w.iter().duplicates().next().is_some() {
            return Err(Error::InvalidInput("repeated variable in a block".into()));
        }
        Ok(BlockedPolyhedron {
            poly,
            x_block: x,
            w_block: w,
        })
    }

    /// `x` block = variables labelled [`Block::X`]; `w` block = the rest.
    pub fn from_labels(poly: HPolyhedron) -> Self {
        let x_block = poly.space().indices_in(Block::X);
        let w_block = (0..poly.dim()).filter(|j| !x_block.contains(j)).collect();
        BlockedPolyhedron {
            poly,
            x_block,
            w_block,
        }
    }

    pub fn poly(&self) -> &HPolyhedron {
        &self.poly
    }

    pub fn x_block(&self) -> &[usize] {
        &self.x_block
    }

    pub fn w_block(&self) -> &[usize] {
        &self.w_block
    }

    pub fn x_names(&self) -> Vec<&str> {
        self.x_block.iter().map(|&j| self.poly.space().name(j)).collect()
    }

    /// Sizes `(m, p, q)`: rows, `x` variables, `w` variables.
    pub fn sizes(&self) -> (usize, usize, usize) {
        (
            self.poly.constraints().len(),
            self.x_block.len(),
            self.w_block.len(),
        )
    }

    fn involves_x(&self, c: &LinearConstraint) -> bool {
        self.x_block.iter().any(|&j| c.involves(j))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Definition {
    Standard,
    LinearMap,
    Iff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Holds,
    Refuted,
    /// The search limit was hit before a witness or a refutation.
    Undecided,
}

/// Which half of the membership equivalence a counterexample breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedDirection {
    /// Some `w` lifts `x` into `U`, yet `x ∉ X`.
    LiftableOutsideTarget,
    /// `x ∈ X`, yet no `w` lifts it into `U`.
    TargetNotLiftable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMapWitness {
    /// `p × (p + q)`; applied to full points of `U`.
    pub matrix: Matrix,
    /// `(x-vertex index, U-vertex index)` pairs: `matrix · u = x`.
    pub assignment: Vec<(usize, usize)>,
    pub u_vertices: Vec<Vector>,
    pub x_vertices: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Projection(ProjectionResult),
    LinearMap(LinearMapWitness),
    Counterexample {
        x: Vector,
        /// A full point of `U` over `x` when one exists.
        lifted: Option<Vector>,
        direction: FailedDirection,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfVerdict {
    pub definition: Definition,
    pub outcome: Outcome,
    pub witness: Witness,
    pub notes: Vec<String>,
}

impl EfVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }
}

/// Result of [`detect_effective_g_zero`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GZeroReport {
    pub effective_g_zero: bool,
    /// Rows (rendered) that mention `x` and were found redundant, in removal
    /// order. Sign restrictions on `x` variables count as rows here.
    pub removed: Vec<String>,
    /// Rows mentioning `x` that survived.
    pub remaining_x_rows: Vec<String>,
    /// Description of `U` over its non-`x` variables, when `G = 0`.
    pub reduced: Option<HPolyhedron>,
}

/// Removes redundant `x`-involving rows one at a time (re-testing all of
/// them after every removal) until none is redundant; `G = 0` holds iff no
/// `x`-involving row survives.
pub fn detect_effective_g_zero(u: &BlockedPolyhedron) -> Result<GZeroReport> {
    if u.poly.is_empty()? {
        return Err(Error::Infeasible("G = 0 detection needs a nonempty U".into()));
    }
    // Sign restrictions on x become explicit rows so they can be tested.
    let mut work = u.poly.clone();
    for &j in &u.x_block {
        if work.is_nonneg(j) {
            work.set_nonneg(j, false);
            let mut coeffs = vec![Rational::zero(); work.dim()];
            coeffs[j] = Rational::one();
            work.push(LinearConstraint::ge(coeffs, Rational::zero()))?;
        }
    }

    let mut removed = Vec::new();
    'outer: loop {
        for (i, row) in work.constraints().iter().enumerate() {
            if !u.involves_x(row) {
                continue;
            }
            if work.violating_point(Some(i), row)?.is_none() {
                removed.push(row.display_with(work.space()));
                work = work.without(i);
                continue 'outer;
            }
        }
        break;
    }

    let remaining: Vec<String> = work
        .constraints()
        .iter()
        .filter(|c| u.involves_x(c))
        .map(|c| c.display_with(work.space()))
        .collect();
    let effective = remaining.is_empty();
    let reduced = if effective {
        let keep: Vec<usize> = (0..work.dim()).filter(|j| !u.x_block.contains(j)).collect();
        let rows = work
            .constraints()
            .iter()
            .map(|c| {
                LinearConstraint::new(
                    keep.iter().map(|&j| c.coeffs[j].clone()).collect(),
                    c.rel,
                    c.rhs.clone(),
                )
            })
            .collect();
        let flags = keep.iter().map(|&j| work.is_nonneg(j)).collect();
        Some(HPolyhedron::new(work.space().select(&keep), rows, flags)?)
    } else {
        None
    };
    Ok(GZeroReport {
        effective_g_zero: effective,
        removed,
        remaining_x_rows: remaining,
        reduced,
    })
}

/// Projection of `U` onto its `x` block, expressed in `target`'s space.
fn x_projection(u: &BlockedPolyhedron, target: &HPolyhedron) -> Result<ProjectionResult> {
    if target.dim() != u.x_block.len() {
        return Err(Error::DimensionMismatch(format!(
            "target has {} variables but the x block has {}",
            target.dim(),
            u.x_block.len()
        )));
    }
    let space = u.poly.space();
    let drop: Vec<&str> = (0..space.len())
        .filter(|j| !u.x_block.contains(j))
        .map(|j| space.name(j))
        .collect();
    // Reorder so the surviving variables appear in x-block order.
    let mut order = u.x_block.clone();
    order.extend((0..space.len()).filter(|j| !u.x_block.contains(j)));
    let reordered = reorder(&u.poly, &order)?;
    let mut result = fm_eliminate(&reordered, &drop)?;
    if let Some(d) = result.description.take() {
        result.description = Some(d.with_space(target.space().clone())?);
    }
    Ok(result)
}

fn reorder(p: &HPolyhedron, order: &[usize]) -> Result<HPolyhedron> {
    let space = p.space().select(order);
    let rows = p
        .constraints()
        .iter()
        .map(|c| {
            LinearConstraint::new(
                order.iter().map(|&j| c.coeffs[j].clone()).collect(),
                c.rel,
                c.rhs.clone(),
            )
        })
        .collect();
    let flags = order.iter().map(|&j| p.is_nonneg(j)).collect();
    HPolyhedron::new(space, rows, flags)
}

/// Some point of `x`-space outside `target`, unless `target` is everything.
fn point_outside(target: &HPolyhedron) -> Result<Option<Vector>> {
    let Some(inside) = target.find_point()? else {
        return Ok(Some(vec![Rational::zero(); target.dim()]));
    };
    for j in 0..target.dim() {
        for sense in [Sense::Max, Sense::Min] {
            let mut e = vec![Rational::zero(); target.dim()];
            e[j] = Rational::one();
            let out = target.optimize(&e, sense)?;
            if out.status == LpStatus::Optimal {
                let mut z = out.point.unwrap_or_else(|| inside.clone());
                match sense {
                    Sense::Max => z[j] += Rational::one(),
                    Sense::Min => z[j] -= Rational::one(),
                }
                return Ok(Some(z));
            }
        }
    }
    // Unbounded in every coordinate direction: look for a violated row.
    for c in target.constraints() {
        let complement = match c.rel {
            Relation::Le => vec![Relation::Ge],
            Relation::Ge => vec![Relation::Le],
            Relation::Eq => vec![Relation::Ge, Relation::Le],
        };
        for rel in complement {
            let shifted = match rel {
                Relation::Ge => &c.rhs + Rational::one(),
                _ => &c.rhs - Rational::one(),
            };
            let probe = HPolyhedron::new(
                target.space().clone(),
                vec![LinearConstraint::new(c.coeffs.clone(), rel, shifted)],
                vec![false; target.dim()],
            )?;
            if let Some(z) = probe.find_point()? {
                return Ok(Some(z));
            }
        }
    }
    Ok(None)
}

/// A full point of `U` whose `x` block equals `x`, if any.
fn lift(u: &BlockedPolyhedron, x: &[Rational]) -> Result<Option<Vector>> {
    let mut fixed = u.poly.clone();
    for (k, &j) in u.x_block.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); fixed.dim()];
        coeffs[j] = Rational::one();
        fixed.push(LinearConstraint::eq(coeffs, x[k].clone()))?;
    }
    fixed.find_point()
}

const FULL_SPACE_NOTE: &str = "projection of U onto x-space is all of R^p (no row of U \
    constrains x); a bounded target cannot equal it";

fn projection_verdict(
    definition: Definition,
    u: &BlockedPolyhedron,
    target: &HPolyhedron,
) -> Result<(EfVerdict, ProjectionResult)> {
    let projection = x_projection(u, target)?;
    let mut notes = Vec::new();
    let mut counterexample = None;

    match projection.kind {
        ProjectionKind::Empty => {
            if let Some(x) = target.find_point()? {
                counterexample = Some((x, None, FailedDirection::TargetNotLiftable));
                notes.push("U is empty but the target is not".into());
            }
        }
        ProjectionKind::FullSpace => {
            notes.push(FULL_SPACE_NOTE.replace("R^p", &format!("R^{}", target.dim())));
            if let Some(x) = point_outside(target)? {
                let lifted = lift(u, &x)?;
                counterexample = Some((x, lifted, FailedDirection::LiftableOutsideTarget));
            }
        }
        ProjectionKind::Polyhedron => {
            let d = projection.description.as_ref().expect("polyhedral projection");
            if let Some(x) = d.is_subset(target)?.witness() {
                let lifted = lift(u, x)?;
                counterexample =
                    Some((x.clone(), lifted, FailedDirection::LiftableOutsideTarget));
            } else if let Some(x) = target.is_subset(d)?.witness() {
                counterexample = Some((x.clone(), None, FailedDirection::TargetNotLiftable));
            }
        }
    }

    let (outcome, witness) = match counterexample {
        None => (Outcome::Holds, Witness::Projection(projection.clone())),
        Some((x, lifted, direction)) => (
            Outcome::Refuted,
            Witness::Counterexample {
                x,
                lifted,
                direction,
            },
        ),
    };
    Ok((
        EfVerdict {
            definition,
            outcome,
            witness,
            notes,
        },
        projection,
    ))
}

/// Projection-equality check: `φ_x(U) = X`.
pub fn check_ef_standard(u: &BlockedPolyhedron, target: &HPolyhedron) -> Result<EfVerdict> {
    let (mut verdict, projection) = projection_verdict(Definition::Standard, u, target)?;
    if verdict.outcome == Outcome::Refuted {
        let kind = match projection.kind {
            ProjectionKind::FullSpace => "FULL_SPACE",
            ProjectionKind::Empty => "EMPTY",
            ProjectionKind::Polyhedron => "POLYHEDRON",
        };
        verdict.notes.push(format!("projection kind: {kind}"));
    }
    Ok(verdict)
}

/// Membership-equivalence check, with a note on each direction of the
/// equivalence.
pub fn check_ef_iff(u: &BlockedPolyhedron, target: &HPolyhedron) -> Result<EfVerdict> {
    let (mut verdict, _) = projection_verdict(Definition::Iff, u, target)?;
    let (forward, backward) = match &verdict.witness {
        Witness::Counterexample { x, direction, .. } => match direction {
            FailedDirection::LiftableOutsideTarget => (
                format!("fails at x = {}", format_vector(x)),
                "not refuted".to_owned(),
            ),
            FailedDirection::TargetNotLiftable => (
                "not refuted".to_owned(),
                format!("fails at x = {}", format_vector(x)),
            ),
        },
        _ => ("holds".to_owned(), "holds".to_owned()),
    };
    verdict
        .notes
        .push(format!("(exists w: (x,w) in U) => x in X: {forward}"));
    verdict
        .notes
        .push(format!("x in X => (exists w: (x,w) in U): {backward}"));
    if !u.poly.is_empty()? && detect_effective_g_zero(u)?.effective_g_zero {
        verdict.notes.push(
            "effective G = 0: every x-row of U is redundant, so the existence of w does \
             not depend on x and cannot imply x in X unless X is all of x-space"
                .into(),
        );
    }
    Ok(verdict)
}

/// Default cap on vertex assignments tried by [`check_ef_linear_map`].
pub const DEFAULT_MAP_SEARCH_LIMIT: u128 = 1_000_000;

/// Number of injective assignments of `k` target vertices to `n` source
/// vertices, saturating.
fn arrangements(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128))
}

/// Linear-map check: is `target = M(U)` for some matrix `M`?
///
/// Requires bounded `U` and `target`. Candidate maps are found by assigning
/// every target vertex to a distinct vertex of `U` and solving an LP in the
/// entries of `M`: assigned vertices must map exactly, the others into the
/// target. Vertices of an image polytope are images of vertices, so the
/// search is complete; it reports `Undecided` once more than `search_limit`
/// assignments would be needed.
pub fn check_ef_linear_map(
    u: &BlockedPolyhedron,
    target: &HPolyhedron,
    search_limit: u128,
) -> Result<EfVerdict> {
    require_bounded(&u.poly, "U")?;
    let u_vertices = enumerate_vertices(&u.poly, DEFAULT_BASIS_LIMIT)?.vertices;
    let x_poly = enumerate_vertices(target, DEFAULT_BASIS_LIMIT)?;
    if !x_poly.is_bounded() {
        return Err(Error::Unbounded("the linear-map check needs a bounded target".into()));
    }
    let x_vertices = x_poly.vertices;
    let refuted = |note: String| EfVerdict {
        definition: Definition::LinearMap,
        outcome: Outcome::Refuted,
        witness: Witness::None,
        notes: vec![note],
    };
    if x_vertices.is_empty() {
        return Ok(refuted("target is empty but U is not".into()));
    }
    if x_vertices.len() > u_vertices.len() {
        return Ok(refuted(format!(
            "target has {} vertices but U has only {}: no surjection onto the vertex set",
            x_vertices.len(),
            u_vertices.len()
        )));
    }
    let needed = arrangements(u_vertices.len(), x_vertices.len());
    if needed > search_limit {
        return Ok(EfVerdict {
            definition: Definition::LinearMap,
            outcome: Outcome::Undecided,
            witness: Witness::None,
            notes: vec![format!(
                "{needed} vertex assignments exceed the search limit of {search_limit}"
            )],
        });
    }

    for assigned in (0..u_vertices.len()).permutations(x_vertices.len()) {
        if let Some(matrix) = fit_map(&u_vertices, &x_vertices, &assigned, target)? {
            let assignment = assigned.iter().copied().enumerate().collect();
            return Ok(EfVerdict {
                definition: Definition::LinearMap,
                outcome: Outcome::Holds,
                witness: Witness::LinearMap(LinearMapWitness {
                    matrix,
                    assignment,
                    u_vertices,
                    x_vertices,
                }),
                notes: vec![format!("{needed} vertex assignments in the search space")],
            });
        }
    }
    Ok(refuted(format!(
        "none of the {needed} vertex assignments admits a linear map"
    )))
}

fn require_bounded(p: &HPolyhedron, what: &str) -> Result<()> {
    if p.is_empty()? {
        return Err(Error::Infeasible(format!("{what} is empty")));
    }
    if !p.is_bounded()?.is_bounded() {
        return Err(Error::Unbounded(format!(
            "{what} is unbounded; the vertex-based map check does not apply"
        )));
    }
    Ok(())
}

/// LP in the entries of `M` (row-major, free variables).
fn fit_map(
    u_vertices: &[Vector],
    x_vertices: &[Vector],
    assigned: &[usize],
    target: &HPolyhedron,
) -> Result<Option<Matrix>> {
    let p = target.dim();
    let n = u_vertices[0].len();
    let space = VarSpace::new(
        (0..p).flat_map(|i| (0..n).map(move |k| (format!("m_{}_{}", i + 1, k + 1), Block::W))),
    )?;
    // Coefficients of (M v)_i in the entries of M.
    let image_row = |v: &Vector, i: usize| {
        let mut coeffs = vec![Rational::zero(); p * n];
        coeffs[i * n..(i + 1) * n].clone_from_slice(v);
        coeffs
    };
    let mut rows = Vec::new();
    for (j, &ui) in assigned.iter().enumerate() {
        for (i, xi) in x_vertices[j].iter().enumerate().take(p) {
            rows.push(LinearConstraint::eq(image_row(&u_vertices[ui], i), xi.clone()));
        }
    }
    for (ui, v) in u_vertices.iter().enumerate() {
        if assigned.contains(&ui) {
            continue;
        }
        for c in target.constraints() {
            let mut coeffs = vec![Rational::zero(); p * n];
            for i in 0..p {
                if c.coeffs[i].is_zero() {
                    continue;
                }
                for (slot, x) in coeffs.iter_mut().zip(image_row(v, i)) {
                    *slot += &c.coeffs[i] * x;
                }
            }
            rows.push(LinearConstraint::new(coeffs, c.rel, c.rhs.clone()));
        }
        for i in (0..p).filter(|&i| target.is_nonneg(i)) {
            rows.push(LinearConstraint::ge(image_row(v, i), Rational::zero()));
        }
    }
    let lp = HPolyhedron::new(space, rows, vec![false; p * n])?;
    Ok(match lp.find_point()? {
        Some(entries) => Some(Matrix::new(p, n, entries)?),
        None => None,
    })
}

/// A matrix `M` with `M · source = image`, taken as the particular solution
/// of the linear system in the entries of `M` (free entries set to zero).
/// `None` when no such matrix exists, i.e. `source = 0 ≠ image`.
pub fn map_through_point(source: &[Rational], image: &[Rational]) -> Result<Option<Matrix>> {
    let (p, n) = (image.len(), source.len());
    let mut a = Matrix::zeros(p, p * n);
    for i in 0..p {
        for (k, s) in source.iter().enumerate() {
            a[(i, i * n + k)] = s.clone();
        }
    }
    Ok(match solve_linear_system(&a, image)?.any_solution() {
        Some(entries) => Some(Matrix::new(p, n, entries.clone())?),
        None => None,
    })
}

/// Independent check of a linear-map witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapImageReport {
    pub valid: bool,
    /// `(U-vertex, image)` pairs.
    pub images: Vec<(Vector, Vector)>,
    /// Images that fall outside the target.
    pub outside: Vec<Vector>,
    /// Target vertices not in the convex hull of the images.
    pub uncovered: Vec<Vector>,
}

/// Checks that every vertex of `U` maps into `target` under `m` and every
/// vertex of `target` lies in the convex hull of the images.
pub fn verify_map_image(
    u: &BlockedPolyhedron,
    m: &Matrix,
    target: &HPolyhedron,
) -> Result<MapImageReport> {
    if m.cols() != u.poly.dim() || m.rows() != target.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map between spaces of dimension {} and {}",
            m.rows(),
            m.cols(),
            u.poly.dim(),
            target.dim()
        )));
    }
    require_bounded(&u.poly, "U")?;
    let u_vertices = enumerate_vertices(&u.poly, DEFAULT_BASIS_LIMIT)?.vertices;
    let mut images = Vec::with_capacity(u_vertices.len());
    let mut outside = Vec::new();
    for v in u_vertices {
        let image = m.mul_vec(&v)?;
        if !target.contains_point(&image)? {
            outside.push(image.clone());
        }
        images.push((v, image));
    }
    let x_poly = enumerate_vertices(target, DEFAULT_BASIS_LIMIT)?;
    if !x_poly.is_bounded() {
        return Err(Error::Unbounded("map image check needs a bounded target".into()));
    }
    let image_points: Vec<Vector> = images.iter().map(|(_, x)| x.clone()).collect();
    let mut uncovered = Vec::new();
    for xv in x_poly.vertices {
        if !in_convex_hull(&image_points, &xv)? {
            uncovered.push(xv);
        }
    }
    Ok(MapImageReport {
        valid: outside.is_empty() && uncovered.is_empty(),
        images,
        outside,
        uncovered,
    })
}
