//! Augmenting two polyhedra in disjoint variables into extended formulations
//! of each other.
//!
//! Given `P1 = {x1 : A1 x1 ≤ a1}` and `P2 = {x2 : A2 x2 ≤ a2}`, both nonempty,
//! any `q`, any `B1 (q × n1)`, `B2 (q × n2)` and positive diagonal `C1`, `C2`,
//!
//! ```text
//! W = { (x1, x2, u) : C1 A1 x1 ≤ C1 a1,
//!                     B1 x1 + B2 x2 − u ≤ 0,
//!                     C2 A2 x2 ≤ C2 a2,   u ≥ 0 }
//! ```
//!
//! projects onto `x1` as exactly `P1` and onto `x2` as exactly `P2`: the
//! mixed rows can always be satisfied by a large enough `u`. Under
//! projection-based definitions each polytope is then "an extended
//! formulation" of the other, which carries no information about either.

use std::ops::Range;

use num::{Signed, Zero};
use rand::Rng;

use crate::ef::BlockedPolyhedron;
use crate::error::{Error, Result};
use crate::instances;
use crate::numeric::{int, ratio, Matrix, Rational};
use crate::polyhedron::{Block, HPolyhedron, LinearConstraint, VarSpace};
use crate::projection::{fm_eliminate, project_onto_block, ProjectionKind};

/// Which product the mixed block uses.
pub const MIXED_BLOCK_CONVENTION: &str = "mixed rows use B1·x1 + B2·x2 (B1 is q×n1, B2 is q×n2)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationSpec {
    pub p1: HPolyhedron,
    pub p2: HPolyhedron,
    /// `q × n1`.
    pub b1: Matrix,
    /// `q × n2`.
    pub b2: Matrix,
    /// Diagonal, one positive entry per row of `p1`.
    pub c1: Matrix,
    /// Diagonal, one positive entry per row of `p2`.
    pub c2: Matrix,
}

impl AugmentationSpec {
    pub fn q(&self) -> usize {
        self.b1.rows()
    }

    pub fn validate(&self) -> Result<()> {
        let (n1, n2) = (self.p1.dim(), self.p2.dim());
        if self.b1.rows() == 0 || self.b1.rows() != self.b2.rows() {
            return Err(Error::DimensionMismatch(format!(
                "B1 has {} rows and B2 has {}; both need the same positive count",
                self.b1.rows(),
                self.b2.rows()
            )));
        }
        if self.b1.cols() != n1 || self.b2.cols() != n2 {
            return Err(Error::DimensionMismatch(format!(
                "B1 must be q×{n1} and B2 q×{n2}, got {}×{} and {}×{}",
                self.b1.rows(),
                self.b1.cols(),
                self.b2.rows(),
                self.b2.cols()
            )));
        }
        for (name, c, rows) in [
            ("C1", &self.c1, self.p1.constraints().len()),
            ("C2", &self.c2, self.p2.constraints().len()),
        ] {
            if c.rows() != rows || !c.is_diagonal() {
                return Err(Error::InvalidInput(format!(
                    "{name} must be a {rows}×{rows} diagonal matrix"
                )));
            }
            if (0..rows).any(|i| !c[(i, i)].is_positive()) {
                return Err(Error::InvalidInput(format!(
                    "{name} must have a strictly positive diagonal"
                )));
            }
        }
        if let Some(clash) = self
            .p1
            .space()
            .names()
            .find(|n| self.p2.space().index_of(n).is_some())
        {
            return Err(Error::InvalidInput(format!(
                "variable {clash:?} occurs in both P1 and P2"
            )));
        }
        Ok(())
    }
}

/// The augmented polyhedron `W` with its three row blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmented {
    pub poly: HPolyhedron,
    pub p1_rows: Range<usize>,
    pub mixed_rows: Range<usize>,
    pub p2_rows: Range<usize>,
    pub x1_vars: Range<usize>,
    pub x2_vars: Range<usize>,
    pub u_vars: Range<usize>,
}

impl Augmented {
    /// `x` block = `x1`, `w` block = `x2` and `u`.
    pub fn blocked(&self) -> BlockedPolyhedron {
        BlockedPolyhedron::from_labels(self.poly.clone())
    }
}

fn fresh_aux_names(space: &VarSpace, q: usize) -> Vec<String> {
    let mut prefix = "u".to_owned();
    loop {
        let names: Vec<String> = (1..=q).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|n| space.index_of(n).is_none()) {
            return names;
        }
        prefix.insert(0, '_');
    }
}

/// Builds `W` over `x1 (X) ∪ x2 (W) ∪ u (U_AUX)` with `u ≥ 0`.
pub fn build_augmentation(spec: &AugmentationSpec) -> Result<Augmented> {
    spec.validate()?;
    if spec.p1.is_empty()? || spec.p2.is_empty()? {
        return Err(Error::Infeasible(
            "augmentation needs nonempty P1 and P2".into(),
        ));
    }
    let (n1, n2, q) = (spec.p1.dim(), spec.p2.dim(), spec.q());
    let xs = spec
        .p1
        .space()
        .relabel(Block::X)
        .concat(&spec.p2.space().relabel(Block::W))?;
    let u_names = fresh_aux_names(&xs, q);
    let space = xs.concat(&VarSpace::new(u_names.into_iter().map(|n| (n, Block::UAux)))?)?;
    let dim = n1 + n2 + q;

    let scaled = |c: &LinearConstraint, factor: &Rational, offset: usize, width: usize| {
        let mut coeffs = vec![Rational::zero(); dim];
        for k in 0..width {
            coeffs[offset + k] = &c.coeffs[k] * factor;
        }
        LinearConstraint::new(coeffs, c.rel, &c.rhs * factor)
    };

    let mut rows = Vec::new();
    for (i, c) in spec.p1.constraints().iter().enumerate() {
        rows.push(scaled(c, &spec.c1[(i, i)], 0, n1));
    }
    let p1_end = rows.len();
    for r in 0..q {
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[..n1].clone_from_slice(spec.b1.row(r));
        coeffs[n1..n1 + n2].clone_from_slice(spec.b2.row(r));
        coeffs[n1 + n2 + r] = int(-1);
        rows.push(LinearConstraint::le(coeffs, Rational::zero()));
    }
    let mixed_end = rows.len();
    for (i, c) in spec.p2.constraints().iter().enumerate() {
        rows.push(scaled(c, &spec.c2[(i, i)], n1, n2));
    }
    let p2_end = rows.len();

    let mut nonneg = spec.p1.nonneg().to_vec();
    nonneg.extend_from_slice(spec.p2.nonneg());
    nonneg.extend(std::iter::repeat_n(true, q));

    Ok(Augmented {
        poly: HPolyhedron::new(space, rows, nonneg)?,
        p1_rows: 0..p1_end,
        mixed_rows: p1_end..mixed_end,
        p2_rows: mixed_end..p2_end,
        x1_vars: 0..n1,
        x2_vars: n1..n1 + n2,
        u_vars: n1 + n2..dim,
    })
}

/// The checked facts behind "P1 and P2 are extended formulations of each
/// other".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutualEfReport {
    pub convention: &'static str,
    /// `φ_x1(W) = P1`.
    pub x1_projection_equals_p1: bool,
    /// `φ_x2(W) = P2`.
    pub x2_projection_equals_p2: bool,
    /// `φ_(x1,x2)(W) = P1 × P2`: the mixed rows disappear once `u` is
    /// projected out.
    pub mixed_rows_redundant: bool,
    /// Rows induced by pairing while eliminating `u`; always zero since `u`
    /// has only lower bounds.
    pub u_induced_rows: usize,
    pub conclusions: Vec<String>,
}

impl MutualEfReport {
    pub fn valid(&self) -> bool {
        self.x1_projection_equals_p1
            && self.x2_projection_equals_p2
            && self.mixed_rows_redundant
            && self.u_induced_rows == 0
    }
}

pub fn demonstrate_mutual_ef(spec: &AugmentationSpec) -> Result<MutualEfReport> {
    let w = build_augmentation(spec)?;
    let projected_equals = |block: Block, original: &HPolyhedron| -> Result<bool> {
        let r = project_onto_block(&w.poly, block)?;
        match (r.kind, r.description) {
            (ProjectionKind::Empty, _) | (_, None) => Ok(false),
            (_, Some(d)) => d.with_space(original.space().clone())?.equals(original),
        }
    };
    let x1_ok = projected_equals(Block::X, &spec.p1)?;
    let x2_ok = projected_equals(Block::W, &spec.p2)?;

    let space = w.poly.space();
    let u_names: Vec<&str> = w.u_vars.clone().map(|j| space.name(j)).collect();
    let without_u = fm_eliminate(&w.poly, &u_names)?;
    let product = w.poly.keep_rows(|i| !w.mixed_rows.contains(&i));
    let product_no_u = fm_eliminate(&product, &u_names)?;
    let mixed_ok = match (&without_u.description, &product_no_u.description) {
        (Some(a), Some(b)) => a.equals(b)?,
        _ => false,
    };

    Ok(MutualEfReport {
        convention: MIXED_BLOCK_CONVENTION,
        x1_projection_equals_p1: x1_ok,
        x2_projection_equals_p2: x2_ok,
        mixed_rows_redundant: mixed_ok,
        u_induced_rows: without_u.induced_rows(),
        conclusions: vec![
            "P1 is an extended formulation of P2: W is P1 augmented with redundant \
             rows and variables, and W projects onto x2-space as P2"
                .into(),
            "P2 is an extended formulation of P1: W is P2 augmented with redundant \
             rows and variables, and W projects onto x1-space as P1"
                .into(),
        ],
    })
}

/// The worked example: `P1 ⊂ ℝ²₊`, `P2 ⊂ ℝ³₊` and `q = 2`.
pub fn build_example_1() -> AugmentationSpec {
    AugmentationSpec {
        p1: instances::example_p1(),
        p2: instances::example_p2(),
        b1: Matrix::from_i64(&[&[-1, 2], &[3, -4]]),
        b2: Matrix::from_i64(&[&[5, -6, 7], &[-10, 9, -8]]),
        c1: Matrix::diagonal(&[int(7)]),
        c2: Matrix::diagonal(&[int(2), ratio(1, 2)]),
    }
}

/// Random nonempty `{z : A z ≤ a}` with `1..=3` variables and rows and
/// integer coefficients in `[-10, 10]`.
///
/// Nonemptiness is guaranteed by choosing an anchor point first and setting
/// each right-hand side at or above the row's value there.
pub fn random_polyhedron<R: Rng>(rng: &mut R, prefix: &str, block: Block) -> HPolyhedron {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=3);
    let anchor: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
    let mut rows = Vec::with_capacity(m);
    while rows.len() < m {
        let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-10..=10)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let at: i64 = coeffs.iter().zip(&anchor).map(|(c, x)| c * x).sum();
        let rhs = (at + rng.gen_range(0..=10)).clamp(at, at.max(10));
        rows.push(LinearConstraint::le(
            coeffs.into_iter().map(int).collect(),
            int(rhs),
        ));
    }
    let nonneg = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    HPolyhedron::new(VarSpace::uniform(prefix, n, block), rows, nonneg)
        .expect("generated dimensions agree")
}

/// Random spec over `x1..`/`w..` polyhedra from [`random_polyhedron`], with
/// maps from [`random_maps`].
pub fn random_spec<R: Rng>(rng: &mut R) -> AugmentationSpec {
    let p1 = random_polyhedron(rng, "x", Block::X);
    let p2 = random_polyhedron(rng, "w", Block::W);
    random_maps(rng, p1, p2)
}

/// Completes `P1`, `P2` to a spec with `q ∈ 1..=3`, integer `B` entries in
/// `[-10, 10]` and diagonal `C` entries `k/d` with `1 ≤ k ≤ 10`, `1 ≤ d ≤ 3`.
pub fn random_maps<R: Rng>(rng: &mut R, p1: HPolyhedron, p2: HPolyhedron) -> AugmentationSpec {
    let q = rng.gen_range(1..=3);
    let mut entries = |rows: usize, cols: usize| -> Matrix {
        let data = (0..rows * cols).map(|_| int(rng.gen_range(-10..=10))).collect();
        Matrix::new(rows, cols, data).expect("sized")
    };
    let b1 = entries(q, p1.dim());
    let b2 = entries(q, p2.dim());
    let mut diag = |n: usize| -> Matrix {
        let d: Vec<Rational> = (0..n)
            .map(|_| ratio(rng.gen_range(1..=10), rng.gen_range(1..=3)))
            .collect();
        Matrix::diagonal(&d)
    };
    let c1 = diag(p1.constraints().len());
    let c2 = diag(p2.constraints().len());
    AugmentationSpec {
        p1,
        p2,
        b1,
        b2,
        c1,
        c2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int_vec;

    fn trivial_spec() -> AugmentationSpec {
        let mut spec = build_example_1();
        spec.b1 = Matrix::zeros(1, 2);
        spec.b2 = Matrix::zeros(1, 3);
        spec.c1 = Matrix::identity(1);
        spec.c2 = Matrix::identity(2);
        spec
    }

    #[test]
    fn example_1_rows_match_the_worked_display() {
        let w = build_augmentation(&build_example_1()).unwrap();
        let rows = w.poly.constraints();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0].coeffs, int_vec(&[14, 7, 0, 0, 0, 0, 0]));
        assert_eq!(rows[0].rhs, int(42));
        assert_eq!(rows[1].coeffs, int_vec(&[-1, 2, 5, -6, 7, -1, 0]));
        assert_eq!(rows[2].coeffs, int_vec(&[3, -4, -10, 9, -8, 0, -1]));
        assert_eq!(rows[3].coeffs, int_vec(&[0, 0, 36, -2, 0, 0, 0]));
        assert_eq!(rows[3].rhs, int(46));
        assert_eq!(
            rows[4].coeffs,
            vec![int(0), int(0), ratio(59, 2), int(0), ratio(1, 2), int(0), int(0)]
        );
        assert_eq!(rows[4].rhs, int(42));
        assert_eq!(w.mixed_rows, 1..3);
        assert_eq!(w.poly.space().block(5), Block::UAux);
        assert!(w.poly.nonneg().iter().all(|&f| f));
    }

    #[test]
    fn trivial_spec_is_a_product_with_slack() {
        let w = build_augmentation(&trivial_spec()).unwrap();
        let mixed = &w.poly.constraints()[w.mixed_rows.clone()];
        assert_eq!(mixed.len(), 1);
        assert_eq!(mixed[0].coeffs, int_vec(&[0, 0, 0, 0, 0, -1]));
        assert!(demonstrate_mutual_ef(&trivial_spec()).unwrap().valid());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut s = build_example_1();
        s.c2 = Matrix::diagonal(&[int(2), int(0)]);
        assert!(build_augmentation(&s).is_err());

        let mut s = build_example_1();
        s.b1 = Matrix::zeros(2, 3);
        assert!(build_augmentation(&s).is_err());

        let mut s = build_example_1();
        s.p2 = s.p2.with_space(VarSpace::uniform("x", 3, Block::W)).unwrap();
        assert!(matches!(build_augmentation(&s), Err(Error::InvalidInput(_))));

        let mut s = build_example_1();
        s.p1 = HPolyhedron::parse(
            VarSpace::uniform("x", 2, Block::X),
            &["x1 + x2 <= -1"],
            &["x1", "x2"],
        )
        .unwrap();
        assert!(matches!(build_augmentation(&s), Err(Error::Infeasible(_))));
    }

    #[test]
    fn aux_names_avoid_clashes() {
        let mut s = build_example_1();
        s.p2 = s.p2.with_space(VarSpace::new([("u1", Block::W), ("u2", Block::W), ("w3", Block::W)]).unwrap()).unwrap();
        let w = build_augmentation(&s).unwrap();
        assert_eq!(w.poly.space().name(5), "_u1");
    }

    #[test]
    fn example_1_and_seeded_specs_are_mutual() {
        use rand::SeedableRng;
        let report = demonstrate_mutual_ef(&build_example_1()).unwrap();
        assert!(report.valid(), "{report:?}");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let spec = random_spec(&mut rng);
            assert!(demonstrate_mutual_ef(&spec).unwrap().valid(), "{spec:?}");
        }
    }
}
