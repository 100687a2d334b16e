//! H- and V-descriptions of polyhedra over a named, block-labelled variable
//! space.
//!
//! Equalities are stored as [`Relation::Eq`] rows and nonnegativity as a flag
//! per variable rather than as rows; the LP and elimination kernels expand
//! them where needed. Row counts therefore match the way models are usually
//! written down (`x ∈ ℝⁿ₊` is not counted as `n` constraints).

pub mod json;
mod ops;
mod parse;

pub use ops::{Boundedness, Containment, Redundancy};

use std::fmt;

use indexmap::IndexMap;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{dot, primitive_integer, Rational, Vector};

/// Block label of a variable: the `x` part, the `w` part, or an auxiliary
/// variable introduced by a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Block {
    X,
    W,
    #[serde(rename = "U_AUX")]
    UAux,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Block::X => "X",
            Block::W => "W",
            Block::UAux => "U_AUX",
        })
    }
}

impl std::str::FromStr for Block {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Block::X),
            "W" | "w" => Ok(Block::W),
            "U_AUX" | "u_aux" | "U" | "u" => Ok(Block::UAux),
            other => Err(Error::InvalidInput(format!("unknown block label {other:?}"))),
        }
    }
}

/// Ordered list of distinct variable names, each carrying a block label.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VarSpace {
    vars: IndexMap<String, Block>,
}

impl VarSpace {
    pub fn new<I, S>(vars: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Block)>,
        S: Into<String>,
    {
        let mut map = IndexMap::new();
        for (name, block) in vars {
            let name = name.into();
            if name.is_empty() {
                return Err(Error::InvalidInput("empty variable name".into()));
            }
            if map.insert(name.clone(), block).is_some() {
                return Err(Error::InvalidInput(format!("duplicate variable {name:?}")));
            }
        }
        Ok(VarSpace { vars: map })
    }

    /// All variables in one block, named `prefix1..prefixN`.
    pub fn uniform(prefix: &str, n: usize, block: Block) -> Self {
        VarSpace::new((1..=n).map(|i| (format!("{prefix}{i}"), block)))
            .expect("generated names are distinct")
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.keys().map(String::as_str)
    }

    pub fn name(&self, index: usize) -> &str {
        self.vars.get_index(index).expect("variable index").0
    }

    pub fn block(&self, index: usize) -> Block {
        *self.vars.get_index(index).expect("variable index").1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.get_index_of(name)
    }

    pub fn block_of(&self, name: &str) -> Option<Block> {
        self.vars.get(name).copied()
    }

    pub fn indices_in(&self, block: Block) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.block(i) == block).collect()
    }

    /// Sub-space keeping the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> VarSpace {
        VarSpace::new(indices.iter().map(|&i| (self.name(i).to_owned(), self.block(i))))
            .expect("subset of distinct names")
    }

    /// Concatenation; fails when the two spaces share a name.
    pub fn concat(&self, other: &VarSpace) -> Result<VarSpace> {
        VarSpace::new(
            self.vars
                .iter()
                .chain(other.vars.iter())
                .map(|(n, b)| (n.clone(), *b)),
        )
    }

    /// Same names, every label replaced by `block`.
    pub fn relabel(&self, block: Block) -> VarSpace {
        VarSpace::new(self.names().map(|n| (n.to_owned(), block))).expect("same names")
    }

    pub fn same_names(&self, other: &VarSpace) -> bool {
        self.len() == other.len() && self.names().zip(other.names()).all(|(a, b)| a == b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }

    pub fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }

    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

/// One row `coeffs · z  rel  rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearConstraint {
    pub coeffs: Vector,
    pub rel: Relation,
    pub rhs: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vector, rel: Relation, rhs: Rational) -> Self {
        LinearConstraint { coeffs, rel, rhs }
    }

    pub fn le(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }

    pub fn ge(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Ge, rhs)
    }

    pub fn eq(coeffs: Vector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    pub fn lhs(&self, z: &[Rational]) -> Rational {
        dot(&self.coeffs, z)
    }

    pub fn is_satisfied_by(&self, z: &[Rational]) -> bool {
        self.rel.holds(&self.lhs(z), &self.rhs)
    }

    pub fn involves(&self, var: usize) -> bool {
        !self.coeffs[var].is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `≥` rows become `≤` rows by negation; `≤` and `=` are unchanged.
    pub fn to_le_or_eq(&self) -> LinearConstraint {
        match self.rel {
            Relation::Ge => LinearConstraint::le(
                self.coeffs.iter().map(|c| -c).collect(),
                -self.rhs.clone(),
            ),
            _ => self.clone(),
        }
    }

    /// Canonical representative: `≥` flipped to `≤`, the row scaled to
    /// coprime integers, and equalities oriented so the leading coefficient
    /// is positive. Two rows describing the same half-space (or hyperplane)
    /// canonicalize identically.
    pub fn canonical(&self) -> LinearConstraint {
        let row = self.to_le_or_eq();
        let mut full = row.coeffs.clone();
        full.push(row.rhs.clone());
        let mut scaled = if row.is_trivial() {
            full
        } else {
            let mut v = primitive_integer(&row.coeffs);
            // primitive_integer works on the coefficients only; rescale rhs by
            // the same positive factor.
            let lead = row.coeffs.iter().position(|c| !c.is_zero()).unwrap();
            let factor = &v[lead] / &row.coeffs[lead];
            v.push(&row.rhs * &factor);
            v
        };
        if row.rel == Relation::Eq {
            if let Some(lead) = scaled.iter().position(|c| !c.is_zero()) {
                if scaled[lead].is_negative() {
                    scaled.iter_mut().for_each(|c| *c = -c.clone());
                }
            }
        }
        let rhs = scaled.pop().unwrap();
        LinearConstraint::new(scaled, row.rel, rhs)
    }

    pub fn display_with(&self, space: &VarSpace) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = space.name(i);
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag == Rational::from_integer(1.into()) {
                out.push_str(name);
            } else {
                out.push_str(&format!("{mag} {name}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        format!("{out} {} {}", self.rel.symbol(), self.rhs)
    }
}

/// Inequality/equality description `{z : rows, z_j ≥ 0 for flagged j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    space: VarSpace,
    constraints: Vec<LinearConstraint>,
    nonneg: Vec<bool>,
}

impl HPolyhedron {
    pub fn new(
        space: VarSpace,
        constraints: Vec<LinearConstraint>,
        nonneg: Vec<bool>,
    ) -> Result<Self> {
        if nonneg.len() != space.len() {
            return Err(Error::DimensionMismatch(format!(
                "nonnegativity flags for {} variables in a space of {}",
                nonneg.len(),
                space.len()
            )));
        }
        for (k, c) in constraints.iter().enumerate() {
            if c.coeffs.len() != space.len() {
                return Err(Error::DimensionMismatch(format!(
                    "constraint {k} has {} coefficients in a space of {}",
                    c.coeffs.len(),
                    space.len()
                )));
            }
        }
        Ok(HPolyhedron {
            space,
            constraints,
            nonneg,
        })
    }

    /// The whole space (no rows, no sign restrictions).
    pub fn universe(space: VarSpace) -> Self {
        let n = space.len();
        HPolyhedron {
            space,
            constraints: Vec::new(),
            nonneg: vec![false; n],
        }
    }

    /// Builds a polyhedron from textual rows such as `"2 x1 + x2 <= 6"`.
    ///
    /// Every variable named in `nonneg` is constrained to be nonnegative.
    pub fn parse(space: VarSpace, rows: &[&str], nonneg: &[&str]) -> Result<Self> {
        let constraints = rows
            .iter()
            .map(|r| parse::parse_constraint(&space, r))
            .collect::<Result<Vec<_>>>()?;
        let mut flags = vec![false; space.len()];
        for name in nonneg {
            let i = space
                .index_of(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown variable {name:?}")))?;
            flags[i] = true;
        }
        HPolyhedron::new(space, constraints, flags)
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn nonneg(&self) -> &[bool] {
        &self.nonneg
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg[var]
    }

    pub fn push(&mut self, c: LinearConstraint) -> Result<()> {
        if c.coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "constraint has {} coefficients in a space of {}",
                c.coeffs.len(),
                self.dim()
            )));
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn set_nonneg(&mut self, var: usize, flag: bool) {
        self.nonneg[var] = flag;
    }

    /// Same point set with a different variable space of equal size (names
    /// and block labels replaced positionally).
    pub fn with_space(&self, space: VarSpace) -> Result<HPolyhedron> {
        if space.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot rename {} variables into a space of {}",
                self.dim(),
                space.len()
            )));
        }
        Ok(HPolyhedron {
            space,
            constraints: self.constraints.clone(),
            nonneg: self.nonneg.clone(),
        })
    }

    /// Copy without the constraint at `index`.
    pub fn without(&self, index: usize) -> HPolyhedron {
        let mut out = self.clone();
        out.constraints.remove(index);
        out
    }

    /// Copy with only the constraints at the listed indices.
    pub fn keep_rows(&self, keep: impl Fn(usize) -> bool) -> HPolyhedron {
        HPolyhedron {
            space: self.space.clone(),
            constraints: self
                .constraints
                .iter()
                .enumerate()
                .filter(|(i, _)| keep(*i))
                .map(|(_, c)| c.clone())
                .collect(),
            nonneg: self.nonneg.clone(),
        }
    }

    /// Embeds into a larger space, mapping variable `i` to `target[i]`.
    pub fn embed(&self, space: VarSpace, target: &[usize]) -> Result<HPolyhedron> {
        if target.len() != self.dim() || target.iter().any(|&t| t >= space.len()) {
            return Err(Error::DimensionMismatch("invalid embedding".into()));
        }
        let n = space.len();
        let mut nonneg = vec![false; n];
        for (i, &t) in target.iter().enumerate() {
            nonneg[t] = self.nonneg[i];
        }
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let mut coeffs = vec![Rational::zero(); n];
                for (i, &t) in target.iter().enumerate() {
                    coeffs[t] = c.coeffs[i].clone();
                }
                LinearConstraint::new(coeffs, c.rel, c.rhs.clone())
            })
            .collect();
        HPolyhedron::new(space, constraints, nonneg)
    }

    /// Rows as `≤`/`=` with every nonnegativity flag expanded to `-z_j ≤ 0`.
    pub fn expanded_rows(&self) -> Vec<LinearConstraint> {
        let mut rows: Vec<LinearConstraint> =
            self.constraints.iter().map(LinearConstraint::to_le_or_eq).collect();
        for (j, &flag) in self.nonneg.iter().enumerate() {
            if flag {
                let mut coeffs = vec![Rational::zero(); self.dim()];
                coeffs[j] = Rational::from_integer((-1).into());
                rows.push(LinearConstraint::le(coeffs, Rational::zero()));
            }
        }
        rows
    }

    pub fn check_point(&self, z: &[Rational]) -> Result<()> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} in a space of {}",
                z.len(),
                self.dim()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            writeln!(f, "{}", c.display_with(&self.space))?;
        }
        let nn: Vec<&str> = (0..self.dim())
            .filter(|&j| self.nonneg[j])
            .map(|j| self.space.name(j))
            .collect();
        if !nn.is_empty() {
            writeln!(f, "{} >= 0", nn.join(", "))?;
        }
        Ok(())
    }
}

/// Vertex (and ray) description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    pub space: VarSpace,
    pub vertices: Vec<Vector>,
    pub rays: Vec<Vector>,
}

impl VPolytope {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}
