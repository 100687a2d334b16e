//! JSON encoding of polyhedra.
//!
//! ```json
//! {"vars": [{"name": "x1", "block": "X", "nonneg": true}, ...],
//!  "constraints": [{"coeffs": ["2", "1"], "rel": "<=", "rhs": "6"}]}
//! ```
//!
//! Rationals are strings (`"p/q"` or `"p"`), so values round-trip exactly.

use serde::{Deserialize, Serialize};

use super::{Block, HPolyhedron, LinearConstraint, Relation, VarSpace};
use crate::error::{Error, Result};
use crate::numeric::{format_rational, parse_rational, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarDoc {
    pub name: String,
    #[serde(default = "default_block")]
    pub block: Block,
    #[serde(default)]
    pub nonneg: bool,
}

fn default_block() -> Block {
    Block::X
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintDoc {
    pub coeffs: Vec<String>,
    pub rel: Relation,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronDoc {
    pub vars: Vec<VarDoc>,
    #[serde(default)]
    pub constraints: Vec<ConstraintDoc>,
}

pub fn rationals_to_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

pub fn strings_to_rationals(values: &[String]) -> Result<Vector> {
    values.iter().map(|s| parse_rational(s)).collect()
}

impl From<&HPolyhedron> for PolyhedronDoc {
    fn from(p: &HPolyhedron) -> Self {
        let vars = (0..p.dim())
            .map(|j| VarDoc {
                name: p.space().name(j).to_owned(),
                block: p.space().block(j),
                nonneg: p.is_nonneg(j),
            })
            .collect();
        let constraints = p
            .constraints()
            .iter()
            .map(|c| ConstraintDoc {
                coeffs: rationals_to_strings(&c.coeffs),
                rel: c.rel,
                rhs: format_rational(&c.rhs),
            })
            .collect();
        PolyhedronDoc { vars, constraints }
    }
}

impl TryFrom<&PolyhedronDoc> for HPolyhedron {
    type Error = Error;

    fn try_from(doc: &PolyhedronDoc) -> Result<Self> {
        let space = VarSpace::new(doc.vars.iter().map(|v| (v.name.clone(), v.block)))?;
        let nonneg = doc.vars.iter().map(|v| v.nonneg).collect();
        let constraints = doc
            .constraints
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let coeffs = strings_to_rationals(&c.coeffs)
                    .map_err(|e| Error::Parse(format!("constraint {k}: {e}")))?;
                let rhs = parse_rational(&c.rhs)
                    .map_err(|e| Error::Parse(format!("constraint {k}: {e}")))?;
                Ok(LinearConstraint::new(coeffs, c.rel, rhs))
            })
            .collect::<Result<Vec<_>>>()?;
        HPolyhedron::new(space, constraints, nonneg)
    }
}

impl HPolyhedron {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PolyhedronDoc::from(self)).expect("serializable")
    }

    /// Parses the JSON format above. Syntax errors report line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PolyhedronDoc = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        HPolyhedron::try_from(&doc)
    }
}
