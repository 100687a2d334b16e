//! Input file formats.

use std::fs;
use std::path::Path;

use efcheck_core::augmentation::AugmentationSpec;
use efcheck_core::auxiliary::LinkingMap;
use efcheck_core::lp::{LpProblem, Sense};
use efcheck_core::mstp::WeightedGraph;
use efcheck_core::numeric::parse_rational;
use efcheck_core::polyhedron::json::{strings_to_rationals, PolyhedronDoc};
use efcheck_core::{Error, HPolyhedron, Matrix, Result, Vector};
use serde::de::DeserializeOwned;
use serde::Deserialize;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| {
        Error::Parse(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn polyhedron(path: &Path) -> Result<HPolyhedron> {
    let doc: PolyhedronDoc = parse_json(path)?;
    in_file(path, HPolyhedron::try_from(&doc))
}

/// `{"sense": "min", "objective": ["1", "0"], "feasible_set": {...}}`.
#[derive(Deserialize)]
struct LpDoc {
    sense: Sense,
    objective: Vec<String>,
    feasible_set: PolyhedronDoc,
}

pub fn lp_problem(path: &Path) -> Result<LpProblem> {
    let doc: LpDoc = parse_json(path)?;
    let objective = in_file(path, strings_to_rationals(&doc.objective))?;
    let feasible_set = in_file(path, HPolyhedron::try_from(&doc.feasible_set))?;
    LpProblem::new(objective, doc.sense, feasible_set)
}

fn matrix(rows: &[Vec<String>]) -> Result<Matrix> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| strings_to_rationals(r))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// `{"C": [["-1", "5/2"], ...], "b": ["0", ...]}`; `b` defaults to zero.
#[derive(Deserialize)]
struct LinkDoc {
    #[serde(rename = "C")]
    c: Vec<Vec<String>>,
    #[serde(default)]
    b: Option<Vec<String>>,
}

pub fn linking_map(path: &Path) -> Result<LinkingMap> {
    let doc: LinkDoc = parse_json(path)?;
    let c = in_file(path, matrix(&doc.c))?;
    match doc.b {
        Some(b) => LinkingMap::new(c, in_file(path, strings_to_rationals(&b))?),
        None => Ok(LinkingMap::linear(c)),
    }
}

/// `{"B1": [[...]], "B2": [[...]], "C1": [diag...], "C2": [diag...]}`.
#[derive(Deserialize)]
#[allow(non_snake_case)]
struct SpecDoc {
    B1: Vec<Vec<String>>,
    B2: Vec<Vec<String>>,
    C1: Vec<String>,
    C2: Vec<String>,
}

pub fn augmentation_spec(path: &Path, p1: HPolyhedron, p2: HPolyhedron) -> Result<AugmentationSpec> {
    let doc: SpecDoc = parse_json(path)?;
    let diag = |d: &[String]| -> Result<Matrix> { Ok(Matrix::diagonal(&strings_to_rationals(d)?)) };
    Ok(AugmentationSpec {
        p1,
        p2,
        b1: in_file(path, matrix(&doc.B1))?,
        b2: in_file(path, matrix(&doc.B2))?,
        c1: in_file(path, diag(&doc.C1))?,
        c2: in_file(path, diag(&doc.C2))?,
    })
}

pub fn graph(path: &Path) -> Result<WeightedGraph> {
    in_file(path, WeightedGraph::parse(&read(path)?))
}

/// Comma-separated rationals, e.g. `"1, -1/2, 0"`.
pub fn vector(text: &str) -> Result<Vector> {
    text.split(',')
        .map(|t| parse_rational(t.trim()))
        .collect()
}
