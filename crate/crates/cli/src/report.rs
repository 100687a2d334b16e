//! JSON renderings of library results. Rationals are `"p/q"` strings.

use efcheck_core::augmentation::{Augmented, MutualEfReport};
use efcheck_core::auxiliary::{AuxiliarySolution, EquivalenceReport};
use efcheck_core::ef::{EfVerdict, MapImageReport, Witness};
use efcheck_core::lp::LpOutcome;
use efcheck_core::mstp::{MstpFormulation, ModelSummary, ParadoxReport, RedundancyReport};
use efcheck_core::numeric::format_rational;
use efcheck_core::polyhedron::json::{rationals_to_strings, PolyhedronDoc};
use efcheck_core::projection::ProjectionResult;
use efcheck_core::{HPolyhedron, Matrix, Rational, VPolytope};
use serde_json::{json, Value};

pub fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn vector(v: &[Rational]) -> Value {
    json!(rationals_to_strings(v))
}

pub fn vectors(vs: &[Vec<Rational>]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v)).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    vectors(&m.to_rows())
}

/// Machine-readable document plus human-readable rows.
pub fn polyhedron(p: &HPolyhedron) -> Value {
    let mut doc = serde_json::to_value(PolyhedronDoc::from(p)).expect("serializable");
    let rows: Vec<String> = p
        .constraints()
        .iter()
        .map(|c| c.display_with(p.space()))
        .collect();
    doc["rows"] = json!(rows);
    doc
}

pub fn lp_outcome(o: &LpOutcome) -> Value {
    json!({
        "status": o.status,
        "value": o.value.as_ref().map(q),
        "point": o.point.as_deref().map(vector),
        "ray": o.ray.as_deref().map(vector),
        "iterations": o.iterations,
    })
}

pub fn projection(r: &ProjectionResult) -> Value {
    json!({
        "kind": r.kind,
        "description": r.description.as_ref().map(polyhedron),
        "steps": r.steps,
    })
}

pub fn vpolytope(v: &VPolytope) -> Value {
    json!({
        "vars": v.space.names().collect::<Vec<_>>(),
        "vertices": vectors(&v.vertices),
        "rays": vectors(&v.rays),
    })
}

pub fn map_image(r: &MapImageReport) -> Value {
    json!({
        "valid": r.valid,
        "images": r.images.iter().map(|(u, x)| json!({"from": vector(u), "to": vector(x)})).collect::<Vec<_>>(),
        "outside": vectors(&r.outside),
        "uncovered": vectors(&r.uncovered),
    })
}

pub fn verdict(v: &EfVerdict) -> Value {
    let witness = match &v.witness {
        Witness::Projection(p) => json!({"projection": projection(p)}),
        Witness::LinearMap(w) => json!({"linear_map": {
            "matrix": matrix(&w.matrix),
            "assignment": w.assignment,
            "u_vertices": vectors(&w.u_vertices),
            "x_vertices": vectors(&w.x_vertices),
        }}),
        Witness::Counterexample {
            x,
            lifted,
            direction,
        } => json!({"counterexample": {
            "x": vector(x),
            "lifted": lifted.as_deref().map(vector),
            "direction": direction,
        }}),
        Witness::None => Value::Null,
    };
    json!({
        "definition": v.definition,
        "outcome": v.outcome,
        "holds": v.holds(),
        "witness": witness,
        "notes": v.notes,
    })
}

pub fn augmented(w: &Augmented) -> Value {
    json!({
        "polyhedron": polyhedron(&w.poly),
        "p1_rows": [w.p1_rows.start, w.p1_rows.end],
        "mixed_rows": [w.mixed_rows.start, w.mixed_rows.end],
        "p2_rows": [w.p2_rows.start, w.p2_rows.end],
    })
}

pub fn mutual(r: &MutualEfReport) -> Value {
    json!({
        "valid": r.valid(),
        "convention": r.convention,
        "x1_projection_equals_p1": r.x1_projection_equals_p1,
        "x2_projection_equals_p2": r.x2_projection_equals_p2,
        "mixed_rows_redundant": r.mixed_rows_redundant,
        "u_induced_rows": r.u_induced_rows,
        "conclusions": r.conclusions,
    })
}

pub fn formulation(f: &MstpFormulation, outcome: &LpOutcome) -> Value {
    json!({
        "label": f.label.as_str(),
        "rows": f.rows(),
        "vars": f.vars(),
        "x_vars": f.x_vars(),
        "status": outcome.status,
        "value": outcome.value.as_ref().map(q),
        "edge_values": outcome.point.as_deref().map(|p| vector(&f.edge_values(p))),
    })
}

pub fn redundancy(r: &RedundancyReport) -> Value {
    json!({
        "holds": r.holds(),
        "index_set": r.index_set_note,
        "checks": r.checks.iter().map(|c| json!({
            "set": c.set,
            "bound": q(&c.bound),
            "maximum": q(&c.maximum),
            "redundant": c.redundant(),
        })).collect::<Vec<_>>(),
    })
}

fn summary(m: &ModelSummary) -> Value {
    json!({
        "label": m.label,
        "rows": m.rows,
        "vars": m.vars,
        "x_vars": m.x_vars,
        "optimum": q(&m.optimum),
    })
}

pub fn paradox(r: &ParadoxReport) -> Value {
    json!({
        "optima_agree": r.optima_agree(),
        "edmonds": summary(&r.edmonds),
        "martin": summary(&r.martin),
        "restated": summary(&r.restated),
        "augmented": summary(&r.augmented),
        "kruskal": q(&r.kruskal),
        "notes": r.notes,
    })
}

pub fn auxiliary_solution(s: &AuxiliarySolution) -> Value {
    json!({
        "w_star": vector(&s.w_star),
        "x_star": vector(&s.x_star),
        "value": q(&s.value),
    })
}

pub fn equivalence(r: &EquivalenceReport) -> Value {
    json!({
        "holds": r.holds(),
        "injectivity_note": r.injectivity_note,
        "cases": r.cases.iter().map(|c| json!({
            "alpha": vector(&c.alpha),
            "direct": q(&c.direct),
            "auxiliary": q(&c.auxiliary),
            "offset": q(&c.offset),
            "agrees": c.agrees(),
        })).collect::<Vec<_>>(),
    })
}
