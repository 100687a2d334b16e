//! Minimum spanning tree LP models.
//!
//! * Edmonds' subtour-elimination LP `P` over edge variables `x_e`.
//! * Martin's compact LP `Q`, which adds `z_{k,i,j}` (edge `{i,j}` oriented
//!   towards `j` when the tree is rooted at `k`).
//! * `Q′`, the restatement of `Q` in which every `x_e` is replaced by
//!   `z_{r_e,i_e,j_e} + z_{r_e,j_e,i_e}` for a root `r_e` off the edge, so
//!   no `x` variable remains.
//!
//! Variables are named `x_i_j` and `z_k_i_j`; vertices are numbered from 1.

use std::collections::BTreeSet;
use std::fmt;
use std::thread;

use indexmap::IndexMap;
use itertools::Itertools;
use num::{One, Zero};
use petgraph::unionfind::UnionFind;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lp::{LpOutcome, LpProblem, Sense};
use crate::numeric::{int, parse_rational, ratio, Rational, Vector};
use crate::polyhedron::{Block, HPolyhedron, LinearConstraint, VarSpace};

/// Largest `n` for which the subtour rows are generated.
pub const EDMONDS_MAX_VERTICES: usize = 16;
/// Largest `n` for [`check_subtour_redundancy`].
pub const REDUNDANCY_MAX_VERTICES: usize = 6;
/// Largest `n` for [`paradox_demo`].
pub const PARADOX_MAX_VERTICES: usize = 5;

/// How the subtour index set is read.
pub const SUBTOUR_INDEX_NOTE: &str =
    "subtour rows are indexed by vertex sets S with 2 <= |S| <= n-1; gamma(S) is the set of edges with both ends in S";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub cost: Rational,
}

/// An undirected connected graph on vertices `1..=n` with rational costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Edges are stored with `i < j`, in the given order.
    pub fn new(n: usize, edges: Vec<(usize, usize, Rational)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("a graph needs at least one vertex".into()));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (a, b, cost) in edges {
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at vertex {a}")));
            }
            let (i, j) = (a.min(b), a.max(b));
            if i == 0 || j > n {
                return Err(Error::InvalidInput(format!(
                    "edge {a}-{b} leaves the vertex range 1..={n}"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidInput(format!("duplicate edge {i}-{j}")));
            }
            out.push(Edge { i, j, cost });
        }
        let g = WeightedGraph { n, edges: out };
        if !g.is_connected() {
            return Err(Error::InvalidInput("graph is not connected".into()));
        }
        Ok(g)
    }

    /// `K_n` with costs assigned to edges in lexicographic order.
    pub fn complete(n: usize, costs: &[Rational]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (1..=n).tuple_combinations().collect();
        if costs.len() != pairs.len() {
            return Err(Error::DimensionMismatch(format!(
                "K{n} has {} edges, got {} costs",
                pairs.len(),
                costs.len()
            )));
        }
        let edges = pairs
            .into_iter()
            .zip(costs)
            .map(|((i, j), c)| (i, j, c.clone()))
            .collect();
        WeightedGraph::new(n, edges)
    }

    /// `K_n` with every cost equal to one.
    pub fn complete_unit(n: usize) -> Self {
        let m = n * n.saturating_sub(1) / 2;
        WeightedGraph::complete(n, &vec![Rational::one(); m]).expect("complete graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn costs(&self) -> Vector {
        self.edges.iter().map(|e| e.cost.clone()).collect()
    }

    /// Same topology, new costs.
    pub fn with_costs(&self, costs: &[Rational]) -> Result<Self> {
        if costs.len() != self.edges.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} edges, {} costs",
                self.edges.len(),
                costs.len()
            )));
        }
        let mut g = self.clone();
        for (e, c) in g.edges.iter_mut().zip(costs) {
            e.cost = c.clone();
        }
        Ok(g)
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| match (e.i == v, e.j == v) {
                (true, _) => Some(e.j),
                (_, true) => Some(e.i),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            uf.union(e.i - 1, e.j - 1);
        }
        (1..self.n).all(|v| uf.equiv(0, v))
    }

    /// Parses the text format: a header `n <count>` followed by one
    /// `i j cost` line per edge. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let mut tokens = tokens_with_columns(line);
            let Some((col, first)) = tokens.next() else {
                continue;
            };
            let at = |col: usize, msg: String| {
                Error::Parse(format!("line {} column {}: {msg}", lineno + 1, col))
            };
            if n.is_none() {
                if first != "n" {
                    return Err(at(col, "expected header `n <count>`".into()));
                }
                let (c, count) = tokens
                    .next()
                    .ok_or_else(|| at(col + 1, "missing vertex count".into()))?;
                n = Some(
                    count
                        .parse::<usize>()
                        .map_err(|_| at(c, format!("invalid vertex count {count:?}")))?,
                );
                if let Some((c, extra)) = tokens.next() {
                    return Err(at(c, format!("unexpected {extra:?}")));
                }
                continue;
            }
            let vertex = |c: usize, t: &str| {
                t.parse::<usize>()
                    .map_err(|_| at(c, format!("invalid vertex {t:?}")))
            };
            let i = vertex(col, first)?;
            let (cj, tj) = tokens
                .next()
                .ok_or_else(|| at(col + first.len(), "missing second vertex".into()))?;
            let j = vertex(cj, tj)?;
            let (cc, tc) = tokens
                .next()
                .ok_or_else(|| at(cj + tj.len(), "missing cost".into()))?;
            let cost = parse_rational(tc).map_err(|e| at(cc, e.to_string()))?;
            if let Some((c, extra)) = tokens.next() {
                return Err(at(c, format!("unexpected {extra:?}")));
            }
            edges.push((i, j, cost));
        }
        let n = n.ok_or_else(|| Error::Parse("line 1 column 1: missing header `n <count>`".into()))?;
        WeightedGraph::new(n, edges)
    }
}

fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let token = &trimmed[..end];
        let col = line[..offset].chars().count() + 1;
        offset += end;
        rest = &trimmed[end..];
        Some((col, token))
    })
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for e in &self.edges {
            writeln!(f, "{} {} {}", e.i, e.j, e.cost)?;
        }
        Ok(())
    }
}

/// Minimum spanning tree weight and edge indices (ties broken by edge order).
pub fn kruskal(g: &WeightedGraph) -> Result<(Rational, Vec<usize>)> {
    let mut order: Vec<usize> = (0..g.edges.len()).collect();
    order.sort_by(|&a, &b| g.edges[a].cost.cmp(&g.edges[b].cost));
    let mut uf = UnionFind::new(g.n);
    let mut weight = Rational::zero();
    let mut tree = Vec::with_capacity(g.n.saturating_sub(1));
    for idx in order {
        let e = &g.edges[idx];
        if uf.union(e.i - 1, e.j - 1) {
            weight += &e.cost;
            tree.push(idx);
        }
    }
    if tree.len() + 1 != g.n {
        return Err(Error::InvalidInput("graph is not connected".into()));
    }
    tree.sort_unstable();
    Ok((weight, tree))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModelLabel {
    EdmondsP,
    MartinQ,
    MartinQPrime,
}

impl ModelLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelLabel::EdmondsP => "EDMONDS_P",
            ModelLabel::MartinQ => "MARTIN_Q",
            ModelLabel::MartinQPrime => "MARTIN_Q_PRIME",
        }
    }
}

impl fmt::Display for ModelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MstpFormulation {
    pub label: ModelLabel,
    pub lp: LpProblem,
    pub var_index: IndexMap<String, usize>,
    /// Per edge, the columns whose sum is the edge value `x_e`.
    pub edge_columns: Vec<Vec<usize>>,
}

impl MstpFormulation {
    pub fn rows(&self) -> usize {
        self.lp.feasible_set.constraints().len()
    }

    pub fn vars(&self) -> usize {
        self.lp.feasible_set.dim()
    }

    /// Number of `x_e` columns.
    pub fn x_vars(&self) -> usize {
        self.var_index.keys().filter(|k| k.starts_with("x_")).count()
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        self.lp.solve()
    }

    /// Edge values `x_e` read off a point of this model.
    pub fn edge_values(&self, point: &[Rational]) -> Vector {
        self.edge_columns
            .iter()
            .map(|cols| cols.iter().map(|&c| &point[c]).sum())
            .collect()
    }
}

fn x_name(e: &Edge) -> String {
    format!("x_{}_{}", e.i, e.j)
}

fn z_name(k: usize, i: usize, j: usize) -> String {
    format!("z_{k}_{i}_{j}")
}

/// Vertex subsets `S` with `2 <= |S| <= n-1`, by size then lexicographically.
pub fn subtour_sets(n: usize) -> Vec<Vec<usize>> {
    (2..n)
        .flat_map(|size| (1..=n).combinations(size))
        .collect()
}

/// Indices of edges with both ends in `set`.
pub fn gamma(g: &WeightedGraph, set: &[usize]) -> Vec<usize> {
    (0..g.edges.len())
        .filter(|&e| set.contains(&g.edges[e].i) && set.contains(&g.edges[e].j))
        .collect()
}

fn formulation(
    label: ModelLabel,
    names: Vec<String>,
    rows: Vec<LinearConstraint>,
    objective: Vector,
    edge_columns: Vec<Vec<usize>>,
) -> Result<MstpFormulation> {
    let dim = names.len();
    let space = VarSpace::new(names.iter().map(|n| {
        let block = if n.starts_with("x_") { Block::X } else { Block::W };
        (n.clone(), block)
    }))?;
    let poly = HPolyhedron::new(space, rows, vec![true; dim])?;
    Ok(MstpFormulation {
        label,
        lp: LpProblem::new(objective, Sense::Min, poly)?,
        var_index: names.into_iter().enumerate().map(|(i, n)| (n, i)).collect(),
        edge_columns,
    })
}

fn sparse(dim: usize, terms: impl IntoIterator<Item = (usize, Rational)>) -> Vector {
    let mut v = vec![Rational::zero(); dim];
    for (j, c) in terms {
        v[j] += c;
    }
    v
}

/// Edmonds' LP: `Σ x_e = n−1`, `Σ_{e∈γ(S)} x_e ≤ |S|−1`, `x ≥ 0`.
pub fn build_edmonds(g: &WeightedGraph) -> Result<MstpFormulation> {
    if g.n > EDMONDS_MAX_VERTICES {
        return Err(Error::LimitExceeded {
            what: "subtour rows (vertices)",
            needed: g.n as u128,
            limit: EDMONDS_MAX_VERTICES as u128,
        });
    }
    let m = g.edges.len();
    let names = g.edges.iter().map(x_name).collect();
    let mut rows = vec![LinearConstraint::eq(
        vec![Rational::one(); m],
        int(g.n as i64 - 1),
    )];
    for set in subtour_sets(g.n) {
        let coeffs = sparse(m, gamma(g, &set).into_iter().map(|e| (e, Rational::one())));
        rows.push(LinearConstraint::le(coeffs, int(set.len() as i64 - 1)));
    }
    formulation(
        ModelLabel::EdmondsP,
        names,
        rows,
        g.costs(),
        (0..m).map(|e| vec![e]).collect(),
    )
}

/// Column layout shared by `Q` and `Q′`: `z_k_i_j` for every root `k` and
/// both orientations of every edge.
struct ZLayout {
    offset: usize,
    m: usize,
}

impl ZLayout {
    /// Column of `z_{k, e.i, e.j}` (forward) or `z_{k, e.j, e.i}`.
    fn col(&self, k: usize, e: usize, forward: bool) -> usize {
        self.offset + 2 * ((k - 1) * self.m + e) + usize::from(!forward)
    }

    fn names(g: &WeightedGraph) -> Vec<String> {
        let mut out = Vec::with_capacity(2 * g.n * g.edges.len());
        for k in 1..=g.n {
            for e in &g.edges {
                out.push(z_name(k, e.i, e.j));
                out.push(z_name(k, e.j, e.i));
            }
        }
        out
    }

    /// Column of `z_{k,v,u}` for the edge `{v,u}`.
    fn oriented(&self, g: &WeightedGraph, k: usize, v: usize, u: usize) -> usize {
        let e = g
            .edges
            .iter()
            .position(|e| (e.i, e.j) == (v.min(u), v.max(u)))
            .expect("edge exists");
        self.col(k, e, v < u)
    }

    /// `Σ_{s>i} z_{k,i,s} + Σ_{h<i} z_{k,i,h} ≤ 1` for `i ≠ k` and
    /// `… ≤ 0` for `i = k`.
    fn out_degree_rows(&self, g: &WeightedGraph, dim: usize) -> Vec<LinearConstraint> {
        let mut rows = Vec::with_capacity(g.n * g.n);
        for k in 1..=g.n {
            for i in (1..=g.n).filter(|&i| i != k) {
                rows.push(self.out_row(g, dim, k, i, 1));
            }
        }
        for k in 1..=g.n {
            rows.push(self.out_row(g, dim, k, k, 0));
        }
        rows
    }

    fn out_row(&self, g: &WeightedGraph, dim: usize, k: usize, i: usize, rhs: i64) -> LinearConstraint {
        let terms = g
            .neighbors(i)
            .into_iter()
            .map(|u| (self.oriented(g, k, i, u), Rational::one()));
        LinearConstraint::le(sparse(dim, terms), int(rhs))
    }
}

/// Martin's LP `Q` in the displayed form.
pub fn build_martin(g: &WeightedGraph) -> Result<MstpFormulation> {
    let m = g.edges.len();
    let z = ZLayout { offset: m, m };
    let mut names: Vec<String> = g.edges.iter().map(x_name).collect();
    names.extend(ZLayout::names(g));
    let dim = names.len();

    let mut rows = vec![LinearConstraint::eq(
        sparse(dim, (0..m).map(|e| (e, Rational::one()))),
        int(g.n as i64 - 1),
    )];
    for k in 1..=g.n {
        for e in 0..m {
            let coeffs = sparse(
                dim,
                [
                    (z.col(k, e, true), Rational::one()),
                    (z.col(k, e, false), Rational::one()),
                    (e, -Rational::one()),
                ],
            );
            rows.push(LinearConstraint::eq(coeffs, Rational::zero()));
        }
    }
    rows.extend(z.out_degree_rows(g, dim));

    let mut objective = g.costs();
    objective.resize(dim, Rational::zero());
    formulation(
        ModelLabel::MartinQ,
        names,
        rows,
        objective,
        (0..m).map(|e| vec![e]).collect(),
    )
}

/// For each edge, the lowest-numbered vertex that is not one of its ends.
pub fn default_roots(g: &WeightedGraph) -> Result<Vec<usize>> {
    if g.n < 3 {
        return Err(Error::InvalidInput(
            "the restated model needs at least 3 vertices".into(),
        ));
    }
    Ok(g
        .edges
        .iter()
        .map(|e| (1..=g.n).find(|&r| r != e.i && r != e.j).expect("n >= 3"))
        .collect())
}

/// `Q′`: `Q` with `x_e` replaced by `z_{r_e,i_e,j_e} + z_{r_e,j_e,i_e}`.
///
/// Rows keep the layout of `Q`; for `k = r_e` the linking row becomes
/// `0 = 0` and is kept as such.
pub fn build_martin_restated(g: &WeightedGraph, roots: &[usize]) -> Result<MstpFormulation> {
    if g.n < 3 {
        return Err(Error::InvalidInput(
            "the restated model needs at least 3 vertices".into(),
        ));
    }
    let m = g.edges.len();
    if roots.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "{m} edges, {} roots",
            roots.len()
        )));
    }
    for (e, &r) in g.edges.iter().zip(roots) {
        if r == 0 || r > g.n || r == e.i || r == e.j {
            return Err(Error::InvalidInput(format!(
                "root {r} for edge {}-{} must be a vertex off the edge",
                e.i, e.j
            )));
        }
    }
    let z = ZLayout { offset: 0, m };
    let names = ZLayout::names(g);
    let dim = names.len();
    let x_cols: Vec<Vec<usize>> = (0..m)
        .map(|e| vec![z.col(roots[e], e, true), z.col(roots[e], e, false)])
        .collect();

    let mut rows = vec![LinearConstraint::eq(
        sparse(dim, x_cols.iter().flatten().map(|&c| (c, Rational::one()))),
        int(g.n as i64 - 1),
    )];
    for k in 1..=g.n {
        for (e, cols) in x_cols.iter().enumerate() {
            let mut terms = vec![
                (z.col(k, e, true), Rational::one()),
                (z.col(k, e, false), Rational::one()),
            ];
            terms.extend(cols.iter().map(|&c| (c, -Rational::one())));
            rows.push(LinearConstraint::eq(sparse(dim, terms), Rational::zero()));
        }
    }
    rows.extend(z.out_degree_rows(g, dim));

    let objective = sparse(
        dim,
        x_cols
            .iter()
            .zip(&g.edges)
            .flat_map(|(cols, e)| cols.iter().map(|&c| (c, e.cost.clone()))),
    );
    formulation(ModelLabel::MartinQPrime, names, rows, objective, x_cols)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtourCheck {
    pub set: Vec<usize>,
    pub bound: Rational,
    /// `max Σ_{e∈γ(S)} x_e` over `Q`.
    pub maximum: Rational,
}

impl SubtourCheck {
    pub fn redundant(&self) -> bool {
        self.maximum <= self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedundancyReport {
    pub checks: Vec<SubtourCheck>,
    pub index_set_note: &'static str,
}

impl RedundancyReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(SubtourCheck::redundant)
    }
}

/// Maximizes each subtour left-hand side over Martin's `Q`.
pub fn check_subtour_redundancy(g: &WeightedGraph) -> Result<RedundancyReport> {
    if g.n > REDUNDANCY_MAX_VERTICES {
        return Err(Error::LimitExceeded {
            what: "subtour redundancy check (vertices)",
            needed: g.n as u128,
            limit: REDUNDANCY_MAX_VERTICES as u128,
        });
    }
    let q = build_martin(g)?;
    let sets = subtour_sets(g.n);
    let check = |set: &Vec<usize>| -> Result<SubtourCheck> {
        let mut objective = vec![Rational::zero(); q.vars()];
        for e in gamma(g, set) {
            objective[e] = Rational::one();
        }
        let out = q.lp.feasible_set.optimize(&objective, Sense::Max)?;
        if !out.is_optimal() {
            return Err(Error::Infeasible(format!(
                "subtour LP for {set:?} ended {:?}",
                out.status
            )));
        }
        Ok(SubtourCheck {
            set: set.clone(),
            bound: int(set.len() as i64 - 1),
            maximum: out.optimal_value().clone(),
        })
    };
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).max(1);
    let chunk = sets.len().div_ceil(workers).max(1);
    let checks = thread::scope(|s| {
        let handles: Vec<_> = sets
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(check).collect::<Result<Vec<_>>>()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("redundancy worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(RedundancyReport {
        checks: checks.into_iter().flatten().collect(),
        index_set_note: SUBTOUR_INDEX_NOTE,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSummary {
    pub label: String,
    pub rows: usize,
    pub vars: usize,
    pub x_vars: usize,
    pub optimum: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParadoxReport {
    pub edmonds: ModelSummary,
    pub martin: ModelSummary,
    pub restated: ModelSummary,
    /// `Q` with every subtour row of `P` added.
    pub augmented: ModelSummary,
    pub kruskal: Rational,
    pub notes: Vec<String>,
}

impl ParadoxReport {
    pub fn optima_agree(&self) -> bool {
        [&self.martin, &self.restated, &self.augmented]
            .iter()
            .all(|m| m.optimum == self.edmonds.optimum)
            && self.edmonds.optimum == self.kruskal
    }
}

fn summarize(label: &str, f: &MstpFormulation) -> Result<ModelSummary> {
    let out = f.solve()?;
    if !out.is_optimal() {
        return Err(Error::Infeasible(format!("{label} ended {:?}", out.status)));
    }
    Ok(ModelSummary {
        label: label.to_owned(),
        rows: f.rows(),
        vars: f.vars(),
        x_vars: f.x_vars(),
        optimum: out.optimal_value().clone(),
    })
}

/// Sizes and optima of `P`, `Q`, `Q′` and `Q` augmented with `P`'s rows.
pub fn paradox_demo(g: &WeightedGraph) -> Result<ParadoxReport> {
    if g.n > PARADOX_MAX_VERTICES {
        return Err(Error::LimitExceeded {
            what: "paradox demo (vertices)",
            needed: g.n as u128,
            limit: PARADOX_MAX_VERTICES as u128,
        });
    }
    let p = build_edmonds(g)?;
    let q = build_martin(g)?;
    let q_prime = build_martin_restated(g, &default_roots(g)?)?;
    let mut augmented = q.clone();
    augmented.label = ModelLabel::MartinQ;
    let dim = q.vars();
    for row in p.lp.feasible_set.constraints().iter().skip(1) {
        let mut coeffs = row.coeffs.clone();
        coeffs.resize(dim, Rational::zero());
        augmented
            .lp
            .feasible_set
            .push(LinearConstraint::new(coeffs, row.rel, row.rhs.clone()))?;
    }
    let report = ParadoxReport {
        edmonds: summarize(ModelLabel::EdmondsP.as_str(), &p)?,
        martin: summarize(ModelLabel::MartinQ.as_str(), &q)?,
        restated: summarize(ModelLabel::MartinQPrime.as_str(), &q_prime)?,
        augmented: summarize("MARTIN_Q_PLUS_SUBTOUR_ROWS", &augmented)?,
        kruskal: kruskal(g)?.0,
        notes: vec![
            "adding the redundant subtour rows to Q leaves its optimum unchanged, so the \
             augmented model is an extended formulation of both P and Q"
                .into(),
            "the restated model reaches the same optimum without any x variable: the \
             x-space enters only through a redundant linking, an effective G = 0 reading"
                .into(),
            SUBTOUR_INDEX_NOTE.into(),
        ],
    };
    Ok(report)
}

/// Random connected graph on `n` vertices: a random spanning tree plus each
/// remaining pair with probability one half. Costs come from
/// [`random_costs`].
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize) -> WeightedGraph {
    let mut pairs = BTreeSet::new();
    for v in 2..=n {
        let u = rng.gen_range(1..v);
        pairs.insert((u, v));
    }
    for (i, j) in (1..=n).tuple_combinations() {
        if !pairs.contains(&(i, j)) && rng.gen_bool(0.5) {
            pairs.insert((i, j));
        }
    }
    let costs = random_costs(rng, pairs.len());
    let edges = pairs
        .into_iter()
        .zip(costs)
        .map(|((i, j), c)| (i, j, c))
        .collect();
    WeightedGraph::new(n, edges).expect("contains a spanning tree")
}

/// Costs `p/q` with `p ∈ [-10, 20]` and `q ∈ [1, 6]`.
pub fn random_costs<R: Rng>(rng: &mut R, m: usize) -> Vector {
    (0..m)
        .map(|_| ratio(rng.gen_range(-10..=20), rng.gen_range(1..=6)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int_vec;

    fn k3() -> WeightedGraph {
        WeightedGraph::complete(3, &int_vec(&[1, 2, 3])).unwrap()
    }

    fn path3() -> WeightedGraph {
        WeightedGraph::new(3, vec![(1, 2, int(5)), (2, 3, int(7))]).unwrap()
    }

    fn optimum(f: &MstpFormulation) -> Rational {
        f.solve().unwrap().optimal_value().clone()
    }

    #[test]
    fn kruskal_small_cases() {
        assert_eq!(kruskal(&k3()).unwrap(), (int(3), vec![0, 1]));
        assert_eq!(kruskal(&path3()).unwrap().0, int(12));
        assert_eq!(kruskal(&WeightedGraph::complete_unit(4)).unwrap().0, int(3));
    }

    #[test]
    fn graph_validation() {
        assert!(WeightedGraph::new(3, vec![(1, 2, int(1))]).is_err());
        assert!(WeightedGraph::new(2, vec![(1, 1, int(1))]).is_err());
        assert!(WeightedGraph::new(2, vec![(1, 2, int(1)), (2, 1, int(1))]).is_err());
        assert!(WeightedGraph::new(2, vec![(1, 3, int(1))]).is_err());
    }

    #[test]
    fn edmonds_shapes_and_value() {
        let p = build_edmonds(&k3()).unwrap();
        assert_eq!(p.rows(), 4);
        assert_eq!(build_edmonds(&WeightedGraph::complete_unit(4)).unwrap().rows(), 11);
        assert_eq!(optimum(&p), int(3));
    }

    #[test]
    fn martin_shapes_and_values() {
        let q = build_martin(&k3()).unwrap();
        assert_eq!((q.x_vars(), q.vars()), (3, 21));
        assert_eq!(optimum(&q), int(3));
        assert_eq!(optimum(&build_martin(&path3()).unwrap()), int(12));
        assert_eq!(build_martin(&WeightedGraph::complete_unit(4)).unwrap().rows(), 41);
    }

    #[test]
    fn restated_model() {
        let g = k3();
        let roots = default_roots(&g).unwrap();
        assert_eq!(roots, vec![3, 2, 1]);
        let qp = build_martin_restated(&g, &roots).unwrap();
        assert_eq!((qp.x_vars(), qp.vars()), (0, 18));
        let out = qp.solve().unwrap();
        assert_eq!(out.optimal_value(), &int(3));
        let x = qp.edge_values(out.point.as_ref().unwrap());
        let p = build_edmonds(&g).unwrap();
        assert!(p.lp.feasible_set.contains_point(&x).unwrap());
        assert!(build_martin_restated(&g, &[1, 2, 1]).is_err());
        assert!(build_martin_restated(&path3(), &[3, 1]).is_ok());
    }

    #[test]
    fn subtour_rows_are_redundant_for_k3_and_k4() {
        let r = check_subtour_redundancy(&k3()).unwrap();
        assert_eq!(r.checks.len(), 3);
        assert!(r.holds());
        let r = check_subtour_redundancy(&WeightedGraph::complete_unit(4)).unwrap();
        assert_eq!(r.checks.len(), 10);
        assert!(r.holds());
    }

    #[test]
    fn paradox_on_k4() {
        let r = paradox_demo(&WeightedGraph::complete_unit(4)).unwrap();
        assert_eq!((r.edmonds.rows, r.martin.rows, r.augmented.rows), (11, 41, 51));
        assert!(r.restated.vars < r.martin.vars);
        assert!(r.optima_agree());
    }

    #[test]
    fn text_format() {
        let g = WeightedGraph::parse("# triangle\nn 3\n1 2 1\n1 3 2/1\n2 3 3\n").unwrap();
        assert_eq!(g, k3());
        assert_eq!(WeightedGraph::parse(&g.to_string()).unwrap(), g);
        let err = WeightedGraph::parse("n 3\n1 2 x\n").unwrap_err().to_string();
        assert!(err.contains("line 2 column 5"), "{err}");
    }
}
