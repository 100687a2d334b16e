//! `efcheck`: batch front end for the efcheck toolkit.
//!
//! Every command prints a JSON report on stdout (and to `--out` if given).
//! Exit status: 0 when the checked claim holds, 1 when it is refuted or a
//! check fails, 2 on usage, input or parse errors.

mod io;
mod report;
mod suite;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use efcheck_core::augmentation::{
    build_augmentation, build_example_1, demonstrate_mutual_ef, random_maps, random_spec,
};
use efcheck_core::auxiliary::{check_equivalence, solve_direct, solve_via_auxiliary};
use efcheck_core::ef::{
    check_ef_iff, check_ef_linear_map, check_ef_standard, BlockedPolyhedron,
    DEFAULT_MAP_SEARCH_LIMIT,
};
use efcheck_core::mstp::{
    build_edmonds, build_martin, build_martin_restated, check_subtour_redundancy, default_roots,
    kruskal, paradox_demo,
};
use efcheck_core::projection::project_onto_block;
use efcheck_core::vertex::{enumerate_vertices, DEFAULT_BASIS_LIMIT};
use efcheck_core::{Block, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "efcheck", version, about = "Exact checks of extended-formulation claims")]
struct Cli {
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a linear program exactly.
    Solve {
        #[arg(long)]
        lp: PathBuf,
    },
    /// Project a polyhedron onto the variables of one block.
    Project {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_parser = parse_block)]
        keep_block: Block,
    },
    /// Enumerate vertices and extreme rays.
    Vertices {
        #[arg(long)]
        poly: PathBuf,
        /// Maximum number of candidate bases.
        #[arg(long, env = "EFCHECK_LIMIT_BASES", default_value_t = DEFAULT_BASIS_LIMIT,
              value_parser = parse_limit)]
        limit: u128,
    },
    /// Decide whether a polyhedron is an extended formulation of a target.
    Ef {
        #[arg(long, value_enum)]
        definition: DefinitionArg,
        #[arg(long)]
        ef_poly: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Maximum number of vertex assignments for `--definition map`.
        #[arg(long, default_value_t = DEFAULT_MAP_SEARCH_LIMIT,
              value_parser = parse_limit)]
        search_limit: u128,
    },
    /// Augment two polyhedra into extended formulations of each other.
    Augment(AugmentArgs),
    /// Spanning tree LP models on a weighted graph.
    Mstp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelArg::All)]
        model: ModelArg,
        #[arg(long)]
        check_redundancy: bool,
        #[arg(long)]
        paradox: bool,
    },
    /// Optimize over an affine image through the auxiliary problem.
    Auxiliary {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Comma-separated objective, e.g. "1,0,0".
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Reproduce every worked example and published claim.
    PaperSuite {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Args)]
struct AugmentArgs {
    #[arg(long, required_unless_present = "paper_example_1", requires = "p2")]
    p1: Option<PathBuf>,
    #[arg(long, requires = "p1")]
    p2: Option<PathBuf>,
    /// JSON with `B1`, `B2` and the diagonals `C1`, `C2`.
    #[arg(long, conflicts_with = "random")]
    spec: Option<PathBuf>,
    /// Draw `B1`, `B2`, `C1`, `C2` at random.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// The worked example with fixed data.
    #[arg(long, conflicts_with_all = ["p1", "p2", "spec", "random"])]
    paper_example_1: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DefinitionArg {
    Standard,
    Map,
    Iff,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Edmonds,
    Martin,
    MartinRestated,
    All,
}

fn parse_limit(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("limit must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_block(s: &str) -> Result<Block, String> {
    s.parse::<Block>().map_err(|e| e.to_string())
}

/// A report and whether the claim it checks holds.
type Outcome = (Value, bool);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command);
    match result {
        Ok((report, ok)) => {
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            print!("{text}");
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            let usage = matches!(
                e,
                Error::Parse(_) | Error::InvalidInput(_) | Error::DimensionMismatch(_)
            );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn run(command: Command) -> efcheck_core::Result<Outcome> {
    match command {
        Command::Solve { lp } => {
            let problem = io::lp_problem(&lp)?;
            let out = problem.solve()?;
            Ok((report::lp_outcome(&out), true))
        }
        Command::Project { poly, keep_block } => {
            let p = io::polyhedron(&poly)?;
            Ok((report::projection(&project_onto_block(&p, keep_block)?), true))
        }
        Command::Vertices { poly, limit } => {
            let p = io::polyhedron(&poly)?;
            Ok((report::vpolytope(&enumerate_vertices(&p, limit)?), true))
        }
        Command::Ef {
            definition,
            ef_poly,
            target,
            search_limit,
        } => {
            let u = BlockedPolyhedron::from_labels(io::polyhedron(&ef_poly)?);
            let x = io::polyhedron(&target)?;
            let v = match definition {
                DefinitionArg::Standard => check_ef_standard(&u, &x)?,
                DefinitionArg::Iff => check_ef_iff(&u, &x)?,
                DefinitionArg::Map => check_ef_linear_map(&u, &x, search_limit)?,
            };
            Ok((report::verdict(&v), v.holds()))
        }
        Command::Augment(args) => augment(args),
        Command::Mstp {
            graph,
            model,
            check_redundancy,
            paradox,
        } => mstp(&graph, model, check_redundancy, paradox),
        Command::Auxiliary { u, map, alpha } => {
            let u = io::polyhedron(&u)?;
            let link = io::linking_map(&map)?;
            let alpha = io::vector(&alpha)?;
            let two_step = solve_via_auxiliary(&u, &link, &alpha)?;
            let direct = solve_direct(&u, &link, &alpha)?;
            let eq = check_equivalence(&u, &link, std::slice::from_ref(&alpha))?;
            let ok = eq.holds() && two_step.value == direct.value;
            Ok((
                json!({
                    "two_step": report::auxiliary_solution(&two_step),
                    "direct": report::auxiliary_solution(&direct),
                    "equivalence": report::equivalence(&eq),
                }),
                ok,
            ))
        }
        Command::PaperSuite { seed } => {
            let r = suite::run(seed);
            let ok = r["passed"] == Value::Bool(true);
            Ok((r, ok))
        }
    }
}

fn augment(args: AugmentArgs) -> efcheck_core::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let spec = if args.paper_example_1 {
        build_example_1()
    } else {
        match (&args.p1, &args.p2) {
            (Some(p1), Some(p2)) => {
                let (p1, p2) = (io::polyhedron(p1)?, io::polyhedron(p2)?);
                match &args.spec {
                    Some(path) => io::augmentation_spec(path, p1, p2)?,
                    None if args.random => random_maps(&mut rng, p1, p2),
                    None => {
                        return Err(Error::InvalidInput(
                            "give --spec FILE or --random with --p1/--p2".into(),
                        ))
                    }
                }
            }
            _ if args.random => random_spec(&mut rng),
            _ => return Err(Error::InvalidInput("--p1 and --p2 are required".into())),
        }
    };
    let w = build_augmentation(&spec)?;
    let r = demonstrate_mutual_ef(&spec)?;
    Ok((
        json!({
            "B1": report::matrix(&spec.b1),
            "B2": report::matrix(&spec.b2),
            "C1": report::matrix(&spec.c1),
            "C2": report::matrix(&spec.c2),
            "augmented": report::augmented(&w),
            "report": report::mutual(&r),
        }),
        r.valid(),
    ))
}

fn mstp(graph: &Path, model: ModelArg, redundancy: bool, paradox: bool) -> efcheck_core::Result<Outcome> {
    let g = io::graph(graph)?;
    let (weight, tree) = kruskal(&g)?;
    let mut ok = true;
    let mut models = Vec::new();
    let wanted = |m: ModelArg| model == ModelArg::All || model == m;
    let mut formulations = Vec::new();
    if wanted(ModelArg::Edmonds) {
        formulations.push(build_edmonds(&g)?);
    }
    if wanted(ModelArg::Martin) {
        formulations.push(build_martin(&g)?);
    }
    if wanted(ModelArg::MartinRestated) {
        formulations.push(build_martin_restated(&g, &default_roots(&g)?)?);
    }
    for f in &formulations {
        let out = f.solve()?;
        ok &= out.value.as_ref() == Some(&weight);
        models.push(report::formulation(f, &out));
    }
    let mut doc = json!({
        "graph": {"n": g.n(), "edges": g.edges().len()},
        "kruskal": {"weight": report::q(&weight), "tree": tree},
        "models": models,
        "optima_match_kruskal": ok,
    });
    if redundancy {
        let r = check_subtour_redundancy(&g)?;
        ok &= r.holds();
        doc["subtour_redundancy"] = report::redundancy(&r);
    }
    if paradox {
        let r = paradox_demo(&g)?;
        ok &= r.optima_agree();
        doc["paradox"] = report::paradox(&r);
    }
    Ok((doc, ok))
}
