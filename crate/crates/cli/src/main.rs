//! `expdom` — exponential domination toolkit for subcubic graphs.
//!
//! Every subcommand routes through the library; the binary only does
//! argument handling, file I/O and output shaping. Exit codes: 0 on
//! success, 1 on domain errors (a JSON error object goes to stderr),
//! 2 on usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::json;

use expdom_core::bounds::{bounds_report, GammaEstimate};
use expdom_core::constructions::{
    build_degree5_instance, build_figure2, build_gadget, build_t_tree, build_theorem7_extremal,
    binary_caterpillar, generate_extremal_candidates, named_graph, ConstructError, NAMED_GRAPHS,
};
use expdom_core::exact::{gamma_e_exact, min_triple_weight_set, ExactOptions, SolveError};
use expdom_core::experiment::{run_experiment, ExperimentConfig, ExperimentError};
use expdom_core::graph::{
    emit_graph, graph_metrics, parse_graph, parse_vertex_set, Format, Graph, GraphError,
};
use expdom_core::heuristics::{randomized_expdom, theorem6_params, HeuristicError, ParamMode};
use expdom_core::reductions::{reduce_fully, ReductionError, Rule};
use expdom_core::tree::{enumerate_subcubic_trees, EnumerateError};
use expdom_core::tree_solver::{gamma_e_tree, gamma_e_tree_traced};
use expdom_core::weights::{is_exponential_dominating, weight_profile, Mode};

#[derive(Parser)]
#[command(
    name = "expdom",
    version,
    about = "Exact solvers, bounds, constructions and heuristics for exponential domination in subcubic graphs"
)]
struct Cli {
    /// Cap the worker-thread count (1 reproduces parallel output exactly)
    #[arg(long, global = true, env = "EXPDOM_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact weight of every vertex under a given set
    Weight {
        /// Graph file (EDGE, or graph6 with a .g6 extension)
        #[arg(long)]
        graph: PathBuf,
        /// Vertex set as comma-separated 0-based ids, e.g. "0,3,7"
        #[arg(long)]
        set: String,
        /// Use plain distances instead of blocked distances
        #[arg(long)]
        porous: bool,
    },
    /// Compute the exponential domination number
    #[command(group(ArgGroup::new("solver").required(true).args(["exact", "tree"])))]
    Solve {
        #[arg(long)]
        graph: PathBuf,
        /// Exhaustive size-ordered search (guarded order)
        #[arg(long)]
        exact: bool,
        /// Polynomial-time algorithm for subcubic trees
        #[arg(long)]
        tree: bool,
        /// Porous weights (exact solver only)
        #[arg(long, conflicts_with = "tree")]
        porous: bool,
        /// Stop the exact search after this cardinality
        #[arg(long, conflicts_with = "tree")]
        max_k: Option<usize>,
        /// Run the exact solver past the order guard
        #[arg(long, conflicts_with = "tree")]
        force: bool,
        /// Emit the per-iteration trace (tree solver only)
        #[arg(long, conflicts_with = "exact")]
        trace: bool,
    },
    /// Apply the pendant-tree reduction rules to closure
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated rule names out of i,ii,iii,iv
        #[arg(long, default_value = "i,ii,iii,iv")]
        rules: String,
    },
    /// Build a graph family member (EDGE output plus a JSON sidecar)
    Construct {
        #[command(subcommand)]
        target: ConstructCmd,
    },
    /// Randomized sample-and-patch construction
    #[command(group(ArgGroup::new("prob").required(true).args(["p", "eps", "alpha"])))]
    Heuristic {
        #[arg(long)]
        graph: PathBuf,
        /// Inclusion probability, directly
        #[arg(long)]
        p: Option<f64>,
        /// Derive p and depth from a target ratio 0 < eps < 1
        #[arg(long)]
        eps: Option<f64>,
        /// Derive p and depth from alpha (0 < alpha < 2/(3 ln 2))
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Evaluate every applicable bound against the domination number
    #[command(group(ArgGroup::new("solver").args(["exact", "tree"])))]
    Report {
        #[arg(long)]
        graph: PathBuf,
        /// Force the exhaustive solver
        #[arg(long)]
        exact: bool,
        /// Force the tree solver
        #[arg(long)]
        tree: bool,
    },
    /// Run a batch of instances against a batch of solvers
    Experiment {
        /// JSON configuration: {"instances": [...], "solvers": [...], "seed": N}
        #[arg(long)]
        config: PathBuf,
        /// Output directory for experiment.csv and experiment.json
        #[arg(long)]
        out: PathBuf,
    },
    /// Enumerate all subcubic trees of a given order
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Output format: edge, graph6 or json
        #[arg(long, default_value = "graph6")]
        format: String,
    },
}

#[derive(Args)]
struct OutOpt {
    /// Base path: writes <out>.edge and <out>.json instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Extremal tree family with gamma = (n+1)/5
    Figure2 {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Rooted tree T(d0,...,dk): every depth-i vertex has d_i children
    TTree {
        /// Comma-separated child counts, e.g. "5,4,4"
        #[arg(long)]
        degrees: String,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Maximum-degree-5 tree with a sub-linear dominating set
    Degree5 {
        #[arg(long)]
        h: u32,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Closure of K1 under the three extremal growth operations
    ExtremalOps {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Per-edge 10-vertex gadget expansion of a cubic graph
    Gadget {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Catalog graph (k4, k33, prism, petersen, heawood, mcgee, tutte-coxeter)
    Named {
        #[arg(long)]
        name: String,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Three binary caterpillars glued leaf-to-leaf (triple-weight extremal)
    Thm7 {
        /// Leaf count of the base caterpillar (>= 3)
        #[arg(long)]
        leaves: usize,
        #[command(flatten)]
        out: OutOpt,
    },
}

/// Domain error: exit code 1 plus a JSON object on stderr.
struct CliError {
    kind: &'static str,
    message: String,
}

impl CliError {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }
}

macro_rules! from_error {
    ($ty:ty, $kind:literal) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::new($kind, e.to_string())
            }
        }
    };
}

from_error!(GraphError, "graph");
from_error!(SolveError, "solve");
from_error!(ReductionError, "reduce");
from_error!(ConstructError, "construct");
from_error!(HeuristicError, "heuristic");
from_error!(ExperimentError, "experiment");
from_error!(EnumerateError, "enumerate");
from_error!(expdom_core::weights::WeightError, "weight");
from_error!(serde_json::Error, "config");

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(), // clap prints usage and exits 0 or 2
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        // ignore "already initialized": only possible in tests
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = json!({"error": {"kind": e.kind, "message": e.message}});
            eprintln!("{payload}");
            ExitCode::from(1)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?;
    let format = if path.extension().is_some_and(|x| x == "g6") {
        Format::Graph6
    } else {
        Format::Edge
    };
    Ok(parse_graph(&text, format)?)
}

fn print_json(value: &impl serde::Serialize) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Weight { graph, set, porous } => {
            let g = read_graph(&graph)?;
            let set = parse_vertex_set(&set, g.n())?;
            let mode = if porous { Mode::Porous } else { Mode::Blocked };
            let profile = weight_profile(&g, &set, mode);
            let check = is_exponential_dominating(&g, &set, mode);
            let deficient: Vec<_> = check
                .deficient
                .iter()
                .map(|(v, w)| json!({"vertex": v, "weight": w.to_string()}))
                .collect();
            print_json(&json!({
                "profile": profile,
                "dominating": check.ok,
                "deficient": deficient,
            }))
        }
        Command::Solve { graph, exact, tree, porous, max_k, force, trace } => {
            let g = read_graph(&graph)?;
            let _ = exact; // the group guarantees exactly one of the two
            if tree {
                if trace {
                    let (result, steps) = gamma_e_tree_traced(&g)?;
                    print_json(&json!({
                        "gamma_e": result.value,
                        "result": result,
                        "trace": steps,
                    }))
                } else {
                    let result = gamma_e_tree(&g)?;
                    print_json(&json!({"gamma_e": result.value, "result": result}))
                }
            } else {
                let mode = if porous { Mode::Porous } else { Mode::Blocked };
                let result = gamma_e_exact(&g, mode, ExactOptions { max_k, force })?;
                print_json(&json!({"gamma_e": result.value, "result": result}))
            }
        }
        Command::Reduce { graph, rules } => {
            let g = read_graph(&graph)?;
            let rules = rules
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(Rule::from_str)
                .collect::<Result<Vec<_>, _>>()?;
            let outcome = reduce_fully(&g, &rules)?;
            print_json(&outcome)
        }
        Command::Construct { target } => run_construct(target),
        Command::Heuristic { graph, p, eps, alpha, seed, trials } => {
            let g = read_graph(&graph)?;
            let (p, params) = match (p, eps, alpha) {
                (Some(p), _, _) => (p, None),
                (_, Some(eps), _) => {
                    let params = theorem6_params(ParamMode::Epsilon, eps, None)?;
                    (params.p, Some(params))
                }
                (_, _, Some(alpha)) => {
                    let params = theorem6_params(ParamMode::Alpha, alpha, Some(g.n()))?;
                    (params.p, Some(params))
                }
                _ => unreachable!("argument group is required"),
            };
            let girth = graph_metrics(&g).girth;
            // the size guarantee needs high girth; domination never does
            let girth_sufficient = params.as_ref().map(|prm| {
                girth.is_none() || girth.unwrap() as u32 >= prm.required_girth
            });
            let report = randomized_expdom(&g, p, seed, trials)?;
            print_json(&json!({
                "params": params,
                "girth": girth,
                "girth_sufficient": girth_sufficient,
                "report": report,
            }))
        }
        Command::Report { graph, exact, tree } => {
            let g = read_graph(&graph)?;
            let use_tree = tree || (!exact && g.is_forest());
            let gamma = if use_tree {
                GammaEstimate::Exact(gamma_e_tree(&g)?.value)
            } else {
                match gamma_e_exact(&g, Mode::Blocked, ExactOptions::default()) {
                    Ok(r) => GammaEstimate::Exact(r.value),
                    Err(SolveError::BudgetExhausted { lower_bound, .. }) => {
                        GammaEstimate::Interval { lo: lower_bound, hi: g.n() }
                    }
                    Err(e) => return Err(e.into()),
                }
            };
            let triple = min_triple_weight_set(&g).ok().map(|r| r.value);
            print_json(&bounds_report(&g, gamma, triple))
        }
        Command::Experiment { config, out } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::new("io", format!("{}: {e}", config.display())))?;
            let config: ExperimentConfig = serde_json::from_str(&text)?;
            let artifacts = run_experiment(&config, &out)?;
            print_json(&json!({
                "rows": artifacts.rows.len(),
                "csv": artifacts.csv_path,
                "json": artifacts.json_path,
            }))
        }
        Command::Enumerate { n, format } => {
            let trees = enumerate_subcubic_trees(n)?;
            match format.as_str() {
                "graph6" | "g6" => {
                    for t in &trees {
                        println!("{}", emit_graph(t, Format::Graph6).trim_end());
                    }
                }
                "edge" => {
                    for t in &trees {
                        println!("{}", emit_graph(t, Format::Edge));
                    }
                }
                "json" => print_json(&trees)?,
                other => {
                    return Err(CliError::new(
                        "format",
                        format!("unknown format {other:?} (expected edge, graph6 or json)"),
                    ))
                }
            }
            Ok(())
        }
    }
}

/// Emits one or more graphs in EDGE format together with a JSON
/// sidecar: either `<out>.edge` + `<out>.json`, or to stdout with the
/// sidecar folded into a leading `# sidecar ...` comment line.
fn emit_construct(
    graphs: &[Graph],
    sidecar: serde_json::Value,
    out: OutOpt,
) -> Result<(), CliError> {
    let edge_text = graphs
        .iter()
        .map(|g| emit_graph(g, Format::Edge))
        .collect::<Vec<_>>()
        .join("\n");
    match out.out {
        Some(base) => {
            let edge_path = base.with_extension("edge");
            let json_path = base.with_extension("json");
            let io = |e: std::io::Error| CliError::new("io", e.to_string());
            std::fs::write(&edge_path, &edge_text).map_err(io)?;
            std::fs::write(&json_path, serde_json::to_string_pretty(&sidecar).unwrap())
                .map_err(io)?;
            print_json(&json!({"edge": edge_path, "sidecar": json_path}))
        }
        None => {
            println!("# sidecar {}", serde_json::to_string(&sidecar).unwrap());
            print!("{edge_text}");
            Ok(())
        }
    }
}

fn parse_degrees(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::new("construct", format!("bad child count {s:?}")))
        })
        .collect()
}

fn run_construct(target: ConstructCmd) -> Result<(), CliError> {
    match target {
        ConstructCmd::Figure2 { k, out } => {
            let g = build_figure2(k);
            let sidecar = json!({"kind": "figure2", "k": k, "n": g.n(), "gamma_e": (g.n() + 1) / 5});
            emit_construct(&[g], sidecar, out)
        }
        ConstructCmd::TTree { degrees, out } => {
            let degrees = parse_degrees(&degrees)?;
            let tree = build_t_tree(&degrees)?;
            let depths: Vec<usize> = (0..tree.n()).map(|v| tree.depth(v)).collect();
            let sidecar = json!({
                "kind": "t-tree",
                "degrees": degrees,
                "root": 0,
                "n": tree.n(),
                "depths": depths,
            });
            emit_construct(&[tree.graph().clone()], sidecar, out)
        }
        ConstructCmd::Degree5 { h, out } => {
            let (tree, set, d) = build_degree5_instance(h)?;
            let sidecar = json!({
                "kind": "degree5",
                "h": h,
                "depth": d,
                "n": tree.n(),
                "set": set.iter().collect::<Vec<_>>(),
            });
            emit_construct(&[tree.graph().clone()], sidecar, out)
        }
        ConstructCmd::ExtremalOps { max_n, out } => {
            let graphs = generate_extremal_candidates(max_n)?;
            let sidecar = json!({
                "kind": "extremal-ops",
                "max_n": max_n,
                "count": graphs.len(),
                "orders": graphs.iter().map(Graph::n).collect::<Vec<_>>(),
            });
            emit_construct(&graphs, sidecar, out)
        }
        ConstructCmd::Gadget { graph, out } => {
            let g = read_graph(&graph)?;
            let map = build_gadget(&g)?;
            let sidecar = serde_json::to_value(&map).unwrap();
            let gadget = map.gadget;
            emit_construct(&[gadget], sidecar, out)
        }
        ConstructCmd::Named { name, out } => {
            let g = named_graph(&name).map_err(|e| match e {
                ConstructError::UnknownName(n) => CliError::new(
                    "construct",
                    format!("unknown graph {n:?} (available: {})", NAMED_GRAPHS.join(", ")),
                ),
                other => other.into(),
            })?;
            let metrics = graph_metrics(&g);
            let sidecar = json!({
                "kind": "named",
                "name": name,
                "n": g.n(),
                "m": g.m(),
                "girth": metrics.girth,
            });
            emit_construct(&[g], sidecar, out)
        }
        ConstructCmd::Thm7 { leaves, out } => {
            let base = binary_caterpillar(leaves)?;
            let g = build_theorem7_extremal(&base)?;
            let sidecar = json!({
                "kind": "thm7",
                "leaves": leaves,
                "base_n": base.n(),
                "n": g.n(),
                "triple_floor": (g.n() + 6).div_ceil(4),
            });
            emit_construct(&[g], sidecar, out)
        }
    }
}
