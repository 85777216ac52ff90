//! Batch experiment driver: resolve instance specs, run the requested
//! solvers, evaluate every bound per row, and write CSV + JSON
//! artifacts. Deterministic under a fixed seed.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bounds_report, BoundsReport, GammaEstimate};
use crate::constructions::{
    build_degree5_instance, build_figure2, build_gadget, generate_extremal_candidates,
    named_graph, ConstructError,
};
use crate::exact::{gamma_e_exact, ExactOptions, SolveError};
use crate::graph::{emit_graph, graph_metrics, parse_graph, Format, Graph, GraphError};
use crate::heuristics::{randomized_expdom, HeuristicError};
use crate::tree::{enumerate_subcubic_trees, EnumerateError};
use crate::tree_solver::gamma_e_tree;
use crate::weights::Mode;

pub const CSV_SCHEMA: &str = "# expdom experiment schema v1";
pub const CSV_HEADER: &str = "instance,solver,n,m,girth,diameter,gamma_lo,gamma_hi,verified,\
diameter_quarter_lower,two_fifths_upper,third_upper,tree_sixth_lower,logarithmic_lower,\
tight_bounds";

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceSpec {
    File { path: String },
    Figure2 { k: usize },
    ExtremalOps { max_n: usize },
    Named { name: String },
    Gadget { name: String },
    Degree5 { h: u32 },
    Trees { max_n: usize },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum SolverSpec {
    Exact {
        #[serde(default)]
        max_k: Option<usize>,
        #[serde(default)]
        force: bool,
    },
    Tree,
    Heuristic {
        p: f64,
        #[serde(default = "default_trials")]
        trials: u64,
    },
}

fn default_trials() -> u64 {
    100
}

impl SolverSpec {
    fn label(&self) -> String {
        match self {
            SolverSpec::Exact { .. } => "exact".into(),
            SolverSpec::Tree => "tree".into(),
            SolverSpec::Heuristic { p, trials } => format!("heuristic(p={p};trials={trials})"),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ExperimentConfig {
    pub instances: Vec<InstanceSpec>,
    pub solvers: Vec<SolverSpec>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config error: {0}")]
    Config(#[from] serde_json::Error),
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("construction error: {0}")]
    Construct(#[from] ConstructError),
    #[error("enumeration error: {0}")]
    Enumerate(#[from] EnumerateError),
    #[error("solver error on {instance}: {source}")]
    Solve {
        instance: String,
        #[source]
        source: SolveError,
    },
    #[error("heuristic error on {instance}: {source}")]
    Heuristic {
        instance: String,
        #[source]
        source: HeuristicError,
    },
    #[error(
        "bound `{bound}` violated on exactly solved instance {instance} — \
         this falsifies a theorem or reveals a solver bug; offending graph:\n{dump}"
    )]
    BoundViolation {
        instance: String,
        bound: String,
        dump: String,
    },
}

/// One (instance, solver) result row.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRow {
    pub instance: String,
    pub solver: String,
    pub n: usize,
    pub m: usize,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    pub gamma: GammaEstimate,
    pub verified: bool,
    pub report: BoundsReport,
}

#[derive(Debug)]
pub struct ExperimentArtifacts {
    pub rows: Vec<ExperimentRow>,
    pub csv_path: PathBuf,
    pub json_path: PathBuf,
}

/// Expands an instance spec into labeled graphs.
pub fn resolve_instances(
    spec: &InstanceSpec,
) -> Result<Vec<(String, Graph)>, ExperimentError> {
    Ok(match spec {
        InstanceSpec::File { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| ExperimentError::Io { path: path.into(), source })?;
            let format = if path.ends_with(".g6") { Format::Graph6 } else { Format::Edge };
            vec![(format!("file:{path}"), parse_graph(&text, format)?)]
        }
        InstanceSpec::Figure2 { k } => vec![(format!("figure2(k={k})"), build_figure2(*k))],
        InstanceSpec::ExtremalOps { max_n } => generate_extremal_candidates(*max_n)?
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("extremal-ops(n={};#{i})", g.n()), g))
            .collect(),
        InstanceSpec::Named { name } => vec![(format!("named:{name}"), named_graph(name)?)],
        InstanceSpec::Gadget { name } => {
            let map = build_gadget(&named_graph(name)?)?;
            vec![(format!("gadget:{name}"), map.gadget)]
        }
        InstanceSpec::Degree5 { h } => {
            let (tree, _, d) = build_degree5_instance(*h)?;
            vec![(format!("degree5(h={h};d={d})"), tree.graph().clone())]
        }
        InstanceSpec::Trees { max_n } => {
            let mut out = Vec::new();
            for n in 1..=*max_n {
                for (i, t) in enumerate_subcubic_trees(n)?.into_iter().enumerate() {
                    out.push((format!("tree(n={n};#{i})"), t));
                }
            }
            out
        }
    })
}

fn solve_one(
    label: &str,
    g: &Graph,
    solver: &SolverSpec,
    seed: u64,
) -> Result<Option<(GammaEstimate, bool)>, ExperimentError> {
    match solver {
        SolverSpec::Exact { max_k, force } => {
            let opts = ExactOptions { max_k: *max_k, force: *force };
            match gamma_e_exact(g, Mode::Blocked, opts) {
                Ok(r) => {
                    let set: BTreeSet<usize> = r.witness.iter().copied().collect();
                    let ok = crate::weights::is_dominating_blocked(g, &set);
                    Ok(Some((GammaEstimate::Exact(r.value), ok)))
                }
                // size guard: this solver simply does not apply
                Err(SolveError::TooLarge { .. }) => Ok(None),
                Err(SolveError::BudgetExhausted { budget, .. }) => Ok(Some((
                    GammaEstimate::Interval { lo: budget + 1, hi: g.n() },
                    true,
                ))),
                Err(source) => Err(ExperimentError::Solve { instance: label.into(), source }),
            }
        }
        SolverSpec::Tree => {
            if !g.is_tree() || !g.is_subcubic() {
                return Ok(None);
            }
            let r = gamma_e_tree(g)
                .map_err(|source| ExperimentError::Solve { instance: label.into(), source })?;
            let set: BTreeSet<usize> = r.witness.iter().copied().collect();
            let ok = crate::weights::is_dominating_blocked(g, &set);
            Ok(Some((GammaEstimate::Exact(r.value), ok)))
        }
        SolverSpec::Heuristic { p, trials } => {
            if !g.is_subcubic() {
                return Ok(None);
            }
            let report = randomized_expdom(g, *p, seed, *trials)
                .map_err(|source| ExperimentError::Heuristic { instance: label.into(), source })?;
            Ok(Some((
                GammaEstimate::Interval { lo: 1, hi: report.best_size },
                report.all_verified,
            )))
        }
    }
}

/// Runs the whole configuration and writes `experiment.csv` and
/// `experiment.json` under `out_dir`. A violated bound on an exactly
/// solved instance aborts the run with the offending graph attached.
pub fn run_experiment(
    config: &ExperimentConfig,
    out_dir: &Path,
) -> Result<ExperimentArtifacts, ExperimentError> {
    let mut jobs: Vec<(String, Graph)> = Vec::new();
    for spec in &config.instances {
        jobs.extend(resolve_instances(spec)?);
    }
    let pairs: Vec<(usize, &(String, Graph), &SolverSpec)> = jobs
        .iter()
        .flat_map(|inst| config.solvers.iter().map(move |s| (inst, s)))
        .enumerate()
        .map(|(i, (inst, s))| (i, inst, s))
        .collect();
    let results: Vec<Result<Option<ExperimentRow>, ExperimentError>> = pairs
        .par_iter()
        .map(|(_, (label, g), solver)| {
            let Some((gamma, verified)) = solve_one(label, g, solver, config.seed)? else {
                return Ok(None);
            };
            let metrics = graph_metrics(g);
            let report = bounds_report(g, gamma, None);
            if gamma.exact().is_some() {
                if let Some(violated) = report.violations().first() {
                    return Err(ExperimentError::BoundViolation {
                        instance: label.clone(),
                        bound: violated.name.to_string(),
                        dump: emit_graph(g, Format::Edge),
                    });
                }
            }
            Ok(Some(ExperimentRow {
                instance: label.clone(),
                solver: solver.label(),
                n: g.n(),
                m: g.m(),
                girth: metrics.girth,
                diameter: metrics.diameter,
                gamma,
                verified,
                report,
            }))
        })
        .collect();
    let mut rows = Vec::new();
    for r in results {
        if let Some(row) = r? {
            rows.push(row);
        }
    }

    std::fs::create_dir_all(out_dir)
        .map_err(|source| ExperimentError::Io { path: out_dir.into(), source })?;
    let csv_path = out_dir.join("experiment.csv");
    let json_path = out_dir.join("experiment.json");
    let csv = render_csv(&rows);
    std::fs::write(&csv_path, csv)
        .map_err(|source| ExperimentError::Io { path: csv_path.clone(), source })?;
    let json = serde_json::to_string_pretty(&rows)?;
    std::fs::write(&json_path, json)
        .map_err(|source| ExperimentError::Io { path: json_path.clone(), source })?;
    Ok(ExperimentArtifacts { rows, csv_path, json_path })
}

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "inf".into())
}

pub fn render_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_SCHEMA}");
    let _ = writeln!(out, "{CSV_HEADER}");
    for row in rows {
        let bound_value = |name: &str| {
            row.report
                .bounds
                .iter()
                .find(|b| b.name == name)
                .map(|b| if b.applicable { b.value.clone() } else { "na".into() })
                .unwrap_or_else(|| "na".into())
        };
        let tight: Vec<&str> = row
            .report
            .bounds
            .iter()
            .filter(|b| b.tight)
            .map(|b| b.name)
            .collect();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.instance,
            row.solver,
            row.n,
            row.m,
            opt(row.girth),
            opt(row.diameter),
            row.gamma.lo(),
            row.gamma.hi(),
            row.verified,
            bound_value("diameter-quarter-lower"),
            bound_value("two-fifths-upper"),
            bound_value("third-upper"),
            bound_value("tree-sixth-lower"),
            bound_value("logarithmic-lower"),
            tight.join(";"),
        );
    }
    out
}
