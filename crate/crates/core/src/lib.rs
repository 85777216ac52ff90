//! Exponential domination in subcubic graphs: exact dyadic weights,
//! brute-force and polynomial tree solvers, pendant-tree reductions,
//! instance-family generators, the vertex-cover gadget, a randomized
//! two-phase heuristic, and a bound-evaluation/experiment harness.
//!
//! A vertex set `S` assigns every vertex `u` the weight
//! `Σ_{v∈S} (1/2)^{dist(u,v)−1}`, where the distance is taken along
//! paths whose only `S`-vertex is the far endpoint (other set vertices
//! absorb influence); `S` is exponentially dominating when every weight
//! reaches 1. All threshold comparisons are exact — weights live in the
//! dyadic rationals, never in floating point.

pub mod bounds;
pub mod constructions;
pub mod dyadic;
pub mod exact;
pub mod experiment;
pub mod graph;
pub mod heuristics;
pub mod random;
pub mod reductions;
pub mod tree;
pub mod tree_solver;
pub mod weights;

pub use bounds::{bounds_report, conjecture_experiment, BoundsReport, GammaEstimate};
pub use dyadic::Dyadic;
pub use exact::{gamma_e_exact, min_triple_weight_set, ExactOptions, SolveResult};
pub use graph::{emit_graph, graph_metrics, parse_graph, Format, Graph};
pub use tree::{enumerate_subcubic_trees, root_tree, RootedTree};
pub use tree_solver::gamma_e_tree;
pub use weights::{is_exponential_dominating, weight_profile, Mode, WeightProfile};
