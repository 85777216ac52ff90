//! Pendant-tree reductions that shrink a subcubic graph while tracking
//! the exponential domination number exactly (rules i–iii) or within an
//! additive unit (rule iv).
//!
//! Each rule is anchored at a vertex `u` whose relevant neighbors hang
//! off `u` in pendant tree components of `G - u`:
//!
//! * **R-i** — two leaf neighbors `v1 < v2` plus a third neighbor:
//!   delete `v2`, value unchanged.
//! * **R-ii** — a leaf neighbor `v1` and a neighbor `v2` whose pendant
//!   tree has depth 1: delete `{v1} ∪ V(T2)`, value drops by exactly 1.
//! * **R-iii** — a neighbor `v1` of degree 3 whose pendant tree has
//!   depth 2 with both children internal: delete `V(T1) ∖ {v1, w1}`,
//!   value drops by exactly 1.
//! * **R-iv** — a neighbor `v1` whose pendant tree is the 3-vertex path
//!   hanging at `v1`: delete `V(T1)`, value drops by at most 1.

use serde::Serialize;

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    RI,
    RII,
    RIII,
    RIV,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::RI, Rule::RII, Rule::RIII, Rule::RIV];
    /// Rules with an exact delta; the default set for full reduction.
    pub const EXACT: [Rule; 3] = [Rule::RI, Rule::RII, Rule::RIII];

    pub fn name(self) -> &'static str {
        match self {
            Rule::RI => "i",
            Rule::RII => "ii",
            Rule::RIII => "iii",
            Rule::RIV => "iv",
        }
    }
}

impl std::str::FromStr for Rule {
    type Err = ReductionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "i" | "r-i" | "1" => Ok(Rule::RI),
            "ii" | "r-ii" | "2" => Ok(Rule::RII),
            "iii" | "r-iii" | "3" => Ok(Rule::RIII),
            "iv" | "r-iv" | "4" => Ok(Rule::RIV),
            other => Err(ReductionError::UnknownRule(other.to_string())),
        }
    }
}

/// Change of the domination number caused by one reduction step,
/// expressed as `γ_e(before) = γ_e(after) + delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Delta {
    Equal,
    PlusOne,
    AtMostPlusOne,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("graph is not subcubic")]
    NotSubcubic,
    #[error("step is stale: its pattern is no longer present")]
    StaleStep,
    #[error("unknown rule `{0}` (expected i, ii, iii or iv)")]
    UnknownRule(String),
}

/// One applicable (or applied) reduction site.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ReductionStep {
    pub rule: Rule,
    pub anchor: usize,
    /// Vertices deleted by the step, sorted.
    pub removed: Vec<usize>,
    /// Vertices introduced by the step (always empty for rules i–iv,
    /// kept for trace-format stability).
    pub added: Vec<usize>,
    pub delta: Delta,
}

/// The component of `G - u` containing `v`, sorted, when it is a tree.
fn pendant_tree(g: &Graph, u: usize, v: usize) -> Option<Vec<usize>> {
    let mut comp = vec![v];
    let mut seen = vec![false; g.n()];
    seen[u] = true;
    seen[v] = true;
    let mut i = 0;
    while i < comp.len() {
        let x = comp[i];
        i += 1;
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                comp.push(y);
            }
        }
    }
    comp.sort_unstable();
    // edge count within the component, u excluded
    let inner: usize = comp
        .iter()
        .map(|&x| g.neighbors(x).iter().filter(|y| comp.binary_search(y).is_ok()).count())
        .sum();
    (inner / 2 == comp.len() - 1).then_some(comp)
}

/// Depth of `comp` (a tree, sorted global ids) rooted at `root`, with
/// the children of `root` inside the component.
fn rooted_shape(g: &Graph, comp: &[usize], root: usize) -> (usize, Vec<usize>) {
    let mut depth_of = vec![None; g.n()];
    depth_of[root] = Some(0usize);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut max_depth = 0;
    while let Some(x) = queue.pop_front() {
        let dx = depth_of[x].unwrap();
        max_depth = max_depth.max(dx);
        for &y in g.neighbors(x) {
            if comp.binary_search(&y).is_ok() && depth_of[y].is_none() {
                depth_of[y] = Some(dx + 1);
                queue.push_back(y);
            }
        }
    }
    let children: Vec<usize> = g
        .neighbors(root)
        .iter()
        .copied()
        .filter(|y| comp.binary_search(y).is_ok())
        .collect();
    (max_depth, children)
}

/// All applicable reduction sites, ordered by (rule, anchor, removed).
pub fn find_reductions(g: &Graph) -> Result<Vec<ReductionStep>, ReductionError> {
    if !g.is_subcubic() {
        return Err(ReductionError::NotSubcubic);
    }
    let mut steps = Vec::new();
    for u in 0..g.n() {
        let nbrs = g.neighbors(u);
        // R-i: two leaf neighbors and a third neighbor keeping the
        // anchor alive (on P_3 there is no site: both neighbors are
        // leaves but nothing else remains attached to the anchor)
        let leaves: Vec<usize> = nbrs.iter().copied().filter(|&v| g.degree(v) == 1).collect();
        if g.degree(u) == 3 {
            for i in 0..leaves.len() {
                for j in (i + 1)..leaves.len() {
                    steps.push(ReductionStep {
                        rule: Rule::RI,
                        anchor: u,
                        removed: vec![leaves[j]],
                        added: vec![],
                        delta: Delta::Equal,
                    });
                }
            }
        }
        // R-ii: leaf neighbor v1 plus a depth-1 pendant tree at v2
        for &v1 in &leaves {
            for &v2 in nbrs.iter().filter(|&&v2| v2 != v1) {
                let Some(comp) = pendant_tree(g, u, v2) else { continue };
                if comp.binary_search(&v1).is_ok() {
                    continue;
                }
                let (depth, _) = rooted_shape(g, &comp, v2);
                if depth != 1 {
                    continue;
                }
                let mut removed = comp;
                removed.push(v1);
                removed.sort_unstable();
                steps.push(ReductionStep {
                    rule: Rule::RII,
                    anchor: u,
                    removed,
                    added: vec![],
                    delta: Delta::PlusOne,
                });
            }
        }
        for &v1 in nbrs {
            let Some(comp) = pendant_tree(g, u, v1) else { continue };
            let (depth, children) = rooted_shape(g, &comp, v1);
            // R-iii: deg(v1) = 3, depth-2 pendant tree, both children
            // of v1 internal
            if g.degree(v1) == 3 && depth == 2 && children.len() == 2 {
                let (w1, w2) = (children[0].min(children[1]), children[0].max(children[1]));
                let both_internal = [w1, w2]
                    .iter()
                    .all(|&w| g.neighbors(w).iter().any(|&y| y != v1 && comp.binary_search(&y).is_ok()));
                if both_internal {
                    let removed: Vec<usize> =
                        comp.iter().copied().filter(|&x| x != v1 && x != w1).collect();
                    steps.push(ReductionStep {
                        rule: Rule::RIII,
                        anchor: u,
                        removed,
                        added: vec![],
                        delta: Delta::PlusOne,
                    });
                }
            }
            // R-iv: the pendant tree is a 3-vertex path hanging at v1
            if comp.len() == 3 && depth == 2 && children.len() == 1 {
                steps.push(ReductionStep {
                    rule: Rule::RIV,
                    anchor: u,
                    removed: comp,
                    added: vec![],
                    delta: Delta::AtMostPlusOne,
                });
            }
        }
    }
    steps.sort();
    steps.dedup();
    Ok(steps)
}

/// Applies one step, returning the reduced graph and the id mapping
/// `old -> Some(new)` for surviving vertices.
pub fn apply_reduction(
    g: &Graph,
    step: &ReductionStep,
) -> Result<(Graph, Vec<Option<usize>>), ReductionError> {
    let current = find_reductions(g)?;
    if !current.contains(step) {
        return Err(ReductionError::StaleStep);
    }
    Ok(g.remove_vertices(&step.removed))
}

/// Result of reducing to closure: the final graph, the applied steps
/// (each in the coordinates of the graph it was applied to), and the
/// accumulated delta as an interval
/// `delta_min ≤ γ_e(original) − γ_e(final) ≤ delta_max`.
/// The interval is tight (a point) whenever rule iv was not used.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionOutcome {
    pub graph: Graph,
    pub trace: Vec<ReductionStep>,
    pub delta_min: usize,
    pub delta_max: usize,
}

impl ReductionOutcome {
    pub fn exact_delta(&self) -> Option<usize> {
        (self.delta_min == self.delta_max).then_some(self.delta_min)
    }
}

/// Applies the enabled rules until none matches, always taking the
/// first site in (rule, anchor, removed) order.
pub fn reduce_fully(g: &Graph, rules: &[Rule]) -> Result<ReductionOutcome, ReductionError> {
    let mut current = g.clone();
    let mut trace = Vec::new();
    let mut delta_min = 0usize;
    let mut delta_max = 0usize;
    loop {
        let step = find_reductions(&current)?
            .into_iter()
            .find(|s| rules.contains(&s.rule));
        let Some(step) = step else { break };
        let (next, _) = current.remove_vertices(&step.removed);
        match step.delta {
            Delta::Equal => {}
            Delta::PlusOne => {
                delta_min += 1;
                delta_max += 1;
            }
            Delta::AtMostPlusOne => {
                delta_max += 1;
            }
        }
        trace.push(step);
        current = next;
    }
    Ok(ReductionOutcome { graph: current, trace, delta_min, delta_max })
}
