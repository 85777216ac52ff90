//! Generators for the instance families used throughout the library —
//! parameterized trees, the extremal-tree closure, a small catalog of
//! cubic graphs — and the vertex-cover gadget with both reduction
//! directions.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::graph::Graph;
use crate::tree::{root_tree, tree_canonical_form, RootedTree};
use crate::weights::is_dominating_blocked;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("instance would have {0} vertices, beyond the guard {1}")]
    SizeGuard(usize, usize),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("input graph is not cubic")]
    NotCubic,
    #[error("tree must have all degrees in {{1, 3}} and at least 3 leaves")]
    DegreeCondition,
    #[error("set does not cover edge ({0}, {1})")]
    NotACover(usize, usize),
    #[error("edge choice for edge {0} is not a cover endpoint of it")]
    InvalidEdgeChoice(usize),
    #[error("set is not exponentially dominating")]
    NotDominating,
    #[error("rewrite fixpoint reached but S ∩ V(G) does not cover edge ({0}, {1})")]
    UncoveredAtFixpoint(usize, usize),
}

pub const TREE_SIZE_GUARD: usize = 10_000_000;

/// The rooted tree in which every depth-`i` vertex has exactly
/// `degrees[i]` children; depth = `degrees.len()`.
pub fn build_t_tree(degrees: &[usize]) -> Result<RootedTree, ConstructError> {
    let mut total: usize = 1;
    let mut level_size: usize = 1;
    for &d in degrees {
        level_size = level_size
            .checked_mul(d)
            .ok_or(ConstructError::SizeGuard(usize::MAX, TREE_SIZE_GUARD))?;
        total = total
            .checked_add(level_size)
            .ok_or(ConstructError::SizeGuard(usize::MAX, TREE_SIZE_GUARD))?;
        if total > TREE_SIZE_GUARD {
            return Err(ConstructError::SizeGuard(total, TREE_SIZE_GUARD));
        }
    }
    let mut edges = Vec::with_capacity(total.saturating_sub(1));
    let mut frontier = vec![0usize];
    let mut next_id = 1usize;
    for &d in degrees {
        let mut next = Vec::with_capacity(frontier.len() * d);
        for &parent in &frontier {
            for _ in 0..d {
                edges.push((parent, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        frontier = next;
    }
    let g = Graph::from_edges(total, &edges).expect("construction is simple");
    Ok(root_tree(&g, 0).expect("construction is a tree"))
}

/// The caterpillar family with `γ_e = (n + 1) / 5`: a spine
/// `s_1..s_{4k+5}`, two extra leaves at each spine end, and one pendant
/// leaf at `s_{4j+1}` for `j = 1..k`; `n = 5k + 9`.
pub fn build_figure2(k: usize) -> Graph {
    let spine = 4 * k + 5;
    let n = 5 * k + 9;
    let mut edges: Vec<(usize, usize)> = (0..spine - 1).map(|i| (i, i + 1)).collect();
    let mut next = spine;
    for host in [0, 0, spine - 1, spine - 1] {
        edges.push((host, next));
        next += 1;
    }
    for j in 1..=k {
        edges.push((4 * j, next));
        next += 1;
    }
    debug_assert_eq!(next, n);
    Graph::from_edges(n, &edges).expect("construction is simple")
}

/// Smallest depth `d` with `d ≥ (4/3)·2^{2h−1} + h − 1`, by integer
/// arithmetic: `3d ≥ 4·2^{2h−1} + 3h − 3`.
pub fn degree5_depth(h: u32) -> usize {
    let rhs: usize = 4 * (1usize << (2 * h - 1)) + 3 * h as usize - 3;
    rhs.div_ceil(3)
}

/// The maximum-degree-5 escape instance: the tree `T(5, 4, …, 4)` of
/// depth `d` together with a set of `5·4^{d−h−1}` leaves (one leftmost
/// leaf descendant per depth-`(d−h)` vertex) that exponentially
/// dominates it — beating the subcubic lower bounds.
pub fn build_degree5_instance(
    h: u32,
) -> Result<(RootedTree, BTreeSet<usize>, usize), ConstructError> {
    if h < 1 {
        return Err(ConstructError::BadParameter("h must be at least 1".into()));
    }
    let d = degree5_depth(h);
    let mut degrees = vec![4usize; d];
    degrees[0] = 5;
    let tree = build_t_tree(&degrees)?;
    let mut set = BTreeSet::new();
    for v in 0..tree.n() {
        if tree.depth(v) != d - h as usize {
            continue;
        }
        // leftmost leaf descendant: children come in id order, so the
        // first preorder vertex at full depth is the leftmost
        let leaf = *tree
            .subtree(v)
            .iter()
            .find(|&&x| tree.depth(x) == d)
            .expect("every depth-(d-h) vertex has a full-depth descendant");
        set.insert(leaf);
    }
    Ok((tree, set, d))
}

pub const EXTREMAL_GUARD: usize = 16;

/// Closure of `K_1` under the three growth operations that conjecturally
/// generate exactly the trees with `γ_e = (n + 2) / 3`:
///
/// * **Op1** at a vertex of degree ≤ 1: attach two new neighbors and a
///   pendant vertex behind the second.
/// * **Op2** at a degree-2 vertex with a leaf neighbor `v`: add a child
///   to `v`, a second child `c` to the vertex, and a child to `c`.
/// * **Op3** at a degree-2 vertex: attach a pendant 3-vertex path.
///
/// One representative per isomorphism class, grouped in canonical-form
/// order; every generated order is ≡ 1 (mod 3).
pub fn generate_extremal_candidates(n_max: usize) -> Result<Vec<Graph>, ConstructError> {
    if n_max == 0 || n_max > EXTREMAL_GUARD {
        return Err(ConstructError::SizeGuard(n_max, EXTREMAL_GUARD));
    }
    let mut family: BTreeMap<String, Graph> = BTreeMap::new();
    let k1 = Graph::empty(1);
    let mut frontier = vec![k1.clone()];
    family.insert(tree_canonical_form(&k1).unwrap(), k1);
    while let Some(t) = frontier.pop() {
        let n = t.n();
        if n + 3 > n_max {
            continue;
        }
        let mut grown: Vec<Graph> = Vec::new();
        for u in 0..n {
            let deg = t.degree(u);
            let mut edges = t.edges();
            if deg <= 1 {
                // Op1: path v1-u-v2-w with v1, w new endvertices
                edges.extend([(u, n), (u, n + 1), (n + 1, n + 2)]);
                grown.push(Graph::from_edges(n + 3, &edges).unwrap());
            }
            if deg == 2 {
                // Op2, per leaf neighbor v of u
                for &v in t.neighbors(u) {
                    if t.degree(v) != 1 {
                        continue;
                    }
                    let mut e2 = t.edges();
                    e2.extend([(v, n), (u, n + 1), (n + 1, n + 2)]);
                    grown.push(Graph::from_edges(n + 3, &e2).unwrap());
                }
                // Op3: pendant 3-vertex path at u
                edges.extend([(u, n), (n, n + 1), (n + 1, n + 2)]);
                grown.push(Graph::from_edges(n + 3, &edges).unwrap());
            }
        }
        for g in grown {
            debug_assert!(g.is_tree() && g.is_subcubic());
            let key = tree_canonical_form(&g).unwrap();
            if !family.contains_key(&key) {
                family.insert(key, g.clone());
                frontier.push(g);
            }
        }
    }
    Ok(family.into_values().collect())
}

/// Fixed catalog of small cubic graphs (complete, bipartite, prism and
/// the girth-5/6/7/8 cages), used where the theory asks for cubic
/// graphs of prescribed girth.
pub fn named_graph(name: &str) -> Result<Graph, ConstructError> {
    let g = match name.to_ascii_lowercase().as_str() {
        "k4" => Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        "k33" => Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap(),
        "prism" => Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap(),
        "petersen" => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5)); // outer 5-cycle
                edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
                edges.push((i, 5 + i)); // spokes
            }
            Graph::from_edges(10, &edges).unwrap()
        }
        "heawood" => lcf_graph(14, &[5, -5]),
        "mcgee" => lcf_graph(24, &[12, 7, -7]),
        "tutte-coxeter" => lcf_graph(30, &[-13, -9, 7, -7, 9, 13]),
        other => return Err(ConstructError::UnknownName(other.to_string())),
    };
    Ok(g)
}

pub const NAMED_GRAPHS: [&str; 7] =
    ["k4", "k33", "prism", "petersen", "heawood", "mcgee", "tutte-coxeter"];

/// Hamiltonian cubic graph from LCF notation: an `n`-cycle plus the
/// chord `i → i + shifts[i mod len]` for every `i`.
fn lcf_graph(n: usize, shifts: &[i64]) -> Graph {
    let mut edges: BTreeSet<(usize, usize)> = (0..n).map(|i| ordered(i, (i + 1) % n)).collect();
    for i in 0..n {
        let shift = shifts[i % shifts.len()];
        let j = (i as i64 + shift).rem_euclid(n as i64) as usize;
        edges.insert(ordered(i, j));
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    Graph::from_edges(n, &edges).expect("LCF data is simple")
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// A tree with all degrees in `{1, 3}` and exactly `leaves` leaves
/// (order `2·leaves − 2`): a spine caterpillar.
pub fn binary_caterpillar(leaves: usize) -> Result<Graph, ConstructError> {
    if leaves < 3 {
        return Err(ConstructError::DegreeCondition);
    }
    if leaves == 3 {
        return Ok(Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
    }
    let spine = leaves - 2;
    let mut edges: Vec<(usize, usize)> = (0..spine - 1).map(|i| (i, i + 1)).collect();
    let mut next = spine;
    for host in 0..spine {
        let extra = if host == 0 || host == spine - 1 { 2 } else { 1 };
        for _ in 0..extra {
            edges.push((host, next));
            next += 1;
        }
    }
    Ok(Graph::from_edges(2 * leaves - 2, &edges).unwrap())
}

/// Glues three copies of a degree-`{1,3}` tree leaf-wise (leaf `i` of
/// every copy becomes one vertex): a cubic graph of order `4ℓ − 6`
/// whose per-copy internal vertex set meets the triple-weight condition
/// with `ℓ = (n + 6) / 4` vertices.
pub fn build_theorem7_extremal(t0: &Graph) -> Result<Graph, ConstructError> {
    if !t0.is_tree() || t0.n() < 4 {
        return Err(ConstructError::DegreeCondition);
    }
    let leaves: Vec<usize> = (0..t0.n()).filter(|&v| t0.degree(v) == 1).collect();
    let internals: Vec<usize> = (0..t0.n()).filter(|&v| t0.degree(v) == 3).collect();
    if leaves.len() + internals.len() != t0.n() || leaves.len() < 3 {
        return Err(ConstructError::DegreeCondition);
    }
    let ell = leaves.len();
    // merged leaves take ids 0..ell; copy c's internals follow
    let leaf_id: BTreeMap<usize, usize> =
        leaves.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for copy in 0..3 {
        let base = ell + copy * internals.len();
        let internal_id: BTreeMap<usize, usize> =
            internals.iter().enumerate().map(|(i, &v)| (v, base + i)).collect();
        let map = |v: usize| leaf_id.get(&v).copied().unwrap_or_else(|| internal_id[&v]);
        for (a, b) in t0.edges() {
            edges.push(ordered(map(a), map(b)));
        }
    }
    let n = ell + 3 * internals.len();
    debug_assert_eq!(n, 4 * ell - 6);
    Graph::from_edges(n, &edges).map_err(|_| ConstructError::DegreeCondition)
}

/// Per-edge record of the gadget: the top path `u–p1–…–p6–v` and the
/// four bottom vertices `q2 (= u″_e), q3, q4, q5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetEdge {
    pub u: usize,
    pub v: usize,
    /// `p[0] = p1 = u′_e`, …, `p[5] = p6 = v′_e`.
    pub p: [usize; 6],
    pub q2: usize,
    pub q3: usize,
    pub q4: usize,
    pub q5: usize,
}

impl GadgetEdge {
    /// The eight inner vertices `{p2..p5, q2..q5}`.
    pub fn x_set(&self) -> [usize; 8] {
        [self.p[1], self.p[2], self.p[3], self.p[4], self.q2, self.q3, self.q4, self.q5]
    }

    /// `X_e` plus the four boundary vertices `{u, p1, p6, v}`.
    pub fn y_set(&self) -> [usize; 12] {
        [
            self.u, self.v, self.p[0], self.p[1], self.p[2], self.p[3], self.p[4], self.p[5],
            self.q2, self.q3, self.q4, self.q5,
        ]
    }

    /// The selected triple on the `u` side: `{u, p3, p5}`.
    pub fn triple_u(&self) -> [usize; 3] {
        [self.u, self.p[2], self.p[4]]
    }

    /// Mirror triple on the `v` side: `{v, p2, p4}`.
    pub fn triple_v(&self) -> [usize; 3] {
        [self.v, self.p[1], self.p[3]]
    }
}

/// A cubic graph together with its edge-gadget expansion.
#[derive(Clone, Debug, Serialize)]
pub struct GadgetMap {
    pub source: Graph,
    pub gadget: Graph,
    pub edges: Vec<GadgetEdge>,
}

/// Replaces every edge `uv` of a cubic graph by a 10-vertex gadget:
/// the path `u–p1–p2–p3–p4–p5–p6–v` with `q2` on `{p1, p2}`, `q3` on
/// `p3`, `q4` on `p4`, `q5` on `{p5, p6}`. Source vertices keep their
/// ids; per-edge blocks follow in edge order, so the numbering is
/// deterministic. `n(H) = n(G) + 10·m(G) = 16·n(G)`.
pub fn build_gadget(g: &Graph) -> Result<GadgetMap, ConstructError> {
    if !g.is_cubic() {
        return Err(ConstructError::NotCubic);
    }
    let n = g.n();
    let mut edges_out = Vec::new();
    let mut records = Vec::new();
    let mut next = n;
    for (u, v) in g.edges() {
        let p = [next, next + 1, next + 2, next + 3, next + 4, next + 5];
        let (q2, q3, q4, q5) = (next + 6, next + 7, next + 8, next + 9);
        next += 10;
        edges_out.extend([
            (u, p[0]),
            (p[0], p[1]),
            (p[1], p[2]),
            (p[2], p[3]),
            (p[3], p[4]),
            (p[4], p[5]),
            (p[5], v),
            (q2, p[0]),
            (q2, p[1]),
            (q3, p[2]),
            (q4, p[3]),
            (q5, p[4]),
            (q5, p[5]),
        ]);
        records.push(GadgetEdge { u, v, p, q2, q3, q4, q5 });
    }
    let gadget = Graph::from_edges(next, &edges_out).expect("gadget is simple");
    debug_assert_eq!(gadget.n(), 16 * n);
    Ok(GadgetMap { source: g.clone(), gadget, edges: records })
}

/// Lifts a vertex cover `X` of the source graph to an exponential
/// dominating set of the gadget graph of size `|X| + 2m(G)`: `X` itself
/// plus, per edge, the inner pair of the triple on the side of the
/// chosen cover endpoint `x(e)` (default: the lower-id cover endpoint).
pub fn cover_to_expdom(
    map: &GadgetMap,
    cover: &BTreeSet<usize>,
    edge_choice: Option<&[usize]>,
) -> Result<BTreeSet<usize>, ConstructError> {
    let mut s: BTreeSet<usize> = cover.clone();
    for (i, rec) in map.edges.iter().enumerate() {
        let (in_u, in_v) = (cover.contains(&rec.u), cover.contains(&rec.v));
        if !in_u && !in_v {
            return Err(ConstructError::NotACover(rec.u, rec.v));
        }
        let x = match edge_choice {
            Some(xs) => {
                let x = xs[i];
                if (x != rec.u && x != rec.v) || !cover.contains(&x) {
                    return Err(ConstructError::InvalidEdgeChoice(i));
                }
                x
            }
            None => {
                if in_u && (!in_v || rec.u < rec.v) {
                    rec.u
                } else {
                    rec.v
                }
            }
        };
        let triple = if x == rec.u { rec.triple_u() } else { rec.triple_v() };
        s.insert(triple[1]);
        s.insert(triple[2]);
    }
    if !is_dominating_blocked(&map.gadget, &s) {
        return Err(ConstructError::NotDominating);
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RewriteRule {
    R1,
    R2,
    R3,
    R4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    U,
    V,
}

/// One rewrite application in the set-normalization fixpoint loop.
#[derive(Clone, Debug, Serialize)]
pub struct RewriteStep {
    pub rule: RewriteRule,
    pub edge_index: usize,
    pub side: Side,
    pub removed: Vec<usize>,
    pub added: Vec<usize>,
}

/// Sides of an edge record, as (outer vertex, its gadget neighbor p',
/// the two X_e-neighbors of p', the replacement triple).
fn sides(rec: &GadgetEdge) -> [(usize, usize, [usize; 2], [usize; 3], Side); 2] {
    [
        (rec.u, rec.p[0], [rec.q2, rec.p[1]], rec.triple_u(), Side::U),
        (rec.v, rec.p[5], [rec.q5, rec.p[4]], rec.triple_v(), Side::V),
    ]
}

/// Normalizes an exponential dominating set of the gadget graph by the
/// four local rewrite rules and extracts `S ∩ V(G)`, which at the
/// fixpoint is a vertex cover of the source of size at most
/// `|S| − 3·n(G)`. Every rewrite keeps the set dominating, never grows
/// it, and strictly increases `|S ∩ V(G)|` (all three asserted).
pub fn expdom_to_cover(
    map: &GadgetMap,
    s: &BTreeSet<usize>,
) -> Result<(BTreeSet<usize>, Vec<RewriteStep>), ConstructError> {
    if !is_dominating_blocked(&map.gadget, s) {
        return Err(ConstructError::NotDominating);
    }
    let n_src = map.source.n();
    let mut s = s.clone();
    let mut trace = Vec::new();
    'sweep: loop {
        for (i, rec) in map.edges.iter().enumerate() {
            let step = rewrite_at(rec, i, &s);
            if let Some(step) = step {
                let before_len = s.len();
                let before_src = s.iter().filter(|&&v| v < n_src).count();
                for v in &step.removed {
                    s.remove(v);
                }
                for v in &step.added {
                    s.insert(*v);
                }
                let after_src = s.iter().filter(|&&v| v < n_src).count();
                assert!(s.len() <= before_len, "rewrite grew the set");
                assert!(after_src > before_src, "rewrite did not gain a source vertex");
                assert!(
                    is_dominating_blocked(&map.gadget, &s),
                    "rewrite broke domination (rule {:?}, edge {})",
                    step.rule,
                    step.edge_index
                );
                trace.push(step);
                continue 'sweep;
            }
        }
        break;
    }
    let cover: BTreeSet<usize> = s.iter().copied().filter(|&v| v < n_src).collect();
    for (u, v) in map.source.edges() {
        if !cover.contains(&u) && !cover.contains(&v) {
            return Err(ConstructError::UncoveredAtFixpoint(u, v));
        }
    }
    Ok((cover, trace))
}

/// First applicable rule at one edge record, in priority order
/// R1(u), R1(v), R2(u), R2(v), R3, R4.
fn rewrite_at(rec: &GadgetEdge, edge_index: usize, s: &BTreeSet<usize>) -> Option<RewriteStep> {
    let x_set = rec.x_set();
    let y_set = rec.y_set();
    // R1: outer vertex missing but its gadget neighbor p' selected —
    // swap p' and S ∩ X_e for the side's triple
    for (outer, p_outer, _, triple, side) in sides(rec) {
        if !s.contains(&outer) && s.contains(&p_outer) {
            let mut removed: Vec<usize> =
                x_set.iter().copied().filter(|x| s.contains(x)).collect();
            removed.push(p_outer);
            removed.sort_unstable();
            return Some(RewriteStep {
                rule: RewriteRule::R1,
                edge_index,
                side,
                removed,
                added: triple.to_vec(),
            });
        }
    }
    // R2: outer vertex missing but both X_e-neighbors of p' selected —
    // swap the bottom neighbor of p' for the outer vertex
    for (outer, _, nbrs, _, side) in sides(rec) {
        if !s.contains(&outer) && nbrs.iter().all(|x| s.contains(x)) {
            return Some(RewriteStep {
                rule: RewriteRule::R2,
                edge_index,
                side,
                removed: vec![nbrs[0]],
                added: vec![outer],
            });
        }
    }
    // R3/R4: both outer vertices missing — swap S ∩ Y_e for a triple
    // (plus the far endpoint when four or more were selected)
    if !s.contains(&rec.u) && !s.contains(&rec.v) {
        let selected: Vec<usize> = y_set.iter().copied().filter(|y| s.contains(y)).collect();
        if selected.len() == 3 {
            // pick the side whose far p-vertex is unselected (always
            // true here: a selected p1/p6 would have fired R1)
            let (triple, side) = if !s.contains(&rec.p[5]) {
                (rec.triple_u(), Side::U)
            } else {
                (rec.triple_v(), Side::V)
            };
            return Some(RewriteStep {
                rule: RewriteRule::R3,
                edge_index,
                side,
                removed: selected,
                added: triple.to_vec(),
            });
        }
        if selected.len() >= 4 {
            let mut added = rec.triple_u().to_vec();
            added.push(rec.v);
            return Some(RewriteStep {
                rule: RewriteRule::R4,
                edge_index,
                side: Side::U,
                removed: selected,
                added,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gamma_e_exact, min_triple_weight_set, ExactOptions};
    use crate::graph::{graph_metrics, path_graph};
    use crate::tree::canonical_set;
    use crate::weights::{is_exponential_dominating, Mode};

    #[test]
    fn t_tree_shapes() {
        let t11 = build_t_tree(&[1, 1]).unwrap();
        assert_eq!(t11.n(), 3);
        assert!(t11.graph().is_tree());
        assert_eq!(build_t_tree(&[2, 1]).unwrap().n(), 5);
        assert_eq!(build_t_tree(&[5, 4, 4]).unwrap().n(), 106);
        assert!(matches!(build_t_tree(&[10; 10]), Err(ConstructError::SizeGuard(..))));
    }

    #[test]
    fn figure2_small_orders_and_gamma() {
        for (k, n, gamma) in [(0usize, 9usize, 2usize), (1, 14, 3)] {
            let g = build_figure2(k);
            assert_eq!(g.n(), n);
            assert!(g.is_tree() && g.is_subcubic());
            let r = gamma_e_exact(&g, Mode::Blocked, ExactOptions::default()).unwrap();
            assert_eq!(r.value, gamma, "k = {k}");
            assert_eq!(gamma, (n + 1) / 5);
        }
        assert_eq!(build_figure2(3).n(), 24);
    }

    #[test]
    fn degree5_instance_h1() {
        let (tree, set, d) = build_degree5_instance(1).unwrap();
        assert_eq!(d, 3);
        assert_eq!(tree.n(), 106);
        assert_eq!(set.len(), 20);
        assert!(is_exponential_dominating(tree.graph(), &set, Mode::Blocked).ok);
        assert!(build_degree5_instance(0).is_err());
        assert!(matches!(build_degree5_instance(2), Err(ConstructError::SizeGuard(..))));
    }

    #[test]
    fn extremal_family_small() {
        let family = generate_extremal_candidates(4).unwrap();
        assert_eq!(family.len(), 2); // K_1 and P_4
        let forms = canonical_set(&family);
        assert!(forms.contains(&tree_canonical_form(&path_graph(4)).unwrap()));
        for g in generate_extremal_candidates(13).unwrap() {
            assert!(g.is_tree() && g.is_subcubic());
            assert_eq!(g.n() % 3, 1);
        }
    }

    #[test]
    fn extremal_family_hits_the_ratio() {
        for g in generate_extremal_candidates(10).unwrap() {
            let r = gamma_e_exact(&g, Mode::Blocked, ExactOptions::default()).unwrap();
            assert_eq!(3 * r.value, g.n() + 2, "n = {}", g.n());
        }
    }

    #[test]
    fn catalog_metrics() {
        for (name, n, girth) in [
            ("k4", 4, 3),
            ("k33", 6, 4),
            ("prism", 6, 3),
            ("petersen", 10, 5),
            ("heawood", 14, 6),
            ("mcgee", 24, 7),
            ("tutte-coxeter", 30, 8),
        ] {
            let g = named_graph(name).unwrap();
            assert_eq!(g.n(), n, "{name}");
            assert!(g.is_cubic(), "{name}");
            let m = graph_metrics(&g);
            assert_eq!(m.girth, Some(girth), "{name}");
        }
        assert!(named_graph("frobnicator").is_err());
    }

    #[test]
    fn theorem7_gluing() {
        let k13 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let glued = build_theorem7_extremal(&k13).unwrap();
        assert_eq!(glued.n(), 6);
        assert!(glued.is_cubic());
        // gluing K_{1,3} yields K_{3,3} (bipartite, girth 4)
        assert_eq!(graph_metrics(&glued).girth, Some(4));

        let t4 = binary_caterpillar(4).unwrap();
        let g10 = build_theorem7_extremal(&t4).unwrap();
        assert_eq!(g10.n(), 10);
        assert!(g10.is_cubic());
        assert_eq!(min_triple_weight_set(&g10).unwrap().value, 4); // (10+6)/4

        assert!(build_theorem7_extremal(&path_graph(2)).is_err());
        assert!(build_theorem7_extremal(&path_graph(5)).is_err());
    }

    #[test]
    fn gadget_shape() {
        let map = build_gadget(&named_graph("k4").unwrap()).unwrap();
        assert_eq!(map.gadget.n(), 64);
        assert!(map.gadget.is_subcubic());
        for rec in &map.edges {
            // degrees forced by the drawing
            for p in rec.p {
                assert_eq!(map.gadget.degree(p), 3);
            }
            assert_eq!(map.gadget.degree(rec.q2), 2);
            assert_eq!(map.gadget.degree(rec.q3), 1);
            assert_eq!(map.gadget.degree(rec.q4), 1);
            assert_eq!(map.gadget.degree(rec.q5), 2);
        }
        assert_eq!(build_gadget(&named_graph("petersen").unwrap()).unwrap().gadget.n(), 160);
        assert!(build_gadget(&path_graph(4)).is_err());
    }

    #[test]
    fn cover_lift_verifies() {
        let map = build_gadget(&named_graph("k4").unwrap()).unwrap();
        let cover: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        let s = cover_to_expdom(&map, &cover, None).unwrap();
        assert_eq!(s.len(), 3 + 12);

        let k33 = build_gadget(&named_graph("k33").unwrap()).unwrap();
        let side: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        let s = cover_to_expdom(&k33, &side, None).unwrap();
        assert_eq!(s.len(), 3 + 18);

        let not_cover: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert!(matches!(
            cover_to_expdom(&map, &not_cover, None),
            Err(ConstructError::NotACover(..))
        ));
    }

    #[test]
    fn cover_roundtrip() {
        for name in ["k4", "k33"] {
            let g = named_graph(name).unwrap();
            let map = build_gadget(&g).unwrap();
            let cover: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
            let s = cover_to_expdom(&map, &cover, None).unwrap();
            let (c, _) = expdom_to_cover(&map, &s).unwrap();
            assert!(c.len() <= s.len() - 2 * g.m());
            for (u, v) in g.edges() {
                assert!(c.contains(&u) || c.contains(&v));
            }
        }
    }

    #[test]
    fn rewrite_r1_fires_on_shifted_set() {
        // displace one cover lift: select u'_e instead of u for an edge
        let map = build_gadget(&named_graph("k4").unwrap()).unwrap();
        let cover: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        let mut s = cover_to_expdom(&map, &cover, None).unwrap();
        // add p1 of an edge whose u-side endpoint 3 is outside the set
        let rec = map.edges.iter().find(|r| r.v == 3).unwrap().clone();
        s.insert(rec.p[5]); // v'_e for v = 3, still dominating, now R1-eligible
        assert!(is_dominating_blocked(&map.gadget, &s));
        let before_src = s.iter().filter(|&&v| v < 4).count();
        let (c, trace) = expdom_to_cover(&map, &s).unwrap();
        assert!(trace.iter().any(|t| t.rule == RewriteRule::R1));
        assert!(c.len() >= before_src);
    }

    #[test]
    fn rejects_non_dominating_set() {
        let map = build_gadget(&named_graph("k4").unwrap()).unwrap();
        let s: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert_eq!(expdom_to_cover(&map, &s).unwrap_err(), ConstructError::NotDominating);
    }
}
