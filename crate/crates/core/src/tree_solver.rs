//! Polynomial-time exact solver for exponential domination on subcubic
//! trees: grow the set vertex by vertex, each time picking an extension
//! vertex through the `∂w` deficiency functional, working independently
//! inside the maximal subtrees delimited by the current set.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::exact::{SolveError, SolveResult};
use crate::graph::Graph;
use crate::tree::{root_tree, RootedTree};
use crate::weights::{is_exponential_dominating, weight_profile, Mode};

/// One maximal subtree in which the set contains only endvertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    /// Sorted global vertex ids of the part.
    pub vertices: Vec<usize>,
    /// Set vertices attached to the part (each has degree 1 within it).
    pub boundary: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub parts: Vec<Part>,
}

impl Part {
    /// The part as a standalone graph plus the global id of each local
    /// vertex (`vertices` is sorted, so local ids are positional).
    pub fn induced(&self, g: &Graph) -> Graph {
        g.induced(&self.vertices).0
    }

    pub fn local_of(&self, global: usize) -> Option<usize> {
        self.vertices.binary_search(&global).ok()
    }
}

/// Splits a tree into the maximal subtrees whose set vertices are all
/// endvertices: the components of `T - S`, each extended by its set
/// neighbors. Every non-set vertex lies in exactly one part, and within
/// a part the blocked weights agree with the whole tree (absorption
/// makes the parts independent).
pub fn decompose_by_s(g: &Graph, set: &BTreeSet<usize>) -> Result<Decomposition, SolveError> {
    if !g.is_tree() {
        return Err(SolveError::NotATree);
    }
    let n = g.n();
    let mut assigned = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if assigned[start] || set.contains(&start) {
            continue;
        }
        // flood the component of T - S containing `start`
        let mut comp = vec![start];
        assigned[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for &y in g.neighbors(x) {
                if !set.contains(&y) && !assigned[y] {
                    assigned[y] = true;
                    comp.push(y);
                }
            }
        }
        let mut boundary: BTreeSet<usize> = BTreeSet::new();
        for &x in &comp {
            for &y in g.neighbors(x) {
                if set.contains(&y) {
                    boundary.insert(y);
                }
            }
        }
        let mut vertices: Vec<usize> = comp;
        vertices.extend(boundary.iter().copied());
        vertices.sort_unstable();
        parts.push(Part { vertices, boundary: boundary.into_iter().collect() });
    }
    parts.sort_by_key(|p| p.vertices[0]);
    Ok(Decomposition { parts })
}

/// The deficiency functional at `u`:
/// `∂w(u) = max over v in T_u of 2^{dist(u,v)} (1 - w_{(T_u, S∩T_u)}(v))`,
/// computed exactly from the weight profile of the subtree below `u`.
pub fn partial_deficiency(t: &RootedTree, set: &BTreeSet<usize>, u: usize) -> Dyadic {
    let below = t.subtree(u); // preorder: below[0] == u
    let mut sorted = below.clone();
    sorted.sort_unstable();
    let sub = t.graph().induced(&sorted).0;
    let local_set: BTreeSet<usize> = sorted
        .iter()
        .enumerate()
        .filter(|(_, v)| set.contains(v))
        .map(|(i, _)| i)
        .collect();
    let profile = weight_profile(&sub, &local_set, Mode::Blocked);
    let one = Dyadic::one();
    sorted
        .iter()
        .enumerate()
        .map(|(local, &v)| {
            let d = (t.depth(v) - t.depth(u)) as u32;
            (&one - profile.weight(local)).scale_pow2(d)
        })
        .max()
        .expect("subtree is nonempty")
}

/// Per-vertex `∂w` table for a rooted tree (ids are the tree's own).
pub fn deficiency_table(t: &RootedTree, set: &BTreeSet<usize>) -> Vec<Dyadic> {
    (0..t.n()).map(|u| partial_deficiency(t, set, u)).collect()
}

/// The next vertex to add: the deepest non-root `u` with `∂w(u) > 1`
/// whose proper descendants all have `∂w ≤ 1` (ties by lowest id), or
/// the root when no such vertex exists.
pub fn select_extension(t: &RootedTree, set: &BTreeSet<usize>) -> Result<usize, SolveError> {
    if is_exponential_dominating(t.graph(), set, Mode::Blocked).ok {
        return Err(SolveError::AlreadyDominating);
    }
    let dw = deficiency_table(t, set);
    let mut order: Vec<usize> = (0..t.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(t.depth(v)), v));
    let one = Dyadic::one();
    for &u in &order {
        if u == t.root() || dw[u] <= one {
            continue;
        }
        let descendants_ok = t.subtree(u).iter().skip(1).all(|&v| dw[v] <= one);
        if descendants_ok {
            return Ok(u);
        }
    }
    Ok(t.root())
}

/// One growth step of the solver, for tracing.
#[derive(Clone, Debug, Serialize)]
pub struct TreeStep {
    pub chosen: usize,
    pub part_vertices: Vec<usize>,
    /// `∂w` per part vertex (global id, value), in id order.
    pub deficiencies: Vec<(usize, Dyadic)>,
    pub deficient_after: usize,
    pub total_deficiency_after: Dyadic,
}

fn measure(g: &Graph, set: &BTreeSet<usize>) -> (usize, Dyadic) {
    let check = is_exponential_dominating(g, set, Mode::Blocked);
    let total = check
        .deficient
        .iter()
        .fold(Dyadic::zero(), |acc, (_, w)| &acc + &(&Dyadic::one() - w));
    (check.deficient.len(), total)
}

/// Exact `γ_e` for a subcubic tree with a full per-iteration trace.
pub fn gamma_e_tree_traced(g: &Graph) -> Result<(SolveResult, Vec<TreeStep>), SolveError> {
    if !g.is_subcubic() {
        return Err(SolveError::NotSubcubic);
    }
    if !g.is_tree() {
        return Err(SolveError::NotATree);
    }
    let n = g.n();
    let mut set: BTreeSet<usize> = BTreeSet::new();
    let mut steps: Vec<TreeStep> = Vec::new();
    let mut measures: Vec<(usize, Dyadic)> = vec![measure(g, &set)];
    while !is_exponential_dominating(g, &set, Mode::Blocked).ok {
        assert!(set.len() < n, "solver exceeded n additions");
        let decomposition = decompose_by_s(g, &set)?;
        let mut advanced = false;
        for part in &decomposition.parts {
            let sub = part.induced(g);
            let local_set: BTreeSet<usize> = part
                .boundary
                .iter()
                .map(|b| part.local_of(*b).expect("boundary lies in the part"))
                .collect();
            if is_exponential_dominating(&sub, &local_set, Mode::Blocked).ok {
                continue;
            }
            // root at the lowest-id non-set vertex
            let root = (0..sub.n())
                .find(|l| !local_set.contains(l))
                .expect("every part has a non-set vertex");
            let rooted = root_tree(&sub, root).expect("parts of a tree are trees");
            let chosen_local = select_extension(&rooted, &local_set)?;
            let chosen = part.vertices[chosen_local];
            let dw = deficiency_table(&rooted, &local_set);
            set.insert(chosen);
            let m = measure(g, &set);
            steps.push(TreeStep {
                chosen,
                part_vertices: part.vertices.clone(),
                deficiencies: part
                    .vertices
                    .iter()
                    .zip(dw.iter())
                    .map(|(&v, d)| (v, d.clone()))
                    .collect(),
                deficient_after: m.0,
                total_deficiency_after: m.1.clone(),
            });
            // termination measure: weakly decreasing every step,
            // strictly decreasing across any two consecutive steps
            let prev = measures.last().unwrap();
            assert!(
                m.0 < prev.0 || (m.0 == prev.0 && m.1 <= prev.1),
                "termination measure increased"
            );
            if measures.len() >= 2 {
                let two_back = &measures[measures.len() - 2];
                assert!(
                    m.0 < two_back.0 || (m.0 == two_back.0 && m.1 < two_back.1),
                    "termination measure stalled over two steps"
                );
            }
            measures.push(m);
            advanced = true;
            break; // re-decompose after every addition
        }
        assert!(advanced, "deficiency without a deficient part");
    }
    let witness: Vec<usize> = set.iter().copied().collect();
    Ok((
        SolveResult {
            value: witness.len(),
            witness,
            mode: Mode::Blocked,
            explored: steps.len() as u64,
            proven_minimum: true,
        },
        steps,
    ))
}

/// Exact `γ_e` for a subcubic tree.
pub fn gamma_e_tree(g: &Graph) -> Result<SolveResult, SolveError> {
    gamma_e_tree_traced(g).map(|(r, _)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gamma_e_exact, ExactOptions};
    use crate::graph::path_graph;
    use crate::random::{random_subcubic_tree, seeded_rng};
    use crate::tree::enumerate_subcubic_trees;

    fn set(vs: &[usize]) -> BTreeSet<usize> {
        vs.iter().copied().collect()
    }

    #[test]
    fn decompose_p5_center() {
        let d = decompose_by_s(&path_graph(5), &set(&[2])).unwrap();
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.parts[0].vertices, vec![0, 1, 2]);
        assert_eq!(d.parts[0].boundary, vec![2]);
        assert_eq!(d.parts[1].vertices, vec![2, 3, 4]);
    }

    #[test]
    fn decompose_empty_set_is_whole_tree() {
        let d = decompose_by_s(&path_graph(4), &set(&[])).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].vertices, vec![0, 1, 2, 3]);
        assert!(d.parts[0].boundary.is_empty());
    }

    #[test]
    fn decompose_rejects_cycles() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(decompose_by_s(&c4, &set(&[])).unwrap_err(), SolveError::NotATree);
    }

    #[test]
    fn part_weights_match_whole_tree() {
        // blocking makes parts exact: per-part weights equal global ones
        for seed in 0..25 {
            let mut rng = seeded_rng(seed);
            let t = random_subcubic_tree(14, &mut rng);
            let s = crate::random::random_vertex_subset(14, 0.25, &mut rng);
            let global = weight_profile(&t, &s, Mode::Blocked);
            for part in decompose_by_s(&t, &s).unwrap().parts {
                let sub = part.induced(&t);
                let local_set: BTreeSet<usize> = part
                    .boundary
                    .iter()
                    .map(|b| part.local_of(*b).unwrap())
                    .collect();
                let local = weight_profile(&sub, &local_set, Mode::Blocked);
                for (l, &v) in part.vertices.iter().enumerate() {
                    if s.contains(&v) {
                        continue;
                    }
                    assert_eq!(local.weight(l), global.weight(v), "seed {seed} vertex {v}");
                }
            }
        }
    }

    #[test]
    fn deficiency_basics() {
        let t = root_tree(&path_graph(4), 0).unwrap();
        // a leaf with S = ∅ has ∂w = 1
        assert_eq!(partial_deficiency(&t, &set(&[]), 3), Dyadic::one());
        // an internal vertex with a child: the child contributes 2(1-0)
        assert!(partial_deficiency(&t, &set(&[]), 2) >= Dyadic::two());
        // P_4 rooted at v1 with S = {v4}: ∂w(v3) = max(0, -2) = 0
        assert_eq!(partial_deficiency(&t, &set(&[3]), 2), Dyadic::zero());
    }

    #[test]
    fn select_p2_root_fallback() {
        let t = root_tree(&path_graph(2), 0).unwrap();
        assert_eq!(select_extension(&t, &set(&[])).unwrap(), 0);
    }

    #[test]
    fn select_p5_deepest_internal() {
        let t = root_tree(&path_graph(5), 0).unwrap();
        assert_eq!(select_extension(&t, &set(&[])).unwrap(), 3);
    }

    #[test]
    fn select_star_center() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = root_tree(&star, 1).unwrap();
        assert_eq!(select_extension(&t, &set(&[])).unwrap(), 0);
    }

    #[test]
    fn select_rejects_dominating_set() {
        let t = root_tree(&path_graph(3), 0).unwrap();
        assert_eq!(
            select_extension(&t, &set(&[1])).unwrap_err(),
            SolveError::AlreadyDominating
        );
    }

    #[test]
    fn solves_named_trees() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(gamma_e_tree(&star).unwrap().value, 1);
        assert_eq!(gamma_e_tree(&path_graph(10)).unwrap().value, 3);
        assert_eq!(gamma_e_tree(&path_graph(1)).unwrap().value, 1);
    }

    #[test]
    fn witness_dominates() {
        for n in 1..=12 {
            let r = gamma_e_tree(&path_graph(n)).unwrap();
            let s: BTreeSet<usize> = r.witness.iter().copied().collect();
            assert!(is_exponential_dominating(&path_graph(n), &s, Mode::Blocked).ok);
        }
    }

    #[test]
    fn matches_brute_force_on_all_small_trees() {
        for n in 1..=10 {
            for t in enumerate_subcubic_trees(n).unwrap() {
                let fast = gamma_e_tree(&t).unwrap();
                let slow = gamma_e_exact(&t, Mode::Blocked, ExactOptions::default()).unwrap();
                assert_eq!(fast.value, slow.value, "n = {n}");
            }
        }
    }

    #[test]
    fn matches_brute_force_on_random_trees() {
        for seed in 0..40 {
            let mut rng = seeded_rng(seed);
            let t = random_subcubic_tree(13, &mut rng);
            let fast = gamma_e_tree(&t).unwrap();
            let slow = gamma_e_exact(&t, Mode::Blocked, ExactOptions::default()).unwrap();
            assert_eq!(fast.value, slow.value, "seed {seed}");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(gamma_e_tree(&c4).unwrap_err(), SolveError::NotATree);
        let k13_plus = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(gamma_e_tree(&k13_plus).unwrap_err(), SolveError::NotSubcubic);
    }

    #[test]
    fn trace_is_consistent() {
        let (r, steps) = gamma_e_tree_traced(&path_graph(10)).unwrap();
        assert_eq!(steps.len(), r.value);
        let chosen: BTreeSet<usize> = steps.iter().map(|s| s.chosen).collect();
        assert_eq!(chosen, r.witness.iter().copied().collect());
        assert_eq!(steps.last().unwrap().deficient_after, 0);
    }
}
