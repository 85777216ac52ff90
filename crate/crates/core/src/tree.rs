//! Rooted trees: parent/children/depth arrays over an acyclic connected
//! [`Graph`], plus exhaustive enumeration of subcubic trees up to
//! isomorphism (the oracle surface for the tree solver and the bounds
//! sweeps).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{Graph, GraphError};

/// A tree rooted at a fixed vertex.
#[derive(Clone, Debug)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl RootedTree {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Vertices of the subtree rooted at `u`, in preorder.
    pub fn subtree(&self, u: usize) -> Vec<usize> {
        let mut out = vec![u];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i]]);
            i += 1;
        }
        out
    }

    /// Depth of the subtree rooted at `u` (0 for a leaf).
    pub fn subtree_depth(&self, u: usize) -> usize {
        self.subtree(u).iter().map(|&v| self.depth[v] - self.depth[u]).max().unwrap()
    }
}

/// Roots an acyclic connected graph at `r`.
pub fn root_tree(g: &Graph, r: usize) -> Result<RootedTree, GraphError> {
    if r >= g.n() {
        return Err(GraphError::VertexOutOfRange { vertex: r, n: g.n() });
    }
    if !g.is_tree() {
        return Err(GraphError::NotATree);
    }
    let n = g.n();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    seen[r] = true;
    let mut queue = VecDeque::from([r]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                children[x].push(y);
                depth[y] = depth[x] + 1;
                queue.push_back(y);
            }
        }
    }
    Ok(RootedTree { graph: g.clone(), root: r, parent, children, depth })
}

/// Canonical encoding of a free tree: the minimum AHU string over its
/// one or two centers. Equal encodings iff isomorphic.
pub fn tree_canonical_form(g: &Graph) -> Result<String, GraphError> {
    if !g.is_tree() {
        return Err(GraphError::NotATree);
    }
    let centers = tree_centers(g);
    Ok(centers.iter().map(|&c| ahu_encoding(g, c)).min().unwrap())
}

fn tree_centers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in g.neighbors(v) {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            degree[v] = 0;
        }
        layer = next;
    }
    layer
}

fn ahu_encoding(g: &Graph, root: usize) -> String {
    fn enc(g: &Graph, v: usize, parent: Option<usize>) -> String {
        let mut parts: Vec<String> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| Some(w) != parent)
            .map(|&w| enc(g, w, Some(v)))
            .collect();
        parts.sort();
        format!("({})", parts.concat())
    }
    enc(g, root, None)
}

/// Rebuilds a tree from an AHU encoding, assigning ids in preorder. This
/// makes enumeration output independent of generation order.
fn tree_from_encoding(enc: &str) -> Graph {
    let bytes = enc.as_bytes();
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for &b in bytes {
        match b {
            b'(' => {
                let id = next;
                next += 1;
                if let Some(&p) = stack.last() {
                    edges.push((p, id));
                }
                stack.push(id);
            }
            b')' => {
                stack.pop();
            }
            _ => unreachable!("invalid encoding"),
        }
    }
    Graph::from_edges(next, &edges).unwrap()
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("order {0} outside the guarded range 1..={1}")]
    OutOfRange(usize, usize),
}

pub const ENUMERATION_GUARD: usize = 16;

/// All trees with `n` vertices and maximum degree at most 3, one
/// representative per isomorphism class, sorted by canonical encoding.
pub fn enumerate_subcubic_trees(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    enumerate_subcubic_trees_ordered(n, false)
}

/// Same as [`enumerate_subcubic_trees`] but growing leaves in reversed
/// vertex order; the output must be identical (self-consistency oracle).
pub fn enumerate_subcubic_trees_ordered(
    n: usize,
    reverse_growth: bool,
) -> Result<Vec<Graph>, EnumerateError> {
    if n == 0 || n > ENUMERATION_GUARD {
        return Err(EnumerateError::OutOfRange(n, ENUMERATION_GUARD));
    }
    // grow by leaf attachment: every subcubic tree on k vertices arises
    // from one on k-1 by attaching a leaf at a vertex of degree < 3
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    level.insert("()".to_string(), Graph::empty(1));
    for _ in 1..n {
        let mut next: BTreeMap<String, Graph> = BTreeMap::new();
        for g in level.values() {
            let hosts: Vec<usize> = if reverse_growth {
                (0..g.n()).rev().collect()
            } else {
                (0..g.n()).collect()
            };
            for v in hosts {
                if g.degree(v) >= 3 {
                    continue;
                }
                let mut edges = g.edges();
                edges.push((v, g.n()));
                let grown = Graph::from_edges(g.n() + 1, &edges).unwrap();
                let key = tree_canonical_form(&grown).unwrap();
                next.entry(key).or_insert(grown);
            }
        }
        level = next;
    }
    Ok(level.keys().map(|k| tree_from_encoding(k)).collect())
}

/// Distinct canonical forms of the trees in `gs` (sanity helper).
pub fn canonical_set(gs: &[Graph]) -> BTreeSet<String> {
    gs.iter().map(|g| tree_canonical_form(g).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path_graph;

    #[test]
    fn root_p3_at_endpoint() {
        let t = root_tree(&path_graph(3), 0).unwrap();
        assert_eq!((0..3).map(|v| t.depth(v)).collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn root_p3_at_center() {
        let t = root_tree(&path_graph(3), 1).unwrap();
        assert_eq!(t.children(1), &[0, 2]);
        assert_eq!(t.depth(0), 1);
    }

    #[test]
    fn rooting_a_cycle_fails() {
        let c3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(root_tree(&c3, 0).unwrap_err(), GraphError::NotATree);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_subcubic_trees(1).unwrap().len(), 1);
        assert_eq!(enumerate_subcubic_trees(4).unwrap().len(), 2);
        // n=4: exactly P_4 and K_{1,3}
        let forms = canonical_set(&enumerate_subcubic_trees(4).unwrap());
        let p4 = tree_canonical_form(&path_graph(4)).unwrap();
        let star = tree_canonical_form(
            &Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(),
        )
        .unwrap();
        assert!(forms.contains(&p4) && forms.contains(&star));
    }

    #[test]
    fn guard_is_enforced() {
        assert!(enumerate_subcubic_trees(0).is_err());
        assert!(enumerate_subcubic_trees(17).is_err());
    }

    #[test]
    fn enumeration_is_order_independent() {
        for n in 1..=10 {
            let a = enumerate_subcubic_trees_ordered(n, false).unwrap();
            let b = enumerate_subcubic_trees_ordered(n, true).unwrap();
            assert_eq!(a, b, "n = {}", n);
        }
    }

    #[test]
    fn emitted_trees_are_valid_and_distinct() {
        for n in 1..=9 {
            let trees = enumerate_subcubic_trees(n).unwrap();
            let forms = canonical_set(&trees);
            assert_eq!(forms.len(), trees.len());
            for t in &trees {
                assert!(t.is_tree());
                assert!(t.is_subcubic());
                assert_eq!(t.n(), n);
            }
        }
    }

    #[test]
    fn isomorphic_trees_share_canonical_form() {
        // same caterpillar with two different labelings
        let a = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let b = Graph::from_edges(5, &[(4, 3), (3, 0), (0, 2), (0, 1)]).unwrap();
        assert_eq!(tree_canonical_form(&a).unwrap(), tree_canonical_form(&b).unwrap());
        assert_ne!(
            tree_canonical_form(&a).unwrap(),
            tree_canonical_form(&path_graph(5)).unwrap()
        );
    }
}
