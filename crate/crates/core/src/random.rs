//! Seeded random instance generators used by the experiment harness and
//! the property sweeps. ChaCha8 keeps every sweep reproducible across
//! platforms.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform-ish random tree on `n` vertices with maximum degree at most
/// 3, grown by attaching each new vertex to a random host of degree < 3.
pub fn random_subcubic_tree(n: usize, rng: &mut impl Rng) -> Graph {
    assert!(n >= 1);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n.saturating_sub(1));
    let mut degree = vec![0usize; n];
    for v in 1..n {
        let hosts: Vec<usize> = (0..v).filter(|&u| degree[u] < 3).collect();
        let host = hosts[rng.gen_range(0..hosts.len())];
        edges.push((host, v));
        degree[host] += 1;
        degree[v] += 1;
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// A connected random subcubic graph: a random subcubic tree plus up to
/// `extra_edges` random chords that keep the maximum degree at 3.
pub fn random_subcubic_graph(n: usize, extra_edges: usize, rng: &mut impl Rng) -> Graph {
    let tree = random_subcubic_tree(n, rng);
    let mut edges = tree.edges();
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut added = 0;
    let mut attempts = 0;
    while added < extra_edges && attempts < 20 * (extra_edges + 1) {
        attempts += 1;
        if n < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || degree[u] >= 3 || degree[v] >= 3 {
            continue;
        }
        let (a, b) = (u.min(v), u.max(v));
        if edges.contains(&(a, b)) {
            continue;
        }
        edges.push((a, b));
        degree[a] += 1;
        degree[b] += 1;
        added += 1;
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// A random vertex subset containing each vertex independently with
/// probability `p`.
pub fn random_vertex_subset(n: usize, p: f64, rng: &mut impl Rng) -> BTreeSet<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}
