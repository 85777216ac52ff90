//! Undirected simple graphs with 0-based vertex ids, plus the EDGE and
//! graph6 serializations and basic metrics (degrees, girth, diameter).

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("malformed edge line: {0}")]
    MalformedEdge(String),
    #[error("invalid graph6 data: {0}")]
    Graph6(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
}

/// Serialization formats understood by [`parse_graph`] and [`emit_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Edge,
    Graph6,
}

impl std::str::FromStr for Format {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "edge" => Ok(Format::Edge),
            "graph6" | "g6" => Ok(Format::Graph6),
            other => Err(GraphError::UnknownFormat(other.to_string())),
        }
    }
}

/// An undirected simple graph stored as sorted adjacency lists.
///
/// Immutable after construction; all operations on it are pure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Graph", 3)?;
        s.serialize_field("n", &self.n())?;
        s.serialize_field("edges", &self.edges())?;
        s.serialize_field("labels", &self.labels)?;
        s.end()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], labels: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for &x in [u, v].iter() {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.adj[u].contains(&v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    pub fn is_cubic(&self) -> bool {
        self.n() > 0 && self.adj.iter().all(|a| a.len() == 3)
    }

    /// BFS distances from `start`; `None` for unreachable vertices.
    pub fn bfs(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m() == self.n() - 1 && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.connected_components().len() == self.n()
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp = Vec::new();
        let mut seen = vec![false; self.n()];
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut cur = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        cur.push(y);
                        queue.push_back(y);
                    }
                }
            }
            cur.sort_unstable();
            comp.push(cur);
        }
        comp
    }

    /// Subgraph induced on `keep` (sorted, deduplicated by the caller is
    /// not required). Returns the graph and the map old id -> new id.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut map = vec![None; self.n()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = Some(new);
        }
        let mut g = Graph::empty(keep.len());
        for &old in &keep {
            let nu = map[old].unwrap();
            for &w in &self.adj[old] {
                if let Some(nw) = map[w] {
                    if nu < nw {
                        g.adj[nu].push(nw);
                        g.adj[nw].push(nu);
                    }
                }
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        (g, map)
    }

    /// Deletes the given vertices, compacting the remaining ids.
    pub fn remove_vertices(&self, remove: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut gone = vec![false; self.n()];
        for &v in remove {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }
}

/// Degree statistics, connectivity, girth and diameter of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub degree_histogram: Vec<usize>,
    pub max_degree: usize,
    pub connected: bool,
    /// `None` encodes infinite girth (acyclic graph).
    pub girth: Option<usize>,
    /// `None` encodes infinite diameter (disconnected or empty graph).
    pub diameter: Option<usize>,
    pub eccentricities: Vec<Option<usize>>,
}

/// Exact metrics by repeated BFS; girth via the shortest cycle through
/// each edge.
pub fn graph_metrics(g: &Graph) -> GraphMetrics {
    let n = g.n();
    let mut histogram = vec![0usize; g.max_degree() + 1];
    for v in 0..n {
        histogram[g.degree(v)] += 1;
    }
    let connected = g.is_connected();
    let mut ecc = vec![None; n];
    if connected {
        for v in 0..n {
            ecc[v] = g.bfs(v).into_iter().map(Option::unwrap).max();
        }
    }
    let diameter = if connected && n > 0 { ecc.iter().map(|e| e.unwrap()).max() } else { None };
    // shortest cycle through edge (u, v) = dist(u, v) in G - uv, plus one
    let mut girth: Option<usize> = None;
    for (u, v) in g.edges() {
        let mut dist = vec![None; n];
        dist[u] = Some(0usize);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            if let Some(limit) = girth {
                if dx + 1 >= limit {
                    break;
                }
            }
            for &y in g.neighbors(x) {
                if x == u && y == v {
                    continue;
                }
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        if let Some(d) = dist[v] {
            let cycle = d + 1;
            if girth.map_or(true, |b| cycle < b) {
                girth = Some(cycle);
            }
        }
    }
    GraphMetrics {
        degree_histogram: histogram,
        max_degree: g.max_degree(),
        connected,
        girth,
        diameter,
        eccentricities: ecc,
    }
}

/// Parses a graph from `text` in the given format.
pub fn parse_graph(text: &str, format: Format) -> Result<Graph, GraphError> {
    match format {
        Format::Edge => parse_edge(text),
        Format::Graph6 => parse_graph6(text),
    }
}

/// Canonical serialization: EDGE edges are sorted lexicographically.
pub fn emit_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Edge => emit_edge(g),
        Format::Graph6 => emit_graph6(g),
    }
}

fn parse_edge(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().filter(|l| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let header = lines.next().ok_or_else(|| GraphError::MalformedHeader("empty input".into()))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| GraphError::MalformedHeader(header.into()))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| GraphError::MalformedHeader(header.into()))?;
    if it.next().is_some() {
        return Err(GraphError::MalformedHeader(header.into()));
    }
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::MalformedEdge(line.into()))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::MalformedEdge(line.into()))?;
        if it.next().is_some() {
            return Err(GraphError::MalformedEdge(line.into()));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCountMismatch { expected: m, found: edges.len() });
    }
    Graph::from_edges(n, &edges)
}

fn emit_edge(g: &Graph) -> String {
    let mut out = format!("{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = write!(out, "\n{} {}", u, v);
    }
    out
}

const G6_HEADER: &str = ">>graph6<<";

fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix(G6_HEADER) {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Graph6("empty input".into()));
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(GraphError::Graph6("unsupported order encoding".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | g6_val(b)?;
        }
        (n, 4)
    } else {
        (g6_val(bytes[0])?, 1)
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let mut bits = Vec::with_capacity(bits_needed + 6);
    while pos < bytes.len() {
        let v = g6_val(bytes[pos])?;
        for k in (0..6).rev() {
            bits.push((v >> k) & 1 == 1);
        }
        pos += 1;
    }
    if bits.len() < bits_needed {
        return Err(GraphError::Graph6("truncated adjacency data".into()));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

fn g6_val(b: u8) -> Result<usize, GraphError> {
    if !(63..=126).contains(&b) {
        return Err(GraphError::Graph6(format!("byte {} out of range", b)));
    }
    Ok((b - 63) as usize)
}

fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        assert!(n <= 258_047, "graph too large for this graph6 writer");
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut bits: Vec<bool> = Vec::with_capacity(n * n.saturating_sub(1) / 2 + 6);
    for v in 1..n {
        for u in 0..v {
            bits.push(g.has_edge(u, v));
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for &b in chunk {
            v = (v << 1) | b as u8;
        }
        out.push(v + 63);
    }
    String::from_utf8(out).unwrap()
}

/// Parses a comma-separated list of 0-based vertex ids, e.g. `"0,3,7"`.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<std::collections::BTreeSet<usize>, GraphError> {
    let mut out = std::collections::BTreeSet::new();
    let t = text.trim();
    if t.is_empty() {
        return Ok(out);
    }
    for part in t.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| GraphError::MalformedEdge(part.to_string()))?;
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        out.insert(v);
    }
    Ok(out)
}

/// The path on `n` vertices, `0 - 1 - ... - n-1`.
pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges).unwrap()
}
