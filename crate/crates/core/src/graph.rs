//! Simple finite undirected graphs with dense vertex indices and ranked edges.

use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Dense rank of an edge within a graph's lexicographically sorted edge list.
pub type EdgeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed line: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex index {v} out of range (n = {n})")]
    IndexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("vertex index {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    Loop { v: usize },
}

/// Immutable simple graph: no self-loops, no parallel edges, vertices `0..n`.
///
/// Edges are canonicalized to `(u, v)` with `u < v` and stored sorted, so the
/// position of an edge in [`Graph::edges`] is a stable dense rank ([`EdgeId`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    inc: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::Loop { v: u });
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        let mut adj = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (rank, &(u, v)) in canon.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            inc[u].push(rank);
            inc[v].push(rank);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: canon,
            adj,
            inc,
        })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph::from_edges(n, std::iter::empty()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Number of elements (vertices plus edges); the vertex count of the total graph.
    pub fn element_count(&self) -> usize {
        self.n + self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Ranks of the edges incident on `v`, in increasing rank order.
    pub fn incident_edges(&self, v: usize) -> &[EdgeId] {
        &self.inc[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Lowest-index vertex of maximum degree. Panics on the empty graph.
    pub fn max_degree_vertex(&self) -> usize {
        let delta = self.max_degree();
        (0..self.n).find(|&v| self.degree(v) == delta).unwrap()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Rank of the edge `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<EdgeId> {
        if u == v {
            return None;
        }
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e]
    }

    /// Partition of the vertices into connected components, each sorted,
    /// ordered by smallest contained vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut parts = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            parts.push(comp);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Copy of the graph with edge `e` removed; the vertex set is unchanged.
    pub fn without_edge(&self, e: EdgeId) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &p)| p);
        Graph::from_edges(self.n, edges).unwrap()
    }

    /// Induced subgraph on `keep` (sorted, deduped internally). Returns the
    /// subgraph together with the map from new vertex index to old.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut old_of_new: Vec<usize> = keep.to_vec();
        old_of_new.sort_unstable();
        old_of_new.dedup();
        let mut new_of_old = vec![usize::MAX; self.n];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let edges = self.edges.iter().filter_map(|&(u, v)| {
            let (nu, nv) = (new_of_old[u], new_of_old[v]);
            (nu != usize::MAX && nv != usize::MAX).then_some((nu, nv))
        });
        let g = Graph::from_edges(old_of_new.len(), edges).unwrap();
        (g, old_of_new)
    }

    // ---- named families ----

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        if n == 0 {
            return Graph::empty(0);
        }
        Graph::from_edges(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).unwrap()
    }

    /// Star K_{1,k}: center 0 joined to leaves 1..=k.
    pub fn star(k: usize) -> Graph {
        Graph::from_edges(k + 1, (1..=k).map(|v| (0, v))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    /// The Petersen graph: outer cycle 0..5, inner pentagram 5..10, spokes.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Graph::from_edges(10, edges).unwrap()
    }

    /// Hypercube Q_d on 2^d vertices; vertices adjacent iff they differ in one bit.
    pub fn hypercube(d: u32) -> Graph {
        let n = 1usize << d;
        let edges = (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))).filter(move |&(u, v)| u < v));
        Graph::from_edges(n, edges).unwrap()
    }

    /// Two triangles sharing vertex 0.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
    }

    /// Erdos-Renyi G(n, p) with a fixed seed.
    pub fn random(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    /// Random 5-partite graph: each vertex gets a uniformly random part, and
    /// each cross-part pair becomes an edge with probability `p`. The result
    /// is 5-colorable by construction; the parts are also returned.
    pub fn random_5_partite(n: usize, p: f64, seed: u64) -> (Graph, Vec<u32>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts: Vec<u32> = (0..n).map(|_| rng.gen_range(0..5u32)).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if parts[u] != parts[v] && rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        (Graph::from_edges(n, edges).unwrap(), parts)
    }

    // ---- edge-list text format ----

    /// Parses the edge-list text format: a header `p <n> <m>`, then `m` lines
    /// `e <u> <v>`; lines starting with `c` are comments. Duplicate edge lines
    /// collapse to one edge.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut n: Option<usize> = None;
        let mut declared_m = 0usize;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge_lines = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('c') {
                continue;
            }
            let mut it = s.split_ascii_whitespace();
            match it.next() {
                Some("p") => {
                    if n.is_some() {
                        return Err(GraphError::Malformed {
                            line,
                            msg: "duplicate header".into(),
                        });
                    }
                    let nv = parse_field(it.next(), line, "vertex count")?;
                    let mv = parse_field(it.next(), line, "edge count")?;
                    if it.next().is_some() {
                        return Err(GraphError::Malformed {
                            line,
                            msg: "trailing tokens after header".into(),
                        });
                    }
                    n = Some(nv);
                    declared_m = mv;
                }
                Some("e") => {
                    let n = n.ok_or(GraphError::Malformed {
                        line,
                        msg: "edge before header".into(),
                    })?;
                    let u: usize = parse_field(it.next(), line, "endpoint")?;
                    let v: usize = parse_field(it.next(), line, "endpoint")?;
                    if it.next().is_some() {
                        return Err(GraphError::Malformed {
                            line,
                            msg: "trailing tokens after edge".into(),
                        });
                    }
                    if u >= n {
                        return Err(GraphError::IndexOutOfRange { line, v: u, n });
                    }
                    if v >= n {
                        return Err(GraphError::IndexOutOfRange { line, v, n });
                    }
                    if u == v {
                        return Err(GraphError::SelfLoop { line, v: u });
                    }
                    edges.push((u, v));
                    edge_lines += 1;
                }
                Some(tok) => {
                    return Err(GraphError::Malformed {
                        line,
                        msg: format!("unknown line type {tok:?}"),
                    })
                }
                None => unreachable!(),
            }
        }
        let n = n.ok_or(GraphError::Malformed {
            line: text.lines().count() + 1,
            msg: "missing header".into(),
        })?;
        if edge_lines != declared_m {
            return Err(GraphError::Malformed {
                line: text.lines().count(),
                msg: format!("header declares {declared_m} edges, found {edge_lines}"),
            });
        }
        Graph::from_edges(n, edges)
    }

    /// Canonical writer: header, then edges in rank order. `parse(write(g)) == g`.
    pub fn write(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p {} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }
}

fn parse_field(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    tok.ok_or_else(|| GraphError::Malformed {
        line,
        msg: format!("missing {what}"),
    })?
    .parse()
    .map_err(|_| GraphError::Malformed {
        line,
        msg: format!("invalid {what}"),
    })
}
