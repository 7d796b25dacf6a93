//! Cut vertices, separators, and vertex/edge connectivity via max-flow.

use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
}

/// Articulation points by iterative DFS low-link, in increasing vertex order.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0usize;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // stack entries: (vertex, index of next neighbor to scan)
        let mut stack = vec![(root, 0usize)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0usize;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if *next < g.neighbors(u).len() {
                let w = g.neighbors(u)[*next];
                *next += 1;
                if disc[w] == usize::MAX {
                    parent[w] = u;
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, 0));
                } else if w != parent[u] {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if p != root && low[u] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// True iff removing `s` increases the number of connected components.
pub fn is_separator(g: &Graph, s: &[usize]) -> bool {
    let before = g.connected_components().len();
    let mut removed = vec![false; g.n()];
    for &v in s {
        removed[v] = true;
    }
    components_avoiding(g, &removed) > before
}

/// Number of connected components of `g` restricted to vertices with
/// `removed[v] == false`.
fn components_avoiding(g: &Graph, removed: &[bool]) -> usize {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if removed[start] || seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            for &w in g.neighbors(u) {
                if !removed[w] && !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
    }
    count
}

/// Connected, at least 3 vertices, no cut vertices.
pub fn is_biconnected(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && cut_vertices(g).is_empty()
}

/// Smallest-index neighbor `w` of `v` such that `{v, w}` does not separate `g`.
///
/// Requires a 2-connected graph; such a `w` always exists then, so exhausting
/// the neighborhood indicates a bug and panics.
pub fn find_non_separating_neighbor(g: &Graph, v: usize) -> Result<usize, ConnectivityError> {
    if v >= g.n() {
        return Err(ConnectivityError::VertexOutOfRange { v, n: g.n() });
    }
    if !is_biconnected(g) {
        return Err(ConnectivityError::NotTwoConnected);
    }
    for &w in g.neighbors(v) {
        if !is_separator(g, &[v, w]) {
            return Ok(w);
        }
    }
    unreachable!("every vertex of a 2-connected graph has a non-separating neighbor");
}

/// Vertex connectivity. 0 for disconnected or trivial graphs, n-1 for K_n.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    if g.m() == n * (n - 1) / 2 {
        return n - 1;
    }
    // min over non-adjacent pairs of the local vertex connectivity
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) {
                best = best.min(local_vertex_connectivity(g, s, t));
            }
        }
    }
    best
}

/// Edge connectivity. 0 for disconnected or trivial graphs.
pub fn edge_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    (1..n)
        .map(|t| local_edge_connectivity(g, 0, t))
        .min()
        .unwrap()
}

/// Max-flow between non-adjacent s, t with unit vertex capacities
/// (vertex splitting: v_in = 2v, v_out = 2v+1).
fn local_vertex_connectivity(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.n();
    let inf = 2 * n;
    let mut net = MaxFlow::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { inf } else { 1 };
        net.add_edge(2 * v, 2 * v + 1, cap);
    }
    for &(u, v) in g.edges() {
        net.add_edge(2 * u + 1, 2 * v, inf);
        net.add_edge(2 * v + 1, 2 * u, inf);
    }
    net.max_flow(2 * s + 1, 2 * t)
}

fn local_edge_connectivity(g: &Graph, s: usize, t: usize) -> usize {
    let mut net = MaxFlow::new(g.n());
    for &(u, v) in g.edges() {
        net.add_edge(u, v, 1);
        net.add_edge(v, u, 1);
    }
    net.max_flow(s, t)
}

/// Dinic's algorithm on an explicit arc list.
struct MaxFlow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<usize>,
}

impl MaxFlow {
    fn new(n: usize) -> Self {
        MaxFlow {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: usize) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let n = self.head.len();
        let mut flow = 0;
        loop {
            // BFS level graph
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &a in &self.head[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && level[v] == usize::MAX {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if level[t] == usize::MAX {
                return flow;
            }
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.dfs(s, t, usize::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, limit: usize, level: &[usize], iter: &mut [usize]) -> usize {
        if u == t {
            return limit;
        }
        while iter[u] < self.head[u].len() {
            let a = self.head[u][iter[u]];
            let v = self.to[a];
            if self.cap[a] > 0 && level[v] == level[u] + 1 {
                let pushed = self.dfs(v, t, limit.min(self.cap[a]), level, iter);
                if pushed > 0 {
                    self.cap[a] -= pushed;
                    self.cap[a ^ 1] += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0
    }
}
