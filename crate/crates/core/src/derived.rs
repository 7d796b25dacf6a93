//! Derived graphs: total graph, line graph, subdivision, and square.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Graph};

/// A vertex of a total graph, tagged by the base-graph element it came from.
///
/// Dense encoding: `Vertex(i)` sits at index `i`, `Edge(e)` at index `n + e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementId {
    Vertex(usize),
    Edge(EdgeId),
}

impl Serialize for ElementId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ElementId::Vertex(v) => s.serialize_str(&format!("v{v}")),
            ElementId::Edge(e) => s.serialize_str(&format!("e{e}")),
        }
    }
}

/// Wire form of an [`ElementId`]; edges are spelled out by endpoints so that
/// certificates are readable without the base graph's edge ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ElementJson {
    #[serde(rename = "v")]
    V { id: usize },
    #[serde(rename = "e")]
    E { u: usize, v: usize },
}

impl ElementId {
    pub fn to_json(self, base: &Graph) -> ElementJson {
        match self {
            ElementId::Vertex(id) => ElementJson::V { id },
            ElementId::Edge(e) => {
                let (u, v) = base.endpoints(e);
                ElementJson::E { u, v }
            }
        }
    }

    /// Inverse of [`ElementId::to_json`]; `None` if the element does not exist in `base`.
    pub fn from_json(json: ElementJson, base: &Graph) -> Option<ElementId> {
        match json {
            ElementJson::V { id } => (id < base.n()).then_some(ElementId::Vertex(id)),
            ElementJson::E { u, v } => base.edge_index(u, v).map(ElementId::Edge),
        }
    }
}

/// The total graph T(G) on V(G) + E(G), with the element map back to `base`.
#[derive(Debug, Clone)]
pub struct TotalGraph {
    graph: Graph,
    base: Graph,
}

impl TotalGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn element_of(&self, index: usize) -> ElementId {
        if index < self.base.n() {
            ElementId::Vertex(index)
        } else {
            ElementId::Edge(index - self.base.n())
        }
    }

    pub fn index_of(&self, element: ElementId) -> usize {
        match element {
            ElementId::Vertex(v) => v,
            ElementId::Edge(e) => self.base.n() + e,
        }
    }

    pub fn contains(&self, element: ElementId) -> bool {
        match element {
            ElementId::Vertex(v) => v < self.base.n(),
            ElementId::Edge(e) => e < self.base.m(),
        }
    }

    /// JSON element map: entry `i` describes total-graph vertex `i`.
    pub fn element_map_json(&self) -> Vec<ElementJson> {
        (0..self.graph.n())
            .map(|i| self.element_of(i).to_json(&self.base))
            .collect()
    }
}

/// Builds T(G): v-vertices first, then e-vertices in edge-rank order.
/// Two total-graph vertices are adjacent iff the corresponding elements of G
/// are adjacent or incident.
pub fn total_graph(g: &Graph) -> TotalGraph {
    let n = g.n();
    let mut edges = Vec::new();
    for (rank, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, v)); // adjacency between v-vertices
        edges.push((u, n + rank)); // incidence
        edges.push((v, n + rank));
    }
    // edge adjacency: pairs of edges sharing an endpoint
    for v in 0..n {
        let inc = g.incident_edges(v);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                edges.push((n + inc[i], n + inc[j]));
            }
        }
    }
    TotalGraph {
        graph: Graph::from_edges(n + g.m(), edges).unwrap(),
        base: g.clone(),
    }
}

/// L(G): vertex `r` of the result is the edge of rank `r` in `g`.
pub fn line_graph(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for v in 0..g.n() {
        let inc = g.incident_edges(v);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                edges.push((inc[i], inc[j]));
            }
        }
    }
    Graph::from_edges(g.m(), edges).unwrap()
}

/// S(G): each edge of rank `r` is replaced by a path through the new middle
/// vertex `n + r`. The middle-vertex placement matches the total graph's
/// e-vertex block.
pub fn subdivision(g: &Graph) -> Graph {
    let n = g.n();
    let edges = g.edges().iter().enumerate().flat_map(|(rank, &(u, v))| {
        [(u, n + rank), (n + rank, v)]
    });
    Graph::from_edges(n + g.m(), edges).unwrap()
}

/// G^2: same vertices; u, v adjacent iff their distance in `g` is 1 or 2.
pub fn square(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for &v in g.neighbors(u) {
            if u < v {
                edges.push((u, v));
            }
            for &w in g.neighbors(v) {
                if u < w {
                    edges.push((u, w));
                }
            }
        }
    }
    Graph::from_edges(g.n(), edges).unwrap()
}

/// DOT rendering of a plain graph.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of a total graph with v-vertices drawn as circles and
/// e-vertices as boxes labelled by their base edge.
pub fn total_to_dot(t: &TotalGraph) -> String {
    let base = t.base();
    let mut out = String::from("graph {\n");
    for v in 0..base.n() {
        let _ = writeln!(out, "  {v} [shape=circle];");
    }
    for (rank, &(u, v)) in base.edges().iter().enumerate() {
        let id = base.n() + rank;
        let _ = writeln!(out, "  {id} [shape=box, label=\"({u},{v})\"];");
    }
    for &(u, v) in t.graph().edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
