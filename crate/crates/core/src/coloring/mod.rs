//! Vertex, edge, and total colorings.

pub mod engine;
pub mod exact;
pub mod vizing;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derived::ElementId;
use crate::graph::{EdgeId, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("expected {expected} {what} colors, got {got}")]
    WrongLength {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("uncolored element (color 0 is reserved)")]
    Uncolored,
    #[error("edge list does not match the graph: {0}")]
    EdgeMismatch(String),
}

/// Colors of all elements of a graph. Vertex colors are indexed by vertex,
/// edge colors by edge rank. `original_edge_color` is the frozen edge part of
/// the coloring produced before conflict repair begins; the repair phases
/// consult it but never change it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementColoring {
    vertex_color: Vec<u32>,
    edge_color: Vec<u32>,
    original_edge_color: Vec<u32>,
}

impl ElementColoring {
    /// A coloring with `original_edge_color` frozen to the given edge colors.
    /// Validates shape only; properness is the verifier's job.
    pub fn new(g: &Graph, vertex_color: Vec<u32>, edge_color: Vec<u32>) -> Result<Self, ColoringError> {
        let original = edge_color.clone();
        Self::with_original(g, vertex_color, edge_color, original)
    }

    pub fn with_original(
        g: &Graph,
        vertex_color: Vec<u32>,
        edge_color: Vec<u32>,
        original_edge_color: Vec<u32>,
    ) -> Result<Self, ColoringError> {
        if vertex_color.len() != g.n() {
            return Err(ColoringError::WrongLength {
                what: "vertex",
                expected: g.n(),
                got: vertex_color.len(),
            });
        }
        if edge_color.len() != g.m() {
            return Err(ColoringError::WrongLength {
                what: "edge",
                expected: g.m(),
                got: edge_color.len(),
            });
        }
        if original_edge_color.len() != g.m() {
            return Err(ColoringError::WrongLength {
                what: "original edge",
                expected: g.m(),
                got: original_edge_color.len(),
            });
        }
        if vertex_color
            .iter()
            .chain(&edge_color)
            .chain(&original_edge_color)
            .any(|&c| c == 0)
        {
            return Err(ColoringError::Uncolored);
        }
        Ok(ElementColoring {
            vertex_color,
            edge_color,
            original_edge_color,
        })
    }

    pub fn vertex_color(&self, v: usize) -> u32 {
        self.vertex_color[v]
    }

    pub fn edge_color(&self, e: EdgeId) -> u32 {
        self.edge_color[e]
    }

    pub fn original_edge_color(&self, e: EdgeId) -> u32 {
        self.original_edge_color[e]
    }

    pub fn vertex_colors(&self) -> &[u32] {
        &self.vertex_color
    }

    pub fn edge_colors(&self) -> &[u32] {
        &self.edge_color
    }

    pub fn original_edge_colors(&self) -> &[u32] {
        &self.original_edge_color
    }

    pub(crate) fn set_vertex_color(&mut self, v: usize, c: u32) {
        self.vertex_color[v] = c;
    }

    pub(crate) fn set_edge_color(&mut self, e: EdgeId, c: u32) {
        self.edge_color[e] = c;
    }

    /// A vertex sees a color if it carries it or has an incident edge carrying it.
    pub fn sees(&self, g: &Graph, v: usize, c: u32) -> bool {
        self.vertex_color[v] == c || g.incident_edges(v).iter().any(|&e| self.edge_color[e] == c)
    }

    /// An edge conflicts when it shares its color with one of its endpoints.
    pub fn is_conflicting(&self, g: &Graph, e: EdgeId) -> bool {
        let (u, v) = g.endpoints(e);
        let c = self.edge_color[e];
        c == self.vertex_color[u] || c == self.vertex_color[v]
    }

    pub fn to_json(&self, g: &Graph) -> ColoringJson {
        let edge_entry = |colors: &[u32]| {
            g.edges()
                .iter()
                .zip(colors)
                .map(|(&(u, v), &color)| EdgeColorJson { u, v, color })
                .collect()
        };
        ColoringJson {
            vertex_colors: self.vertex_color.clone(),
            edge_colors: edge_entry(&self.edge_color),
            original_edge_colors: edge_entry(&self.original_edge_color),
        }
    }

    pub fn from_json(json: &ColoringJson, g: &Graph) -> Result<Self, ColoringError> {
        let read_edges = |entries: &[EdgeColorJson]| -> Result<Vec<u32>, ColoringError> {
            if entries.len() != g.m() {
                return Err(ColoringError::WrongLength {
                    what: "edge",
                    expected: g.m(),
                    got: entries.len(),
                });
            }
            let mut colors = vec![0u32; g.m()];
            for entry in entries {
                let e = g.edge_index(entry.u, entry.v).ok_or_else(|| {
                    ColoringError::EdgeMismatch(format!("({}, {}) is not an edge", entry.u, entry.v))
                })?;
                if colors[e] != 0 {
                    return Err(ColoringError::EdgeMismatch(format!(
                        "duplicate entry for edge ({}, {})",
                        entry.u, entry.v
                    )));
                }
                colors[e] = entry.color;
            }
            Ok(colors)
        };
        let edge_color = read_edges(&json.edge_colors)?;
        let original = if json.original_edge_colors.is_empty() {
            edge_color.clone()
        } else {
            read_edges(&json.original_edge_colors)?
        };
        Self::with_original(g, json.vertex_colors.clone(), edge_color, original)
    }
}

/// Wire format for element colorings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColoringJson {
    pub vertex_colors: Vec<u32>,
    pub edge_colors: Vec<EdgeColorJson>,
    #[serde(default)]
    pub original_edge_colors: Vec<EdgeColorJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeColorJson {
    pub u: usize,
    pub v: usize,
    pub color: u32,
}

/// Outcome of checking a total coloring.
#[derive(Debug, Clone, Serialize)]
pub struct TotalColoringReport {
    pub valid: bool,
    /// Number of distinct colors appearing on elements.
    pub colors_used: u32,
    /// Largest color value appearing on any element.
    pub max_color: u32,
    pub violations: Vec<(ElementId, ElementId)>,
}

impl TotalColoringReport {
    fn is_consistent(&self) -> bool {
        self.valid == self.violations.is_empty()
    }
}

/// Lists every adjacent or incident pair of elements sharing a color.
pub fn verify_total_coloring(g: &Graph, c: &ElementColoring) -> Result<TotalColoringReport, ColoringError> {
    if c.vertex_color.len() != g.n() || c.edge_color.len() != g.m() {
        return Err(ColoringError::WrongLength {
            what: "element",
            expected: g.element_count(),
            got: c.vertex_color.len() + c.edge_color.len(),
        });
    }
    if c.vertex_color.iter().chain(&c.edge_color).any(|&x| x == 0) {
        return Err(ColoringError::Uncolored);
    }
    let mut violations = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if c.vertex_color[u] == c.vertex_color[v] {
            violations.push((ElementId::Vertex(u), ElementId::Vertex(v)));
        }
        if c.edge_color[e] == c.vertex_color[u] {
            violations.push((ElementId::Vertex(u), ElementId::Edge(e)));
        }
        if c.edge_color[e] == c.vertex_color[v] {
            violations.push((ElementId::Vertex(v), ElementId::Edge(e)));
        }
    }
    for v in 0..g.n() {
        let inc = g.incident_edges(v);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                if c.edge_color[inc[i]] == c.edge_color[inc[j]] {
                    violations.push((ElementId::Edge(inc[i]), ElementId::Edge(inc[j])));
                }
            }
        }
    }
    let mut distinct: Vec<u32> = c.vertex_color.iter().chain(&c.edge_color).copied().collect();
    distinct.sort_unstable();
    distinct.dedup();
    let report = TotalColoringReport {
        valid: violations.is_empty(),
        colors_used: distinct.len() as u32,
        max_color: distinct.last().copied().unwrap_or(0),
        violations,
    };
    debug_assert!(report.is_consistent());
    Ok(report)
}

/// True iff the coloring restricted to vertices is proper.
pub fn is_proper_vertex_coloring(g: &Graph, colors: &[u32]) -> bool {
    colors.len() == g.n() && g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

/// True iff the coloring restricted to edges is proper (no two adjacent edges share a color).
pub fn is_proper_edge_coloring(g: &Graph, colors: &[u32]) -> bool {
    if colors.len() != g.m() {
        return false;
    }
    (0..g.n()).all(|v| {
        let inc = g.incident_edges(v);
        inc.iter()
            .enumerate()
            .all(|(i, &e)| inc[i + 1..].iter().all(|&f| colors[e] != colors[f]))
    })
}
