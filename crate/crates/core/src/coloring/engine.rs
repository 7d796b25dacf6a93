//! Three-phase conflict repair: starting from a proper vertex coloring with
//! colors in 1..=5 and a proper edge coloring shifted into [3, Delta+3], the
//! conflicting edges (necessarily colored 3, 4, or 5) are recolored one by one
//! until the result is a total coloring with at most Delta+3 colors.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::exact::{exact_vertex_coloring, ColoringSearch, DEFAULT_BUDGET};
use crate::coloring::vizing::vizing_edge_coloring;
use crate::coloring::{
    is_proper_edge_coloring, is_proper_vertex_coloring, verify_total_coloring, ElementColoring,
    TotalColoringReport,
};
use crate::graph::{EdgeId, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("vertex coloring is not a proper coloring with colors in 1..=5")]
    BadVertexColoring,
    #[error("edge coloring is not proper")]
    ImproperEdgeColoring,
    #[error("edge coloring uses color {got}, above the allowed {max}")]
    EdgeColorTooLarge { got: u32, max: u32 },
    #[error("wrong number of colors: expected {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("phase must be 3, 4, or 5 (got {0})")]
    PhaseOutOfRange(u32),
    #[error("edge {0} is not a conflicting edge of this phase")]
    NotConflicting(EdgeId),
    #[error("phase invariants do not hold on input: {0:?}")]
    InvariantViolation(Vec<String>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeakTccError {
    #[error("graph is not 5-colorable")]
    NotFiveColorable,
    #[error("exact 5-coloring search exceeded its budget; supply an external coloring")]
    BudgetExceeded,
    #[error("external coloring rejected: {0}")]
    BadExternalColoring(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Kind of a trail edge: currently gamma-colored, or carrying a low color
/// while its original color equals the phase color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrailEdgeKind {
    Gamma,
    OriginalPhase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum TerminalRule {
    /// Last trail edge had the phase color as original color; it takes gamma.
    LastOriginalPhaseRecoloredGamma { color: u32 },
    /// Last trail edge was gamma-colored; it takes the lowest low color
    /// unseen at the trail's last vertex.
    LastGammaRecoloredFresh { color: u32 },
}

/// Audit record of one color-shift invocation: the maximal alternating trail
/// walked from the conflicting edge, and how its last edge was recolored.
/// `vertices[0]` is the conflict-free endpoint of the fixed edge;
/// `edge_kinds[j]` tags the trail edge `vertices[j+1] vertices[j+2]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrailRecord {
    pub phase: u32,
    pub gamma: u32,
    pub vertices: Vec<usize>,
    pub edge_kinds: Vec<TrailEdgeKind>,
    pub terminal_rule: TerminalRule,
}

/// Combines a proper <=5 vertex coloring with a proper <=Delta+1 edge
/// coloring, shifting edge colors up by 2 into [3, Delta+3]. The result may
/// contain conflicting edges; any conflict lands on a color in {3, 4, 5}.
pub fn initial_coloring(g: &Graph, vcol: &[u32], ecol: &[u32]) -> Result<ElementColoring, EngineError> {
    if vcol.len() != g.n() {
        return Err(EngineError::WrongLength {
            expected: g.n(),
            got: vcol.len(),
        });
    }
    if ecol.len() != g.m() {
        return Err(EngineError::WrongLength {
            expected: g.m(),
            got: ecol.len(),
        });
    }
    if !is_proper_vertex_coloring(g, vcol) || vcol.iter().any(|&c| c == 0 || c > 5) {
        return Err(EngineError::BadVertexColoring);
    }
    let max = g.max_degree() as u32 + 1;
    if let Some(&c) = ecol.iter().find(|&&c| c == 0 || c > max) {
        return Err(EngineError::EdgeColorTooLarge { got: c, max });
    }
    if !is_proper_edge_coloring(g, ecol) {
        return Err(EngineError::ImproperEdgeColoring);
    }
    let shifted: Vec<u32> = ecol.iter().map(|c| c + 2).collect();
    let coloring = ElementColoring::new(g, vcol.to_vec(), shifted).unwrap();
    debug_assert!((0..g.m())
        .filter(|&e| coloring.is_conflicting(g, e))
        .all(|e| (3..=5).contains(&coloring.edge_color(e))));
    Ok(coloring)
}

/// Vertices colored 5 that have a 3-edge, a 4-edge, and a 5-edge incident,
/// judged against the given edge colors.
pub fn saturated_five_vertices(g: &Graph, vertex_colors: &[u32], edge_colors: &[u32]) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| {
            vertex_colors[v] == 5 && {
                let mut present = [false; 3];
                for &e in g.incident_edges(v) {
                    if (3..=5).contains(&edge_colors[e]) {
                        present[(edge_colors[e] - 3) as usize] = true;
                    }
                }
                present.iter().all(|&p| p)
            }
        })
        .collect()
}

/// Recoloring a conflicting 5-edge needs a free color below 5 somewhere
/// near it, so no 5-vertex may carry incident 3-, 4-, and 5-edges all at
/// once. Each such vertex is recolored with the lowest color from
/// [6, Delta+3] it does not see. Edge colors are untouched, so the frozen
/// original edge colors stay valid and the conflict set can only shrink.
pub fn desaturate_five_vertices(g: &Graph, coloring: ElementColoring) -> Result<ElementColoring, EngineError> {
    let mut col = coloring;
    if !is_proper_vertex_coloring(g, col.vertex_colors()) {
        return Err(EngineError::BadVertexColoring);
    }
    if !is_proper_edge_coloring(g, col.edge_colors()) {
        return Err(EngineError::ImproperEdgeColoring);
    }
    let delta = g.max_degree() as u32;
    let conflicts_before: Vec<EdgeId> = (0..g.m()).filter(|&e| col.is_conflicting(g, e)).collect();
    loop {
        let offenders = saturated_five_vertices(g, col.vertex_colors(), col.edge_colors());
        let Some(&v) = offenders.first() else { break };
        // neighbors of v cannot carry high colors here (5-vertices form an
        // independent set), but exclude them anyway so any proper input
        // stays proper
        let c = (6..=delta + 3)
            .find(|&c| {
                !col.sees(g, v, c) && g.neighbors(v).iter().all(|&w| col.vertex_color(w) != c)
            })
            .expect("a 5-vertex with 3-, 4-, and 5-edges sees at most Delta-3 of the Delta-2 high colors");
        col.set_vertex_color(v, c);
    }
    debug_assert!(is_proper_vertex_coloring(g, col.vertex_colors()));
    debug_assert!((0..g.m())
        .filter(|&e| col.is_conflicting(g, e))
        .all(|e| conflicts_before.contains(&e)));
    Ok(col)
}

/// Checks the phase conditions on a coloring, including properness of the
/// frozen original edge coloring and the absence of saturated 5-vertices in
/// it. Returns a description of every violated condition.
pub fn check_phase_invariants(g: &Graph, col: &ElementColoring, phase: u32) -> Vec<String> {
    let mut out = Vec::new();
    if !(3..=5).contains(&phase) {
        return vec![format!("phase {phase} out of range")];
    }
    if !is_proper_vertex_coloring(g, col.vertex_colors()) {
        out.push("vertex coloring is not proper".into());
    }
    if !is_proper_edge_coloring(g, col.edge_colors()) {
        out.push("edge coloring is not proper".into());
    }
    if !is_proper_edge_coloring(g, col.original_edge_colors()) {
        out.push("original edge coloring is not proper".into());
    }
    for e in 0..g.m() {
        let c = col.edge_color(e);
        let orig = col.original_edge_color(e);
        let low = c < phase;
        if low && col.is_conflicting(g, e) {
            out.push(format!("below-phase edge {e} is conflicting"));
        }
        if low && !(3..=phase).contains(&orig) {
            out.push(format!("below-phase edge {e} has original color {orig} outside 3..=phase"));
        }
        if low && orig == phase {
            let (u, v) = g.endpoints(e);
            if col.vertex_color(u) != phase && col.vertex_color(v) != phase {
                out.push(format!("below-phase edge {e} with original color {phase} has no {phase}-colored endpoint"));
            }
        }
        if c == phase && col.is_conflicting(g, e) && orig != phase {
            out.push(format!("conflicting {phase}-edge {e} has original color {orig}, not {phase}"));
        }
    }
    if !saturated_five_vertices(g, col.vertex_colors(), col.original_edge_colors()).is_empty() {
        out.push("a 5-vertex carries original colors 3, 4, and 5 on its edges".into());
    }
    out
}

/// Recolors one conflicting phase-edge so it stops conflicting, preserving
/// the phase conditions. Validates the conditions on entry. Returns the
/// trail record when the color-shift strategy ran (no record on the
/// two-endpoint fast path).
pub fn fix_conflicting_edge(
    g: &Graph,
    col: &mut ElementColoring,
    phase: u32,
    e: EdgeId,
) -> Result<Option<TrailRecord>, EngineError> {
    if !(3..=5).contains(&phase) {
        return Err(EngineError::PhaseOutOfRange(phase));
    }
    let problems = check_phase_invariants(g, col, phase);
    if !problems.is_empty() {
        return Err(EngineError::InvariantViolation(problems));
    }
    let mut state = PhaseState::build(g, col, phase);
    state.fix(col, e)
}

struct PhaseState<'a> {
    g: &'a Graph,
    phase: u32,
    /// at[v][c-1] = the edge currently colored c at v, unique by properness.
    at: Vec<Vec<Option<EdgeId>>>,
    /// Per vertex, the incident edge whose original color is the phase color;
    /// unique because the original coloring is proper.
    orig_phase_edge: Vec<Option<EdgeId>>,
}

impl<'a> PhaseState<'a> {
    fn build(g: &'a Graph, col: &ElementColoring, phase: u32) -> Self {
        let maxc = col
            .vertex_colors()
            .iter()
            .chain(col.edge_colors())
            .copied()
            .max()
            .unwrap_or(1) as usize;
        let mut at = vec![vec![None; maxc]; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let slot = (col.edge_color(e) - 1) as usize;
            debug_assert!(at[u][slot].is_none() && at[v][slot].is_none());
            at[u][slot] = Some(e);
            at[v][slot] = Some(e);
        }
        let mut orig_phase_edge = vec![None; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if col.original_edge_color(e) == phase {
                debug_assert!(orig_phase_edge[u].is_none() && orig_phase_edge[v].is_none());
                orig_phase_edge[u] = Some(e);
                orig_phase_edge[v] = Some(e);
            }
        }
        PhaseState {
            g,
            phase,
            at,
            orig_phase_edge,
        }
    }

    fn sees(&self, col: &ElementColoring, v: usize, c: u32) -> bool {
        col.vertex_color(v) == c
            || self.at[v]
                .get((c - 1) as usize)
                .is_some_and(|slot| slot.is_some())
    }

    fn apply(&mut self, col: &mut ElementColoring, updates: &[(EdgeId, u32)]) {
        for &(e, _) in updates {
            let (u, v) = self.g.endpoints(e);
            let slot = (col.edge_color(e) - 1) as usize;
            self.at[u][slot] = None;
            self.at[v][slot] = None;
        }
        for &(e, c) in updates {
            let (u, v) = self.g.endpoints(e);
            let slot = (c - 1) as usize;
            debug_assert!(self.at[u][slot].is_none() && self.at[v][slot].is_none());
            self.at[u][slot] = Some(e);
            self.at[v][slot] = Some(e);
            col.set_edge_color(e, c);
        }
    }

    fn other_endpoint(&self, e: EdgeId, v: usize) -> usize {
        let (a, b) = self.g.endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    }

    fn fix(&mut self, col: &mut ElementColoring, e: EdgeId) -> Result<Option<TrailRecord>, EngineError> {
        let i = self.phase;
        if col.edge_color(e) != i {
            return Err(EngineError::NotConflicting(e));
        }
        let (a, b) = self.g.endpoints(e);
        let (v0, v1) = if col.vertex_color(b) == i {
            (a, b)
        } else if col.vertex_color(a) == i {
            (b, a)
        } else {
            return Err(EngineError::NotConflicting(e));
        };

        // fast path: a color below the phase unseen at both endpoints
        if let Some(c) = (1..i).find(|&c| !self.sees(col, v0, c) && !self.sees(col, v1, c)) {
            self.apply(col, &[(e, c)]);
            return Ok(None);
        }

        let gamma = (1..i)
            .find(|&c| !self.sees(col, v0, c))
            .expect("v0 sees at most i-2 of the i-1 low colors");
        let first = self.at[v1][(gamma - 1) as usize]
            .expect("gamma is seen at v1, and not through its vertex color");

        // walk the maximal alternating trail; the continuation at each step is
        // unique because both colorings are proper
        let mut vertices = vec![v0, v1];
        let mut kinds = Vec::new();
        let mut trail_edges = Vec::new();
        let mut cur = self.other_endpoint(first, v1);
        trail_edges.push(first);
        kinds.push(TrailEdgeKind::Gamma);
        vertices.push(cur);
        loop {
            let incoming = *trail_edges.last().unwrap();
            let next = match kinds.last().unwrap() {
                TrailEdgeKind::Gamma => self.orig_phase_edge[cur].and_then(|f| {
                    let c = col.edge_color(f);
                    (f != incoming && c < i && c != gamma).then_some((f, TrailEdgeKind::OriginalPhase))
                }),
                TrailEdgeKind::OriginalPhase => self.at[cur][(gamma - 1) as usize].map(|f| {
                    debug_assert_ne!(f, incoming);
                    (f, TrailEdgeKind::Gamma)
                }),
            };
            match next {
                Some((f, kind)) => {
                    cur = self.other_endpoint(f, cur);
                    trail_edges.push(f);
                    kinds.push(kind);
                    vertices.push(cur);
                    assert!(vertices.len() <= self.g.n() + 1, "trail longer than the vertex set");
                }
                None => break,
            }
        }

        // proof-step invariants: the walk is a path and odd trail positions
        // carry the phase color
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), vertices.len(), "trail revisited a vertex");
        for t in (1..vertices.len()).step_by(2) {
            assert_eq!(col.vertex_color(vertices[t]), i, "odd trail vertex not phase-colored");
        }

        let vk = *vertices.last().unwrap();
        let (last_color, terminal_rule) = match kinds.last().unwrap() {
            TrailEdgeKind::OriginalPhase => {
                debug_assert!(!self.sees(col, vk, gamma));
                (gamma, TerminalRule::LastOriginalPhaseRecoloredGamma { color: gamma })
            }
            TrailEdgeKind::Gamma => {
                let c = (1..i)
                    .find(|&c| !self.sees(col, vk, c))
                    .expect("trail maximality leaves a low color unseen at the last vertex");
                (c, TerminalRule::LastGammaRecoloredFresh { color: c })
            }
        };

        // shift every edge's color one step backward along the walk
        let mut all = Vec::with_capacity(trail_edges.len() + 1);
        all.push(e);
        all.extend_from_slice(&trail_edges);
        let mut updates: Vec<(EdgeId, u32)> = (0..all.len() - 1)
            .map(|j| (all[j], col.edge_color(all[j + 1])))
            .collect();
        updates.push((*all.last().unwrap(), last_color));
        self.apply(col, &updates);

        Ok(Some(TrailRecord {
            phase: i,
            gamma,
            vertices,
            edge_kinds: kinds,
            terminal_rule,
        }))
    }
}

/// Runs phases 3, 4, 5 on a coloring produced by [`desaturate_five_vertices`],
/// fixing conflicting phase-edges in edge-rank order. With
/// `check_invariants`, the full condition checker runs after every fix.
pub fn run_phases(
    g: &Graph,
    col: &mut ElementColoring,
    check_invariants: bool,
) -> Result<(Vec<TrailRecord>, usize), EngineError> {
    let initial_conflicts = (0..g.m()).filter(|&e| col.is_conflicting(g, e)).count();
    let mut trails = Vec::new();
    let mut fixes = 0usize;
    for phase in [3u32, 4, 5] {
        let problems = check_phase_invariants(g, col, phase);
        if !problems.is_empty() {
            return Err(EngineError::InvariantViolation(problems));
        }
        let pending: Vec<EdgeId> = (0..g.m())
            .filter(|&e| col.edge_color(e) == phase && col.is_conflicting(g, e))
            .collect();
        let mut state = PhaseState::build(g, col, phase);
        for e in pending {
            let conflicts_before = check_invariants
                .then(|| (0..g.m()).filter(|&f| col.is_conflicting(g, f)).count());
            if let Some(record) = state.fix(col, e)? {
                trails.push(record);
            }
            fixes += 1;
            assert!(fixes <= initial_conflicts, "conflict count failed to decrease");
            if check_invariants {
                let problems = check_phase_invariants(g, col, phase);
                assert!(problems.is_empty(), "fix broke phase conditions: {problems:?}");
                assert!(!col.is_conflicting(g, e));
                assert_eq!(
                    (0..g.m()).filter(|&f| col.is_conflicting(g, f)).count(),
                    conflicts_before.unwrap() - 1,
                    "fix must remove exactly the targeted conflict"
                );
            }
        }
        assert!(
            (0..g.m()).all(|e| col.edge_color(e) != phase || !col.is_conflicting(g, e)),
            "conflicting {phase}-edges remain after the phase"
        );
        assert!(
            saturated_five_vertices(g, col.vertex_colors(), col.original_edge_colors()).is_empty(),
            "a 5-vertex became saturated with low original colors"
        );
    }
    debug_assert!((0..g.m()).all(|e| !col.is_conflicting(g, e)));
    Ok((trails, fixes))
}

#[derive(Debug, Clone)]
pub struct WeakTccOptions {
    /// Proper vertex coloring of the whole input with colors in 1..=5,
    /// bypassing the exact search.
    pub five_coloring: Option<Vec<u32>>,
    /// Decision budget for the exact 5-coloring search.
    pub budget: u64,
    /// Re-verify the phase conditions after every fix.
    pub check_invariants: bool,
}

impl Default for WeakTccOptions {
    fn default() -> Self {
        WeakTccOptions {
            five_coloring: None,
            budget: DEFAULT_BUDGET,
            check_invariants: false,
        }
    }
}

#[derive(Debug)]
pub struct WeakTccOutcome {
    pub coloring: ElementColoring,
    pub report: TotalColoringReport,
    pub trails: Vec<TrailRecord>,
    pub fix_invocations: usize,
}

/// Total-colors a 5-colorable graph with at most Delta+3 colors.
/// Components are processed independently and merged.
pub fn weak_tcc_total_coloring(g: &Graph, opts: &WeakTccOptions) -> Result<WeakTccOutcome, WeakTccError> {
    if let Some(vcol) = &opts.five_coloring {
        if vcol.len() != g.n() {
            return Err(WeakTccError::BadExternalColoring(format!(
                "expected {} colors, got {}",
                g.n(),
                vcol.len()
            )));
        }
        if vcol.iter().any(|&c| c == 0 || c > 5) {
            return Err(WeakTccError::BadExternalColoring("colors must lie in 1..=5".into()));
        }
        if !is_proper_vertex_coloring(g, vcol) {
            return Err(WeakTccError::BadExternalColoring("coloring is not proper".into()));
        }
    }

    let mut vertex_colors = vec![0u32; g.n()];
    let mut edge_colors = vec![0u32; g.m()];
    let mut original_colors = vec![0u32; g.m()];
    let mut trails = Vec::new();
    let mut fix_invocations = 0;

    for comp in g.connected_components() {
        let (sub, old_of_new) = g.induced_subgraph(&comp);
        let vcol = match &opts.five_coloring {
            Some(vcol) => old_of_new.iter().map(|&old| vcol[old]).collect(),
            None => match exact_vertex_coloring(&sub, 5, opts.budget) {
                ColoringSearch::Colored(c) => c,
                ColoringSearch::Impossible => return Err(WeakTccError::NotFiveColorable),
                ColoringSearch::BudgetExceeded => return Err(WeakTccError::BudgetExceeded),
            },
        };
        let (col, mut comp_trails, fixes) = color_component(&sub, vcol, opts.check_invariants)?;
        for (new, &old) in old_of_new.iter().enumerate() {
            vertex_colors[old] = col.vertex_color(new);
        }
        for (new_e, &(a, b)) in sub.edges().iter().enumerate() {
            let old_e = g.edge_index(old_of_new[a], old_of_new[b]).unwrap();
            edge_colors[old_e] = col.edge_color(new_e);
            original_colors[old_e] = col.original_edge_color(new_e);
        }
        for t in &mut comp_trails {
            for v in &mut t.vertices {
                *v = old_of_new[*v];
            }
        }
        trails.append(&mut comp_trails);
        fix_invocations += fixes;
    }

    let coloring = ElementColoring::with_original(g, vertex_colors, edge_colors, original_colors)
        .expect("all components colored");
    let report = verify_total_coloring(g, &coloring).expect("coloring is complete");
    assert!(report.valid, "repair phases ended with conflicts: {:?}", report.violations);
    assert!(
        g.n() == 0 || report.max_color <= g.max_degree() as u32 + 3,
        "coloring exceeded Delta+3"
    );
    Ok(WeakTccOutcome {
        coloring,
        report,
        trails,
        fix_invocations,
    })
}

/// Colors one connected component given a proper <=5-coloring of it.
fn color_component(
    sub: &Graph,
    vcol: Vec<u32>,
    check_invariants: bool,
) -> Result<(ElementColoring, Vec<TrailRecord>, usize), WeakTccError> {
    if sub.max_degree() <= 1 {
        // K1 or K2: color directly, staying within Delta+3
        let vertex = if sub.n() == 1 { vec![1] } else { vec![1, 2] };
        let edges = vec![3u32; sub.m()];
        let col = ElementColoring::new(sub, vertex, edges).unwrap();
        return Ok((col, Vec::new(), 0));
    }
    let ecol = vizing_edge_coloring(sub);
    let alpha = initial_coloring(sub, &vcol, &ecol)?;
    let mut pi = desaturate_five_vertices(sub, alpha)?;
    let (trails, fixes) = run_phases(sub, &mut pi, check_invariants)?;
    Ok((pi, trails, fixes))
}
