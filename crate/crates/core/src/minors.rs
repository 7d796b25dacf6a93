//! Clique-minor certificates in total graphs: branch-set verification,
//! constructions from total-criticality and from connectivity, and
//! edge-disjoint spanning-tree packing with infeasibility witnesses.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::{find_non_separating_neighbor, vertex_connectivity, ConnectivityError};
use crate::derived::{total_graph, ElementId, ElementJson, TotalGraph};
use crate::graph::{EdgeId, Graph};
use crate::oracle::{brute_force_total_chromatic, OracleError};
use crate::par;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinorError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("k must be at least 1")]
    InvalidK,
    #[error("vertex connectivity {kappa} is below the required {required}")]
    ConnectivityTooLow { kappa: usize, required: usize },
    #[error("minimum degree {found} is below the required {required}")]
    MinDegreeTooSmall { found: usize, required: usize },
    #[error("maximum degree {found} is below 6, inconsistent with strict criticality")]
    MaxDegreeTooSmall { found: usize },
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("total chromatic number {chi} is below the target {t}")]
    NotReachingTarget { chi: u32, t: u32 },
    #[error("constructed certificate failed verification: {0:?}")]
    VerificationFailed(Vec<MinorFailure>),
    #[error("element out of range: {0:?}")]
    ElementOutOfRange(ElementId),
    #[error("unknown element in certificate: {0}")]
    UnknownElement(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl From<ConnectivityError> for MinorError {
    fn from(e: ConnectivityError) -> Self {
        match e {
            ConnectivityError::NotTwoConnected => MinorError::NotTwoConnected,
            ConnectivityError::VertexOutOfRange { v, .. } => {
                MinorError::ElementOutOfRange(ElementId::Vertex(v))
            }
        }
    }
}

/// A family of branch sets over a total graph witnessing a clique minor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorCertificate {
    pub branch_sets: Vec<Vec<ElementId>>,
    pub order: usize,
    pub provenance: String,
}

/// Wire form: `{"order":., "provenance":., "branch_sets":[[element,..],..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub order: usize,
    pub provenance: String,
    pub branch_sets: Vec<Vec<ElementJson>>,
}

impl MinorCertificate {
    pub fn to_json(&self, base: &Graph) -> CertificateJson {
        CertificateJson {
            order: self.order,
            provenance: self.provenance.clone(),
            branch_sets: self
                .branch_sets
                .iter()
                .map(|set| set.iter().map(|&el| el.to_json(base)).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &CertificateJson, base: &Graph) -> Result<MinorCertificate, MinorError> {
        let mut branch_sets = Vec::with_capacity(json.branch_sets.len());
        for set in &json.branch_sets {
            let mut parsed = Vec::with_capacity(set.len());
            for &el in set {
                parsed.push(ElementId::from_json(el, base).ok_or_else(|| {
                    MinorError::UnknownElement(match el {
                        ElementJson::V { id } => format!("vertex {id}"),
                        ElementJson::E { u, v } => format!("edge ({u}, {v})"),
                    })
                })?);
            }
            branch_sets.push(parsed);
        }
        Ok(MinorCertificate {
            branch_sets,
            order: json.order,
            provenance: json.provenance.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MinorFailure {
    OrderMismatch { claimed: usize, actual: usize },
    EmptyBranchSet(usize),
    Overlap { element: ElementId, first: usize, second: usize },
    Disconnected(usize),
    MissingAdjacency(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorReport {
    pub ok: bool,
    pub failures: Vec<MinorFailure>,
}

/// Checks a clique-minor certificate: branch sets non-empty, pairwise
/// disjoint, each inducing a connected subgraph of the total graph, every
/// pair joined by an edge, and the claimed order matching.
pub fn verify_minor_certificate(t: &TotalGraph, cert: &MinorCertificate) -> Result<MinorReport, MinorError> {
    for set in &cert.branch_sets {
        for &el in set {
            if !t.contains(el) {
                return Err(MinorError::ElementOutOfRange(el));
            }
        }
    }
    let mut failures = Vec::new();
    let actual = cert.branch_sets.len();
    if cert.order != actual {
        failures.push(MinorFailure::OrderMismatch {
            claimed: cert.order,
            actual,
        });
    }
    // membership labels; duplicates within one set collapse
    let mut label: Vec<Option<usize>> = vec![None; t.n()];
    for (s, set) in cert.branch_sets.iter().enumerate() {
        if set.is_empty() {
            failures.push(MinorFailure::EmptyBranchSet(s));
        }
        for &el in set {
            let idx = t.index_of(el);
            match label[idx] {
                Some(first) if first != s => failures.push(MinorFailure::Overlap {
                    element: el,
                    first,
                    second: s,
                }),
                _ => label[idx] = Some(s),
            }
        }
    }
    // connectivity of each set by BFS within the set
    for (s, set) in cert.branch_sets.iter().enumerate() {
        let members: Vec<usize> = {
            let mut m: Vec<usize> = set.iter().map(|&el| t.index_of(el)).collect();
            m.sort_unstable();
            m.dedup();
            m
        };
        if members.is_empty() {
            continue;
        }
        let mut seen = vec![false; t.n()];
        let mut queue = VecDeque::from([members[0]]);
        seen[members[0]] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in t.graph().neighbors(x) {
                if !seen[y] && label[y] == Some(s) && members.binary_search(&y).is_ok() {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached < members.len() {
            failures.push(MinorFailure::Disconnected(s));
        }
    }
    // pairwise adjacency from one sweep over the total graph's edges
    let k = cert.branch_sets.len();
    let mut joined = vec![false; k * k];
    for &(x, y) in t.graph().edges() {
        if let (Some(a), Some(b)) = (label[x], label[y]) {
            if a != b {
                joined[a * k + b] = true;
                joined[b * k + a] = true;
            }
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            if !joined[a * k + b] {
                failures.push(MinorFailure::MissingAdjacency(a, b));
            }
        }
    }
    Ok(MinorReport {
        ok: failures.is_empty(),
        failures,
    })
}

// ---------------------------------------------------------------------------
// Edge-disjoint spanning trees (matroid union over k graphic matroids)
// ---------------------------------------------------------------------------

/// Pairwise edge-disjoint spanning trees, one edge-rank list per tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePacking {
    pub trees: Vec<Vec<EdgeId>>,
}

/// A vertex partition violating the packing count: `cross_edges < required`
/// where `required = k (|P| - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    pub classes: Vec<Vec<usize>>,
    pub cross_edges: usize,
    pub required: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PackingResult {
    Packed(TreePacking),
    Infeasible(PartitionWitness),
}

/// Finds `k` edge-disjoint spanning trees, or a partition of the vertex set
/// with fewer than `k (|P| - 1)` cross-edges proving none exist.
///
/// Incremental matroid-union augmentation: each edge is inserted into the
/// union of `k` forests via breadth-first exchange search. When the final
/// forests are not all spanning, the labeled sets of the failed insertions
/// merge into the violating partition.
pub fn edge_disjoint_spanning_trees(g: &Graph, k: usize) -> Result<PackingResult, MinorError> {
    if k == 0 {
        return Err(MinorError::InvalidK);
    }
    if !g.is_connected() {
        return Err(MinorError::Disconnected);
    }
    let mut union = ForestUnion::new(g, k);
    let mut failed = Vec::new();
    for e in 0..g.m() {
        if !union.try_insert(e, true) {
            failed.push(e);
        }
    }
    let spanning = g.n().saturating_sub(1);
    if union.forests.iter().all(|f| f.edge_count == spanning) {
        let mut trees = vec![Vec::new(); k];
        for e in 0..g.m() {
            if let Some(i) = union.which[e] {
                trees[i].push(e);
            }
        }
        debug_assert!(trees.iter().all(|t| t.len() == spanning));
        return Ok(PackingResult::Packed(TreePacking { trees }));
    }

    // violating partition: merge the vertex sets spanned by the labeled
    // edges of every failed insertion
    let mut dsu = Dsu::new(g.n());
    for &e0 in &failed {
        let labeled = union.label_set(e0);
        for (e, &lab) in labeled.iter().enumerate() {
            if lab {
                let (u, v) = g.endpoints(e);
                dsu.union(u, v);
            }
        }
    }
    let mut classes_by_root: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for v in 0..g.n() {
        classes_by_root[dsu.find(v)].push(v);
    }
    let classes: Vec<Vec<usize>> = classes_by_root.into_iter().filter(|c| !c.is_empty()).collect();
    let cross_edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| dsu.find(u) != dsu.find(v))
        .count();
    let required = k * (classes.len() - 1);
    assert!(
        cross_edges < required,
        "matroid-union witness must violate the packing count"
    );
    Ok(PackingResult::Infeasible(PartitionWitness {
        classes,
        cross_edges,
        required,
    }))
}

struct Forest {
    adj: Vec<Vec<(usize, EdgeId)>>,
    edge_count: usize,
}

struct ForestUnion<'a> {
    g: &'a Graph,
    forests: Vec<Forest>,
    which: Vec<Option<usize>>,
}

impl<'a> ForestUnion<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        ForestUnion {
            g,
            forests: (0..k)
                .map(|_| Forest {
                    adj: vec![Vec::new(); g.n()],
                    edge_count: 0,
                })
                .collect(),
            which: vec![None; g.m()],
        }
    }

    /// Path of edges between `from` and `to` inside forest `i`, if connected.
    fn forest_path(&self, i: usize, from: usize, to: usize) -> Option<Vec<EdgeId>> {
        if from == to {
            return Some(Vec::new());
        }
        let mut parent_edge: Vec<Option<(usize, EdgeId)>> = vec![None; self.g.n()];
        let mut seen = vec![false; self.g.n()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in &self.forests[i].adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent_edge[v] = Some((u, e));
                    if v == to {
                        let mut path = Vec::new();
                        let mut cur = to;
                        while cur != from {
                            let (p, pe) = parent_edge[cur].unwrap();
                            path.push(pe);
                            cur = p;
                        }
                        return Some(path);
                    }
                    queue.push_back(v);
                }
            }
        }
        None
    }

    fn add(&mut self, i: usize, e: EdgeId) {
        let (u, v) = self.g.endpoints(e);
        debug_assert!(self.forest_path(i, u, v).is_none(), "insertion would close a cycle");
        self.forests[i].adj[u].push((v, e));
        self.forests[i].adj[v].push((u, e));
        self.forests[i].edge_count += 1;
        self.which[e] = Some(i);
    }

    fn remove(&mut self, i: usize, e: EdgeId) {
        let (u, v) = self.g.endpoints(e);
        self.forests[i].adj[u].retain(|&(_, f)| f != e);
        self.forests[i].adj[v].retain(|&(_, f)| f != e);
        self.forests[i].edge_count -= 1;
        self.which[e] = None;
    }

    /// Breadth-first exchange search from `e0`. With `augment` set, applies
    /// the exchange chain on success. Returns whether insertion succeeded.
    fn try_insert(&mut self, e0: EdgeId, augment: bool) -> bool {
        let mut labeled = vec![false; self.g.m()];
        let mut parent: Vec<Option<EdgeId>> = vec![None; self.g.m()];
        labeled[e0] = true;
        let mut queue = VecDeque::from([e0]);
        while let Some(x) = queue.pop_front() {
            let (u, v) = self.g.endpoints(x);
            for i in 0..self.forests.len() {
                if self.which[x] == Some(i) {
                    continue;
                }
                match self.forest_path(i, u, v) {
                    Some(cycle) => {
                        for f in cycle {
                            if !labeled[f] {
                                labeled[f] = true;
                                parent[f] = Some(x);
                                queue.push_back(f);
                            }
                        }
                    }
                    None => {
                        if augment {
                            self.apply_chain(x, i, &parent);
                        }
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Moves `x` into `target`; each displaced edge's parent takes its place.
    fn apply_chain(&mut self, x: EdgeId, target: usize, parent: &[Option<EdgeId>]) {
        let mut cur = x;
        let mut tgt = target;
        loop {
            let old = self.which[cur];
            if let Some(f) = old {
                self.remove(f, cur);
            }
            self.add(tgt, cur);
            match old {
                Some(f) => {
                    cur = parent[cur].expect("every displaced forest edge was labeled from a parent");
                    tgt = f;
                }
                None => break,
            }
        }
    }

    /// Labeled set of a failed insertion (including `e0` itself), against the
    /// final forests. Panics if the insertion would actually succeed.
    fn label_set(&mut self, e0: EdgeId) -> Vec<bool> {
        let mut labeled = vec![false; self.g.m()];
        let mut queue = VecDeque::from([e0]);
        labeled[e0] = true;
        while let Some(x) = queue.pop_front() {
            let (u, v) = self.g.endpoints(x);
            for i in 0..self.forests.len() {
                if self.which[x] == Some(i) {
                    continue;
                }
                let cycle = self
                    .forest_path(i, u, v)
                    .expect("maximum union admits no further augmentation");
                for f in cycle {
                    if !labeled[f] {
                        labeled[f] = true;
                        queue.push_back(f);
                    }
                }
            }
        }
        labeled
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let root = self.find(self.parent[v]);
            self.parent[v] = root;
        }
        self.parent[v]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

// ---------------------------------------------------------------------------
// Criticality
// ---------------------------------------------------------------------------

/// True iff the total chromatic number is exactly `t` and every single-edge
/// deletion drops it below `t`. Edge deletions are evaluated in parallel.
pub fn is_total_critical(g: &Graph, t: u32, max_elements: usize) -> Result<bool, OracleError> {
    if brute_force_total_chromatic(g, max_elements)? != t {
        return Ok(false);
    }
    let edges: Vec<EdgeId> = (0..g.m()).collect();
    let results = par::map(&edges, |&e| brute_force_total_chromatic(&g.without_edge(e), max_elements));
    for r in results {
        if r? >= t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Edge-minimal subgraph with total chromatic number `t`: repeatedly deletes
/// the lowest-rank edge whose removal keeps the total chromatic number at
/// least `t`, then drops isolated vertices. Returns the subgraph and the map
/// from its vertex indices back to the input's.
pub fn total_critical_subgraph(
    g: &Graph,
    t: u32,
    max_elements: usize,
) -> Result<(Graph, Vec<usize>), MinorError> {
    let chi = brute_force_total_chromatic(g, max_elements)?;
    if chi < t {
        return Err(MinorError::NotReachingTarget { chi, t });
    }
    let mut h = g.clone();
    loop {
        let edges: Vec<EdgeId> = (0..h.m()).collect();
        let keeps = par::map(&edges, |&e| {
            brute_force_total_chromatic(&h.without_edge(e), max_elements).map(|c| c >= t)
        });
        let mut deletable = None;
        for (e, keep) in keeps.into_iter().enumerate() {
            if keep? {
                deletable = Some(e);
                break;
            }
        }
        match deletable {
            Some(e) => h = h.without_edge(e),
            None => break,
        }
    }
    let non_isolated: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) > 0).collect();
    Ok(h.induced_subgraph(&non_isolated))
}

// ---------------------------------------------------------------------------
// Minor constructors
// ---------------------------------------------------------------------------

fn verified(t: &TotalGraph, cert: MinorCertificate) -> Result<MinorCertificate, MinorError> {
    let report = verify_minor_certificate(t, &cert)?;
    if report.ok {
        Ok(cert)
    } else {
        Err(MinorError::VerificationFailed(report.failures))
    }
}

/// Clique minor of order Delta+k in T(G) for a (2k-1)-connected graph G:
/// singletons for the e-vertices at a maximum-degree vertex, one branch set
/// per edge-disjoint spanning tree of G minus that vertex, and the v-vertices
/// of the rest. For k = 1 this degenerates to the clique of the e-vertices at
/// the maximum-degree vertex together with the vertex itself.
pub fn minor_certificate_from_connectivity(g: &Graph, k: usize) -> Result<MinorCertificate, MinorError> {
    if k == 0 {
        return Err(MinorError::InvalidK);
    }
    if g.n() == 0 {
        return Err(MinorError::NoEdges);
    }
    let t = total_graph(g);
    let v_max = g.max_degree_vertex();
    let delta = g.max_degree();

    if k == 1 {
        let mut branch_sets = vec![vec![ElementId::Vertex(v_max)]];
        branch_sets.extend(g.incident_edges(v_max).iter().map(|&e| vec![ElementId::Edge(e)]));
        let cert = MinorCertificate {
            order: delta + 1,
            branch_sets,
            provenance: "connectivity(k=1)".into(),
        };
        return verified(&t, cert);
    }

    let kappa = vertex_connectivity(g);
    let required = 2 * k - 1;
    if kappa < required {
        return Err(MinorError::ConnectivityTooLow { kappa, required });
    }

    let rest: Vec<usize> = (0..g.n()).filter(|&v| v != v_max).collect();
    let (h, old_of_new) = g.induced_subgraph(&rest);
    let packing = match edge_disjoint_spanning_trees(&h, k - 1)? {
        PackingResult::Packed(p) => p,
        PackingResult::Infeasible(_) => {
            unreachable!("a (2k-2)-edge-connected graph packs k-1 spanning trees")
        }
    };

    let mut branch_sets: Vec<Vec<ElementId>> = g
        .incident_edges(v_max)
        .iter()
        .map(|&e| vec![ElementId::Edge(e)])
        .collect();
    for tree in &packing.trees {
        branch_sets.push(
            tree.iter()
                .map(|&he| {
                    let (a, b) = h.endpoints(he);
                    ElementId::Edge(g.edge_index(old_of_new[a], old_of_new[b]).unwrap())
                })
                .collect(),
        );
    }
    branch_sets.push(rest.iter().map(|&v| ElementId::Vertex(v)).collect());

    let cert = MinorCertificate {
        order: delta + k,
        branch_sets,
        provenance: format!("connectivity(k={k})"),
    };
    verified(&t, cert)
}

/// Clique minor of order Delta+2 in T(H) for a connected graph H assumed
/// (Delta+2)-total-critical: the maximum-degree vertex, its incident
/// e-vertices as singletons, and all remaining elements as one branch set.
/// The final verification surfaces a cut vertex at the contraction.
pub fn minor_from_critical_delta_plus_2(h: &Graph) -> Result<MinorCertificate, MinorError> {
    if !h.is_connected() {
        return Err(MinorError::Disconnected);
    }
    if h.m() == 0 {
        return Err(MinorError::NoEdges);
    }
    let t = total_graph(h);
    let v_max = h.max_degree_vertex();
    let delta = h.max_degree();

    let mut branch_sets = vec![vec![ElementId::Vertex(v_max)]];
    branch_sets.extend(h.incident_edges(v_max).iter().map(|&e| vec![ElementId::Edge(e)]));
    let mut rest: Vec<ElementId> = (0..h.n())
        .filter(|&v| v != v_max)
        .map(ElementId::Vertex)
        .collect();
    rest.extend((0..h.m()).filter_map(|e| {
        let (a, b) = h.endpoints(e);
        (a != v_max && b != v_max).then_some(ElementId::Edge(e))
    }));
    branch_sets.push(rest);

    let cert = MinorCertificate {
        order: delta + 2,
        branch_sets,
        provenance: "critical-delta-plus-2".into(),
    };
    verified(&t, cert)
}

/// Clique minor of order Delta+3 in T(H) via four branch-set families: the
/// two v-vertices {v_max, w} for a non-separating neighbor w, singletons for
/// the e-vertices at v_max, the remaining e-vertices plus one w-edge, and the
/// remaining v-vertices plus another w-edge.
///
/// Strict mode additionally demands Delta >= 6, the consistency condition a
/// genuinely (Delta+3)-total-critical graph satisfies. Relaxed mode exercises
/// the same construction on any 2-connected graph of minimum degree >= 3,
/// with the verifier as the arbiter.
pub fn minor_from_critical_delta_plus_3(h: &Graph, relaxed: bool) -> Result<MinorCertificate, MinorError> {
    let min_degree = (0..h.n()).map(|v| h.degree(v)).min().unwrap_or(0);
    if min_degree < 3 {
        return Err(MinorError::MinDegreeTooSmall {
            found: min_degree,
            required: 3,
        });
    }
    let delta = h.max_degree();
    if !relaxed && delta < 6 {
        return Err(MinorError::MaxDegreeTooSmall { found: delta });
    }
    let t = total_graph(h);
    let v_max = h.max_degree_vertex();
    let w = find_non_separating_neighbor(h, v_max)?;

    // two lowest-rank edges from w into H minus {v_max, w}
    let outward: Vec<EdgeId> = h
        .incident_edges(w)
        .iter()
        .copied()
        .filter(|&e| {
            let (a, b) = h.endpoints(e);
            a != v_max && b != v_max
        })
        .collect();
    assert!(outward.len() >= 2, "degree >= 3 leaves two edges avoiding v_max");
    let (e1, e2) = (outward[0], outward[1]);

    let mut branch_sets = vec![vec![ElementId::Vertex(v_max), ElementId::Vertex(w)]];
    branch_sets.extend(h.incident_edges(v_max).iter().map(|&e| vec![ElementId::Edge(e)]));
    let mut s2: Vec<ElementId> = (0..h.m())
        .filter_map(|e| {
            let (a, b) = h.endpoints(e);
            (a != v_max && b != v_max && a != w && b != w).then_some(ElementId::Edge(e))
        })
        .collect();
    s2.push(ElementId::Edge(e1));
    branch_sets.push(s2);
    let mut s3: Vec<ElementId> = (0..h.n())
        .filter(|&v| v != v_max && v != w)
        .map(ElementId::Vertex)
        .collect();
    s3.push(ElementId::Edge(e2));
    branch_sets.push(s3);

    let cert = MinorCertificate {
        order: delta + 3,
        branch_sets,
        provenance: if relaxed {
            "critical-delta-plus-3(relaxed)".into()
        } else {
            "critical-delta-plus-3".into()
        },
    };
    verified(&t, cert)
}

// ---------------------------------------------------------------------------
// Hadwiger report
// ---------------------------------------------------------------------------

/// Desk-scale evidence for Hadwiger's conjecture on one total graph:
/// the exact chromatic number of T(G) next to the best verified clique-minor
/// certificate the constructions produce.
#[derive(Debug)]
pub struct HadwigerReport {
    pub chi_total: u32,
    pub certificates: Vec<MinorCertificate>,
    pub best_order: usize,
    pub holds: bool,
}

pub fn hadwiger_report(g: &Graph, max_elements: usize) -> Result<HadwigerReport, MinorError> {
    let chi_total = brute_force_total_chromatic(g, max_elements)?;
    let mut certificates = Vec::new();
    if g.n() > 0 {
        certificates.push(minor_certificate_from_connectivity(g, 1)?);
        let kappa = vertex_connectivity(g);
        let k_max = kappa.div_ceil(2);
        if k_max >= 2 {
            certificates.push(minor_certificate_from_connectivity(g, k_max)?);
        }
        let delta = g.max_degree() as u32;
        if chi_total == delta + 2 || chi_total == delta + 3 {
            let (h, map) = total_critical_subgraph(g, chi_total, max_elements)?;
            let cert = if chi_total == delta + 2 {
                minor_from_critical_delta_plus_2(&h)?
            } else {
                minor_from_critical_delta_plus_3(&h, false)?
            };
            certificates.push(lift_certificate(cert, &h, &map, g)?);
        }
    }
    let best_order = certificates.iter().map(|c| c.order).max().unwrap_or(0);
    Ok(HadwigerReport {
        holds: chi_total as usize <= best_order,
        chi_total,
        certificates,
        best_order,
    })
}

/// Re-expresses a certificate over T(H) in T(G) coordinates, H being an
/// induced-subgraph of G under `old_of_new`. Adjacency and connectivity carry
/// over, so the lifted certificate is re-verified against T(G).
fn lift_certificate(
    cert: MinorCertificate,
    h: &Graph,
    old_of_new: &[usize],
    g: &Graph,
) -> Result<MinorCertificate, MinorError> {
    let branch_sets = cert
        .branch_sets
        .iter()
        .map(|set| {
            set.iter()
                .map(|&el| match el {
                    ElementId::Vertex(v) => ElementId::Vertex(old_of_new[v]),
                    ElementId::Edge(e) => {
                        let (a, b) = h.endpoints(e);
                        ElementId::Edge(g.edge_index(old_of_new[a], old_of_new[b]).unwrap())
                    }
                })
                .collect()
        })
        .collect();
    let lifted = MinorCertificate {
        branch_sets,
        order: cert.order,
        provenance: format!("{}+lifted", cert.provenance),
    };
    verified(&total_graph(g), lifted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn packing_is_sound(g: &Graph, k: usize, p: &TreePacking) {
        assert_eq!(p.trees.len(), k);
        let mut used = vec![false; g.m()];
        for tree in &p.trees {
            assert_eq!(tree.len(), g.n() - 1, "tree is not spanning");
            for &e in tree {
                assert!(!used[e], "trees share an edge");
                used[e] = true;
            }
            let sub_edges: Vec<(usize, usize)> = tree.iter().map(|&e| g.endpoints(e)).collect();
            let sub = Graph::from_edges(g.n(), sub_edges).unwrap();
            assert!(sub.is_connected(), "tree does not span");
        }
    }

    #[test]
    fn k4_packs_two_trees() {
        match edge_disjoint_spanning_trees(&Graph::complete(4), 2).unwrap() {
            PackingResult::Packed(p) => packing_is_sound(&Graph::complete(4), 2, &p),
            PackingResult::Infeasible(w) => panic!("K4 should pack 2 trees, got witness {w:?}"),
        }
    }

    #[test]
    fn c4_with_k2_gives_singleton_witness() {
        match edge_disjoint_spanning_trees(&Graph::cycle(4), 2).unwrap() {
            PackingResult::Infeasible(w) => {
                assert_eq!(w.classes.len(), 4);
                assert_eq!(w.cross_edges, 4);
                assert_eq!(w.required, 6);
            }
            PackingResult::Packed(_) => panic!("C4 cannot pack 2 spanning trees"),
        }
    }

    #[test]
    fn k6_packs_two_trees() {
        match edge_disjoint_spanning_trees(&Graph::complete(6), 2).unwrap() {
            PackingResult::Packed(p) => packing_is_sound(&Graph::complete(6), 2, &p),
            PackingResult::Infeasible(w) => panic!("K6 is 4-edge-connected, got {w:?}"),
        }
    }

    #[test]
    fn dense_blocks_yield_small_witness() {
        // two K5 blocks joined by a bridge: each block saturates two forests,
        // the bridge alone cannot finish both
        let mut edges: Vec<(usize, usize)> = Graph::complete(5).edges().to_vec();
        edges.extend(Graph::complete(5).edges().iter().map(|&(u, v)| (u + 5, v + 5)));
        edges.push((4, 5));
        let g = Graph::from_edges(10, edges).unwrap();
        match edge_disjoint_spanning_trees(&g, 2).unwrap() {
            PackingResult::Infeasible(w) => {
                assert!(w.cross_edges < w.required);
                assert_eq!(w.classes.len(), 2);
            }
            PackingResult::Packed(_) => panic!("17 < 18 edges cannot pack"),
        }
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(edge_disjoint_spanning_trees(&g, 1), Err(MinorError::Disconnected));
    }

    #[test]
    fn packing_matches_tutte_count_on_random_graphs() {
        // brute-force the Tutte--Nash-Williams condition over all partitions
        for seed in 0..60 {
            let n = 5 + (seed as usize) % 3;
            let g = Graph::random(n, 0.45 + 0.02 * (seed % 10) as f64, seed + 100);
            if !g.is_connected() {
                continue;
            }
            for k in 1..=3usize {
                let feasible_by_count = all_partitions_satisfy_count(&g, k);
                match edge_disjoint_spanning_trees(&g, k).unwrap() {
                    PackingResult::Packed(p) => {
                        packing_is_sound(&g, k, &p);
                        assert!(feasible_by_count, "packed but the count forbids it");
                    }
                    PackingResult::Infeasible(w) => {
                        assert!(w.cross_edges < w.required);
                        assert!(!feasible_by_count, "witness found but every partition is fine");
                    }
                }
            }
        }
    }

    fn all_partitions_satisfy_count(g: &Graph, k: usize) -> bool {
        // enumerate set partitions of the vertices via restricted growth strings
        let n = g.n();
        let mut assign = vec![0usize; n];
        loop {
            let parts = assign.iter().max().unwrap() + 1;
            if parts >= 2 {
                let cross = g
                    .edges()
                    .iter()
                    .filter(|&&(u, v)| assign[u] != assign[v])
                    .count();
                if cross < k * (parts - 1) {
                    return false;
                }
            }
            // next restricted growth string
            let mut i = n - 1;
            loop {
                if i == 0 {
                    return true;
                }
                let cap = assign[..i].iter().max().unwrap() + 1;
                if assign[i] < cap {
                    assign[i] += 1;
                    for a in assign[i + 1..].iter_mut() {
                        *a = 0;
                    }
                    break;
                }
                i -= 1;
            }
        }
    }

    #[test]
    fn verify_accepts_singleton_and_triangle() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let t = total_graph(&k2);
        let single = MinorCertificate {
            branch_sets: vec![vec![ElementId::Vertex(0)]],
            order: 1,
            provenance: "manual".into(),
        };
        assert!(verify_minor_certificate(&t, &single).unwrap().ok);
        let triangle = MinorCertificate {
            branch_sets: vec![
                vec![ElementId::Vertex(0)],
                vec![ElementId::Vertex(1)],
                vec![ElementId::Edge(0)],
            ],
            order: 3,
            provenance: "manual".into(),
        };
        assert!(verify_minor_certificate(&t, &triangle).unwrap().ok);
    }

    #[test]
    fn verify_names_missing_adjacency() {
        let p3 = Graph::path(3);
        let t = total_graph(&p3);
        let cert = MinorCertificate {
            branch_sets: vec![vec![ElementId::Vertex(0)], vec![ElementId::Vertex(2)]],
            order: 2,
            provenance: "manual".into(),
        };
        let report = verify_minor_certificate(&t, &cert).unwrap();
        assert!(!report.ok);
        assert_eq!(report.failures, vec![MinorFailure::MissingAdjacency(0, 1)]);
    }

    #[test]
    fn verify_rejects_out_of_range() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let t = total_graph(&k2);
        let cert = MinorCertificate {
            branch_sets: vec![vec![ElementId::Edge(5)]],
            order: 1,
            provenance: "manual".into(),
        };
        assert_eq!(
            verify_minor_certificate(&t, &cert),
            Err(MinorError::ElementOutOfRange(ElementId::Edge(5)))
        );
    }

    #[test]
    fn connectivity_certificates() {
        // K4 with k=1 degenerates to the Delta+1 clique
        let c = minor_certificate_from_connectivity(&Graph::complete(4), 1).unwrap();
        assert_eq!(c.order, 4);
        // K6 with k=3: kappa = 5 = 2k-1, order 5+3
        let c = minor_certificate_from_connectivity(&Graph::complete(6), 3).unwrap();
        assert_eq!(c.order, 8);
        // Q4 with k=2: kappa = 4 >= 3, order 4+2
        let c = minor_certificate_from_connectivity(&Graph::hypercube(4), 2).unwrap();
        assert_eq!(c.order, 6);
        // C4 with k=3: kappa = 2 < 5
        assert_eq!(
            minor_certificate_from_connectivity(&Graph::cycle(4), 3),
            Err(MinorError::ConnectivityTooLow { kappa: 2, required: 5 })
        );
    }

    #[test]
    fn criticality_examples() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(is_total_critical(&k2, 3, 14), Ok(true));
        // P3 has total chromatic number 3 but one deletion keeps a K2 component
        assert_eq!(is_total_critical(&Graph::path(3), 3, 14), Ok(false));
        assert_eq!(is_total_critical(&Graph::cycle(5), 4, 14), Ok(true));
    }

    #[test]
    fn critical_subgraph_examples() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap(); // K2 + isolated vertex
        let (h, map) = total_critical_subgraph(&g, 3, 14).unwrap();
        assert_eq!(h, Graph::complete(2));
        assert_eq!(map, vec![0, 1]);

        let (h, _) = total_critical_subgraph(&Graph::complete(3), 3, 14).unwrap();
        assert_eq!(h, Graph::complete(2));
        assert_eq!(is_total_critical(&h, 3, 14), Ok(true));

        let (h, _) = total_critical_subgraph(&Graph::cycle(5), 4, 14).unwrap();
        assert_eq!(is_total_critical(&h, 4, 14), Ok(true));
    }

    #[test]
    fn critical2_minor_certificates() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let c = minor_from_critical_delta_plus_2(&k2).unwrap();
        assert_eq!(c.order, 3);

        let c = minor_from_critical_delta_plus_2(&Graph::cycle(5)).unwrap();
        assert_eq!(c.order, 4);
        assert_eq!(c.branch_sets.len(), 4);

        // a cut vertex at the max-degree vertex disconnects the third family
        let err = minor_from_critical_delta_plus_2(&Graph::bowtie()).unwrap_err();
        match err {
            MinorError::VerificationFailed(failures) => {
                assert!(failures.iter().any(|f| matches!(f, MinorFailure::Disconnected(_))));
            }
            other => panic!("expected verification failure, got {other:?}"),
        }
    }

    #[test]
    fn critical3_minor_certificates() {
        let c = minor_from_critical_delta_plus_3(&Graph::complete(7), false).unwrap();
        assert_eq!(c.order, 9);
        let c = minor_from_critical_delta_plus_3(&Graph::complete_bipartite(4, 4), true).unwrap();
        assert_eq!(c.order, 7);
        assert_eq!(
            minor_from_critical_delta_plus_3(&Graph::path(3), true),
            Err(MinorError::MinDegreeTooSmall { found: 1, required: 3 })
        );
        // strict mode rejects small maximum degree
        assert_eq!(
            minor_from_critical_delta_plus_3(&Graph::complete(5), false),
            Err(MinorError::MaxDegreeTooSmall { found: 4 })
        );
    }

    #[test]
    fn hadwiger_reports() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let r = hadwiger_report(&k2, 14).unwrap();
        assert_eq!(r.chi_total, 3);
        assert!(r.best_order >= 3);
        assert!(r.holds);

        let r = hadwiger_report(&Graph::cycle(5), 14).unwrap();
        assert_eq!(r.chi_total, 4);
        assert!(r.best_order >= 4);
        assert!(r.holds);

        let r = hadwiger_report(&Graph::complete(5), 15).unwrap();
        assert_eq!(r.chi_total, 5);
        assert_eq!(r.best_order, 6); // connectivity route with k = 2
        assert!(r.holds);
    }

    #[test]
    fn certificate_json_round_trip() {
        let g = Graph::complete(4);
        let cert = minor_certificate_from_connectivity(&g, 2).unwrap();
        let json = cert.to_json(&g);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(MinorCertificate::from_json(&parsed, &g).unwrap(), cert);
    }
}
