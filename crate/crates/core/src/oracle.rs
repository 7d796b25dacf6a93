//! Brute-force oracles: exact chromatic quantities at desk scale.
//!
//! The total-chromatic oracle computes the chromatic number of the total
//! graph; the edge-chromatic oracle the chromatic number of the line graph.
//! Both are exact searches, independent of the constructive coloring engines
//! they are used to cross-check.

use thiserror::Error;

use crate::coloring::exact::{chromatic_number, DEFAULT_BUDGET};
use crate::derived::{line_graph, total_graph};
use crate::graph::Graph;
use crate::par;

/// Default element-count guard for the exact total-chromatic search.
pub const DEFAULT_MAX_ELEMENTS: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large: {size} elements exceed the guard of {max}")]
    SizeGuard { size: usize, max: usize },
    #[error("search budget exceeded before a definite answer")]
    BudgetExceeded,
}

/// Exact chromatic number.
pub fn chi(g: &Graph, max_vertices: usize) -> Result<u32, OracleError> {
    guard(g.n(), max_vertices)?;
    chromatic_number(g, DEFAULT_BUDGET).ok_or(OracleError::BudgetExceeded)
}

/// Exact edge chromatic number, via the line graph.
pub fn chi_prime(g: &Graph, max_edges: usize) -> Result<u32, OracleError> {
    guard(g.m(), max_edges)?;
    chromatic_number(&line_graph(g), DEFAULT_BUDGET).ok_or(OracleError::BudgetExceeded)
}

/// Exact total chromatic number, as the chromatic number of the total graph.
/// Guarded by the element count n + m.
pub fn brute_force_total_chromatic(g: &Graph, max_elements: usize) -> Result<u32, OracleError> {
    guard(g.element_count(), max_elements)?;
    chromatic_number(total_graph(g).graph(), DEFAULT_BUDGET).ok_or(OracleError::BudgetExceeded)
}

/// Exact clique number by branch and bound.
pub fn clique_number(g: &Graph, max_vertices: usize) -> Result<u32, OracleError> {
    guard(g.n(), max_vertices)?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    // order by degeneracy to keep candidate sets small
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    let mut best = 1u32;
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for (i, &v) in order.iter().enumerate() {
        let cand: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > i).collect();
        extend_clique(g, 1, &cand, &mut best);
    }
    Ok(best)
}

fn extend_clique(g: &Graph, size: u32, cand: &[usize], best: &mut u32) {
    if size + cand.len() as u32 <= *best {
        return;
    }
    if cand.is_empty() {
        *best = (*best).max(size);
        return;
    }
    for (i, &v) in cand.iter().enumerate() {
        if size + (cand.len() - i) as u32 <= *best {
            break;
        }
        let next: Vec<usize> = cand[i + 1..]
            .iter()
            .copied()
            .filter(|&w| g.has_edge(v, w))
            .collect();
        extend_clique(g, size + 1, &next, best);
    }
}

/// Total chromatic numbers for a batch of graphs; parallel when the
/// `parallel` feature is enabled, with results in input order.
pub fn total_chromatic_batch(gs: &[Graph], max_elements: usize) -> Vec<Result<u32, OracleError>> {
    par::map(gs, |g| brute_force_total_chromatic(g, max_elements))
}

/// Always-sequential variant of [`total_chromatic_batch`].
pub fn total_chromatic_batch_seq(gs: &[Graph], max_elements: usize) -> Vec<Result<u32, OracleError>> {
    gs.iter().map(|g| brute_force_total_chromatic(g, max_elements)).collect()
}

fn guard(size: usize, max: usize) -> Result<(), OracleError> {
    if size > max {
        Err(OracleError::SizeGuard { size, max })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_chromatic_of_smallest_graphs() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(brute_force_total_chromatic(&k2, 14), Ok(3));
        assert_eq!(brute_force_total_chromatic(&Graph::complete(3), 14), Ok(3));
        assert_eq!(brute_force_total_chromatic(&Graph::cycle(5), 14), Ok(4));
    }

    #[test]
    fn size_guard_fires() {
        assert_eq!(
            brute_force_total_chromatic(&Graph::complete(30), 14),
            Err(OracleError::SizeGuard { size: 465, max: 14 })
        );
    }

    #[test]
    fn edge_chromatic_examples() {
        assert_eq!(chi_prime(&Graph::complete_bipartite(3, 3), 12), Ok(3));
        assert_eq!(chi_prime(&Graph::complete(3), 12), Ok(3));
        assert_eq!(chi_prime(&Graph::cycle(6), 12), Ok(2));
        // Petersen is class II
        assert_eq!(chi_prime(&Graph::petersen(), 15), Ok(4));
    }

    #[test]
    fn clique_number_examples() {
        assert_eq!(clique_number(&Graph::complete(5), 20), Ok(5));
        assert_eq!(clique_number(&Graph::cycle(5), 20), Ok(2));
        assert_eq!(clique_number(&Graph::bowtie(), 20), Ok(3));
        assert_eq!(clique_number(&Graph::petersen(), 20), Ok(2));
        assert_eq!(clique_number(&Graph::empty(3), 20), Ok(1));
    }

    #[test]
    fn clique_number_of_total_graph_is_delta_plus_one() {
        for g in [Graph::path(4), Graph::cycle(5), Graph::star(4), Graph::complete(4)] {
            let t = total_graph(&g);
            assert_eq!(clique_number(t.graph(), 20).unwrap(), g.max_degree() as u32 + 1);
        }
    }

    #[test]
    fn batch_matches_sequential() {
        let gs = vec![Graph::cycle(5), Graph::complete(3), Graph::path(4)];
        assert_eq!(total_chromatic_batch(&gs, 14), total_chromatic_batch_seq(&gs, 14));
    }
}
