//! Constructive edge coloring with at most Delta+1 colors, by fan rotation
//! and alternating-path inversion (Misra-Gries).

use crate::graph::{EdgeId, Graph};

/// Proper edge coloring of `g` with colors in `1..=max_degree+1`.
pub fn vizing_edge_coloring(g: &Graph) -> Vec<u32> {
    let mut state = EdgeColorer::new(g);
    for e in 0..g.m() {
        state.color_edge(e);
    }
    debug_assert!(crate::coloring::is_proper_edge_coloring(
        g,
        &state.colors.iter().map(|c| c.unwrap()).collect::<Vec<_>>()
    ));
    state.colors.into_iter().map(|c| c.unwrap()).collect()
}

struct EdgeColorer<'a> {
    g: &'a Graph,
    palette: u32, // Delta + 1
    colors: Vec<Option<u32>>,
    /// at[v][c-1] = edge currently carrying color c at vertex v
    at: Vec<Vec<Option<EdgeId>>>,
}

impl<'a> EdgeColorer<'a> {
    fn new(g: &'a Graph) -> Self {
        let palette = g.max_degree() as u32 + 1;
        EdgeColorer {
            g,
            palette,
            colors: vec![None; g.m()],
            at: vec![vec![None; palette as usize]; g.n()],
        }
    }

    fn is_free(&self, v: usize, c: u32) -> bool {
        self.at[v][(c - 1) as usize].is_none()
    }

    fn lowest_free(&self, v: usize) -> u32 {
        (1..=self.palette)
            .find(|&c| self.is_free(v, c))
            .expect("a vertex of degree d has a free color among d+1")
    }

    fn set_colors(&mut self, updates: &[(EdgeId, u32)]) {
        // remove first, then add: within one batch a new color may equal
        // another edge's old color at a shared vertex
        for &(e, _) in updates {
            if let Some(old) = self.colors[e] {
                let (u, v) = self.g.endpoints(e);
                self.at[u][(old - 1) as usize] = None;
                self.at[v][(old - 1) as usize] = None;
            }
        }
        for &(e, c) in updates {
            let (u, v) = self.g.endpoints(e);
            debug_assert!(self.at[u][(c - 1) as usize].is_none());
            debug_assert!(self.at[v][(c - 1) as usize].is_none());
            self.at[u][(c - 1) as usize] = Some(e);
            self.at[v][(c - 1) as usize] = Some(e);
            self.colors[e] = Some(c);
        }
    }

    /// Maximal fan of `u` starting at `v`: distinct neighbors, each next edge
    /// colored with a color free on the previous fan vertex. Extension picks
    /// the smallest eligible neighbor.
    fn maximal_fan(&self, u: usize, v: usize) -> Vec<usize> {
        let mut fan = vec![v];
        let mut in_fan = vec![false; self.g.n()];
        in_fan[v] = true;
        loop {
            let last = *fan.last().unwrap();
            let next = self.g.neighbors(u).iter().copied().find(|&x| {
                !in_fan[x]
                    && match self.colors[self.g.edge_index(u, x).unwrap()] {
                        Some(c) => self.is_free(last, c),
                        None => false,
                    }
            });
            match next {
                Some(x) => {
                    in_fan[x] = true;
                    fan.push(x);
                }
                None => return fan,
            }
        }
    }

    /// Edges of the maximal path from `u` alternating colors d, c, d, ...
    fn cd_path(&self, u: usize, c: u32, d: u32) -> Vec<EdgeId> {
        let mut path = Vec::new();
        let mut cur = u;
        let mut want = d;
        let mut prev_edge = usize::MAX;
        while let Some(e) = self.at[cur][(want - 1) as usize] {
            if e == prev_edge {
                break;
            }
            path.push(e);
            let (a, b) = self.g.endpoints(e);
            cur = if a == cur { b } else { a };
            want = if want == d { c } else { d };
            prev_edge = e;
        }
        path
    }

    fn color_edge(&mut self, e: EdgeId) {
        let (u, v) = self.g.endpoints(e);
        let fan = self.maximal_fan(u, v);
        let c = self.lowest_free(u);
        let d = self.lowest_free(*fan.last().unwrap());

        if c != d {
            // invert the cd path through u; afterwards d is free on u
            let path = self.cd_path(u, c, d);
            let updates: Vec<(EdgeId, u32)> = path
                .iter()
                .map(|&pe| {
                    let old = self.colors[pe].unwrap();
                    (pe, if old == c { d } else { c })
                })
                .collect();
            self.set_colors(&updates);
        }
        debug_assert!(self.is_free(u, d));

        // first fan vertex (along a prefix still valid in the new coloring)
        // on which d is free
        let mut w = None;
        for (i, &x) in fan.iter().enumerate() {
            if i > 0 {
                let fe = self.g.edge_index(u, fan[i]).unwrap();
                match self.colors[fe] {
                    Some(fc) if self.is_free(fan[i - 1], fc) => {}
                    _ => break, // prefix no longer a fan
                }
            }
            if self.is_free(x, d) {
                w = Some(i);
                break;
            }
        }
        let w = w.expect("inverting the cd path leaves a fan vertex with d free");

        // rotate the prefix and finish with d
        let mut updates = Vec::with_capacity(w + 1);
        for i in 0..w {
            let donor = self.g.edge_index(u, fan[i + 1]).unwrap();
            updates.push((self.g.edge_index(u, fan[i]).unwrap(), self.colors[donor].unwrap()));
        }
        updates.push((self.g.edge_index(u, fan[w]).unwrap(), d));
        self.set_colors(&updates);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper_edge_coloring;

    fn check(g: &Graph) -> Vec<u32> {
        let colors = vizing_edge_coloring(g);
        assert!(is_proper_edge_coloring(g, &colors), "improper on {g:?}");
        let bound = g.max_degree() as u32 + 1;
        assert!(colors.iter().all(|&c| (1..=bound).contains(&c)));
        colors
    }

    #[test]
    fn k3_needs_three_colors() {
        let colors = check(&Graph::complete(3));
        let mut distinct = colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn bipartite_and_petersen_fit_in_delta_plus_one() {
        check(&Graph::complete_bipartite(3, 3));
        check(&Graph::petersen());
        check(&Graph::hypercube(4));
    }

    #[test]
    fn exhaustive_small_graphs() {
        // all graphs on up to 6 vertices
        for n in 2usize..=6 {
            let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..1 << all.len() {
                let edges = all
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &e)| e);
                let g = Graph::from_edges(n, edges).unwrap();
                check(&g);
            }
        }
    }

    #[test]
    fn random_graphs_stay_proper() {
        for seed in 0..30 {
            let g = Graph::random(24, 0.1 + 0.03 * (seed % 10) as f64, seed);
            check(&g);
        }
    }
}
