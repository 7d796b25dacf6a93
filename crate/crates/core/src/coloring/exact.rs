//! Exact k-colorability by DSATUR-ordered backtracking with a node budget.

use crate::graph::Graph;

/// Default decision budget for exact coloring searches.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Outcome of an exact coloring search. `Impossible` is a definite negative;
/// `BudgetExceeded` is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringSearch {
    Colored(Vec<u32>),
    Impossible,
    BudgetExceeded,
}

/// Searches for a proper vertex coloring with colors `1..=k`.
///
/// Components are colored independently. Within a component, a greedy pass
/// along a degeneracy order is tried first (exact when it succeeds); otherwise
/// backtracking with saturation-degree ordering decides the question, spending
/// at most `budget` color assignments.
pub fn exact_vertex_coloring(g: &Graph, k: u32, budget: u64) -> ColoringSearch {
    assert!(k >= 1, "k must be positive");
    assert!(k <= 64, "color budget above 64 is not supported");
    let mut colors = vec![0u32; g.n()];
    let mut remaining = budget;
    for comp in g.connected_components() {
        let (sub, old_of_new) = g.induced_subgraph(&comp);
        let sub_colors = match color_component(&sub, k, &mut remaining) {
            ColoringSearch::Colored(c) => c,
            other => return other,
        };
        for (new, &old) in old_of_new.iter().enumerate() {
            colors[old] = sub_colors[new];
        }
    }
    ColoringSearch::Colored(colors)
}

/// Smallest k for which `g` is k-colorable.
pub fn chromatic_number(g: &Graph, budget: u64) -> Option<u32> {
    if g.n() == 0 {
        return Some(0);
    }
    let top = (g.n() as u32).min(64);
    for k in 1..=top {
        match exact_vertex_coloring(g, k, budget) {
            ColoringSearch::Colored(_) => return Some(k),
            ColoringSearch::Impossible => continue,
            ColoringSearch::BudgetExceeded => return None,
        }
    }
    unreachable!("chromatic number above 64; callers are expected to size-guard");
}

fn color_component(g: &Graph, k: u32, budget: &mut u64) -> ColoringSearch {
    if let Some(colors) = greedy_by_degeneracy(g, k) {
        return ColoringSearch::Colored(colors);
    }
    let mut state = Dsatur {
        g,
        colors: vec![0; g.n()],
        sat: vec![0u64; g.n()],
        k,
        budget,
    };
    let max_used = 0;
    if state.solve(0, max_used) {
        ColoringSearch::Colored(state.colors)
    } else if *state.budget == 0 {
        ColoringSearch::BudgetExceeded
    } else {
        ColoringSearch::Impossible
    }
}

/// First-fit along a degeneracy order uses at most degeneracy+1 colors.
fn greedy_by_degeneracy(g: &Graph, k: u32) -> Option<Vec<u32>> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    let mut colors = vec![0u32; n];
    for &v in order.iter().rev() {
        let used: u64 = g
            .neighbors(v)
            .iter()
            .filter(|&&w| colors[w] != 0)
            .fold(0u64, |acc, &w| acc | 1 << (colors[w] - 1));
        let c = (0..64).find(|&b| used & (1 << b) == 0)? as u32 + 1;
        if c > k {
            return None;
        }
        colors[v] = c;
    }
    Some(colors)
}

struct Dsatur<'a> {
    g: &'a Graph,
    colors: Vec<u32>,
    /// Bitmask of colors present in the neighborhood, bit c-1 for color c.
    sat: Vec<u64>,
    k: u32,
    budget: &'a mut u64,
}

impl Dsatur<'_> {
    fn solve(&mut self, colored: usize, max_used: u32) -> bool {
        let n = self.g.n();
        if colored == n {
            return true;
        }
        // most saturated first, ties by degree then index
        let v = (0..n)
            .filter(|&v| self.colors[v] == 0)
            .max_by_key(|&v| (self.sat[v].count_ones(), self.g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let limit = self.k.min(max_used + 1);
        for c in 1..=limit {
            if self.sat[v] & (1 << (c - 1)) != 0 {
                continue;
            }
            if *self.budget == 0 {
                return false;
            }
            *self.budget -= 1;
            self.colors[v] = c;
            let mut touched = Vec::new();
            for &w in self.g.neighbors(v) {
                if self.sat[w] & (1 << (c - 1)) == 0 {
                    self.sat[w] |= 1 << (c - 1);
                    touched.push(w);
                }
            }
            if self.solve(colored + 1, max_used.max(c)) {
                return true;
            }
            self.colors[v] = 0;
            for w in touched {
                // only unset if no other neighbor of w carries c
                if !self.g.neighbors(w).iter().any(|&x| self.colors[x] == c) {
                    self.sat[w] &= !(1 << (c - 1));
                }
            }
            if *self.budget == 0 {
                return false;
            }
        }
        false
    }
}
