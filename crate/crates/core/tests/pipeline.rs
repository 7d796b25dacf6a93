//! End-to-end runs of the total-coloring pipeline on random 5-colorable
//! inputs, with the full condition checker enabled.

use totalgraph::coloring::engine::{weak_tcc_total_coloring, WeakTccOptions};
use totalgraph::coloring::verify_total_coloring;
use totalgraph::graph::Graph;
use totalgraph::oracle::brute_force_total_chromatic;

#[test]
fn hundred_random_five_colorable_graphs_color_validly() {
    for seed in 0..100u64 {
        let n = 10 + (seed as usize * 3) % 31;
        let p = 0.15 + 0.05 * (seed % 10) as f64;
        let (g, _) = Graph::random_5_partite(n, p, 4000 + seed);
        let out = weak_tcc_total_coloring(&g, &WeakTccOptions {
            check_invariants: true,
            ..Default::default()
        })
        .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(out.report.valid, "seed {seed} invalid");
        assert!(
            out.report.max_color <= g.max_degree() as u32 + 3,
            "seed {seed} exceeded Delta+3"
        );
        // the verifier agrees with the engine's own report
        let again = verify_total_coloring(&g, &out.coloring).unwrap();
        assert!(again.valid);
    }
}

#[test]
fn exhaustive_five_vertex_sweep_with_checker() {
    // every graph on 5 vertices, connected or not, with the per-fix checker
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    for mask in 0u32..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e);
        let g = Graph::from_edges(5, edges).unwrap();
        let out = weak_tcc_total_coloring(&g, &WeakTccOptions {
            check_invariants: true,
            ..Default::default()
        })
        .unwrap();
        assert!(out.report.valid);
        assert!(out.report.max_color <= g.max_degree() as u32 + 3);
        let floor = brute_force_total_chromatic(&g, 15).unwrap();
        assert!(floor <= out.report.colors_used, "oracle above engine on {g:?}");
    }
}

#[test]
fn engine_meets_the_oracle_floor_on_tiny_graphs() {
    for seed in 0..60u64 {
        let g = Graph::random(6, 0.45, 7000 + seed);
        if g.element_count() > 14 {
            continue;
        }
        let chi2 = brute_force_total_chromatic(&g, 14).unwrap();
        let out = weak_tcc_total_coloring(&g, &WeakTccOptions::default()).unwrap();
        assert!(out.report.valid);
        assert!(chi2 <= out.report.colors_used);
        assert!(out.report.max_color <= g.max_degree() as u32 + 3);
    }
}

#[test]
fn trail_records_serialize_for_audit() {
    // force at least one instance with trails and export them
    for seed in 0..80u64 {
        let (g, _) = Graph::random_5_partite(40, 0.4, 9000 + seed);
        let out = weak_tcc_total_coloring(&g, &WeakTccOptions::default()).unwrap();
        if out.trails.is_empty() {
            continue;
        }
        let json = serde_json::to_string(&out.trails).unwrap();
        assert!(json.contains("\"phase\""));
        assert!(json.contains("\"terminal_rule\""));
        for t in &out.trails {
            assert!(t.phase == 4 || t.phase == 5);
            assert_eq!(t.edge_kinds.len() + 2, t.vertices.len());
            assert_eq!(t.edge_kinds[0], totalgraph::coloring::engine::TrailEdgeKind::Gamma);
        }
        return;
    }
    panic!("no instance produced a trail; corpus too easy");
}
