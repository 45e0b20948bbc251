// SPDX-License-Identifier: Apache-2.0

mod common;

use std::collections::BTreeSet;

use common::{components, same_partition};
use proptest::prelude::*;
use transclust::clustering::{local_trans_with, Frontier};
use transclust::{
    build_dendrogram, cut_dendrogram, global_trans, laplacian_support, load_edge_list, local_trans,
    triangle_support, write_edge_list, LaplacianConfig, UndirectedGraph, WeightedSimilarity,
};

fn graph_strategy() -> impl Strategy<Value = UndirectedGraph> {
    (1usize..30).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..(3 * n)).prop_map(move |pairs| {
            // Close a few wedges so triangle supports are not all zero.
            let mut edges = pairs.clone();
            for w in pairs.windows(2) {
                edges.push((w[0].1, w[1].1));
            }
            UndirectedGraph::from_edges(n, edges).unwrap()
        })
    })
}

fn similarity_strategy() -> impl Strategy<Value = WeightedSimilarity> {
    (graph_strategy(), any::<bool>(), 0.0f64..4.0).prop_map(|(g, lap, tau)| {
        if lap {
            laplacian_support(&g, LaplacianConfig::new(tau).unwrap())
        } else {
            triangle_support(&g)
        }
    })
}

/// A cut drawn from the weights present, so thresholds land on ties.
fn pick_cut(sim: &WeightedSimilarity, index: usize, nudge: bool) -> f64 {
    let w = sim.weights();
    if w.is_empty() {
        return 1.0;
    }
    let base = w[index % w.len()];
    if nudge {
        base * 0.999
    } else {
        base
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_invariants(g in graph_strategy()) {
        let mut degree_sum = 0;
        for i in 0..g.n() {
            let nb = g.neighbors(i);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!nb.contains(&i));
            for &j in nb {
                prop_assert!(g.neighbors(j).binary_search(&i).is_ok());
            }
            prop_assert_eq!(g.degree(i).unwrap(), nb.len());
            degree_sum += nb.len();
        }
        prop_assert_eq!(degree_sum, 2 * g.m());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            prop_assert!(u < v);
            prop_assert_eq!(g.edge_id(u, v), Some(e));
            prop_assert_eq!(g.edge_id(v, u), Some(e));
        }
        prop_assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn common_neighbours_match_set_intersection(g in graph_strategy(), a in 0usize..30, b in 0usize..30) {
        let (i, j) = (a % g.n(), b % g.n());
        if i == j {
            prop_assert!(g.common_neighbor_count(i, j).is_err());
        } else {
            let x: BTreeSet<_> = g.neighbors(i).iter().collect();
            let y: BTreeSet<_> = g.neighbors(j).iter().collect();
            prop_assert_eq!(g.common_neighbor_count(i, j).unwrap(), x.intersection(&y).count());
        }
    }

    #[test]
    fn edge_list_round_trip(pairs in prop::collection::vec((0u64..1000, 0u64..1000), 0..60)) {
        // A self-loop alone would leave an isolated node, which the format
        // cannot carry back.
        let pairs: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
        let text: String = pairs.iter().map(|(u, v)| format!("{u} {v}\n")).collect();
        let g = load_edge_list(text.as_bytes()).unwrap();
        let mut out = Vec::new();
        write_edge_list(&g, &mut out).unwrap();
        let again = load_edge_list(&out[..]).unwrap();
        prop_assert_eq!(&g, &again);
        let mut out2 = Vec::new();
        write_edge_list(&again, &mut out2).unwrap();
        prop_assert_eq!(out, out2);
    }

    #[test]
    fn weights_are_symmetric_and_non_negative(sim in similarity_strategy()) {
        for (u, v, w) in sim.iter() {
            prop_assert!(w >= 0.0);
            prop_assert_eq!(sim.weight(u, v), sim.weight(v, u));
        }
    }

    #[test]
    fn global_trans_is_threshold_components(sim in similarity_strategy(), k in 0usize..100, nudge in any::<bool>()) {
        let cut = pick_cut(&sim, k, nudge);
        let clusters = global_trans(&sim, cut).unwrap();
        let oracle = components(sim.graph(), |e| sim.edge_weight(e) >= cut);
        prop_assert!(same_partition(clusters.labels(), &oracle));
        // Labels are numbered in order of first appearance.
        let mut next = 0;
        for &l in clusters.labels() {
            prop_assert!(l <= next);
            next = next.max(l + 1);
        }
        prop_assert_eq!(next, clusters.len());
    }

    #[test]
    fn local_trans_is_block_of_seed(sim in similarity_strategy(), k in 0usize..100, seed in 0usize..30, nudge in any::<bool>()) {
        let cut = pick_cut(&sim, k, nudge);
        let seed = seed % sim.graph().n();
        let clusters = global_trans(&sim, cut).unwrap();
        let bfs = local_trans(&sim, seed, cut).unwrap();
        let dfs = local_trans_with(&sim, seed, cut, Frontier::DepthFirst).unwrap();
        prop_assert_eq!(&bfs, &clusters.block_of(seed));
        prop_assert_eq!(&bfs, &dfs);
        prop_assert!(bfs.contains(&seed));
    }

    #[test]
    fn union_of_local_clusters_is_global(sim in similarity_strategy(), k in 0usize..100) {
        let cut = pick_cut(&sim, k, false);
        let blocks: BTreeSet<Vec<usize>> = (0..sim.graph().n())
            .map(|i| local_trans(&sim, i, cut).unwrap())
            .collect();
        let global: BTreeSet<Vec<usize>> = global_trans(&sim, cut).unwrap().blocks().into_iter().collect();
        prop_assert_eq!(blocks, global);
    }

    #[test]
    fn higher_cuts_refine_lower_cuts(sim in similarity_strategy(), a in 0usize..100, b in 0usize..100) {
        let (lo, hi) = {
            let (x, y) = (pick_cut(&sim, a, false), pick_cut(&sim, b, true));
            (x.min(y), x.max(y))
        };
        let d = build_dendrogram(&sim);
        let coarse = cut_dendrogram(&d, lo).unwrap();
        let fine = cut_dendrogram(&d, hi).unwrap();
        prop_assert!(fine.len() >= coarse.len());
        for i in 0..sim.graph().n() {
            for j in fine.block_of(i) {
                prop_assert_eq!(coarse.label(i), coarse.label(j));
            }
        }
    }

    #[test]
    fn dendrogram_is_a_spanning_forest(sim in similarity_strategy()) {
        let d = build_dendrogram(&sim);
        let all = components(sim.graph(), |_| true);
        let roots: BTreeSet<_> = all.iter().collect();
        prop_assert_eq!(d.merges().len(), sim.graph().n() - roots.len());
        prop_assert!(d.merges().windows(2).all(|w| w[0].weight >= w[1].weight));
    }
}
