// SPDX-License-Identifier: Apache-2.0

//! Edge similarities built from triangles.
//!
//! Two weightings share one sparse representation, a weight per undirected
//! edge of the base graph:
//!
//! * triangle support: the number of triangles through the edge, i.e. the
//!   entry of `(AA)·A` (`·` elementwise);
//! * Laplacian support: the entry of `(L_τ L_τ)·L_τ` where
//!   `L_τ = D_τ^{-1/2} A D_τ^{-1/2}` and `D_τ = D + τI`. A triangle `{i, j, k}`
//!   contributes `1 / ((d_i+τ)(d_j+τ)(d_k+τ))` to the weight of `(i, j)`.
//!
//! Pairs that are not edges always have weight zero and are not stored.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{for_each_common, UndirectedGraph};

/// Which weighting produced a [`WeightedSimilarity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SimilarityKind {
    TriangleCount,
    Laplacian { tau: f64 },
}

/// Regularizer for the Laplacian weighting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplacianConfig {
    tau: f64,
}

impl LaplacianConfig {
    pub fn new(tau: f64) -> Result<Self> {
        if tau.is_nan() || tau < 0.0 || tau.is_infinite() {
            return Err(Error::domain(format!(
                "regularizer tau must be finite and non-negative, got {tau}"
            )));
        }
        Ok(LaplacianConfig { tau })
    }

    /// `τ` equal to the graph's mean degree.
    pub fn mean_degree(g: &UndirectedGraph) -> Self {
        LaplacianConfig {
            tau: g.mean_degree(),
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// Symmetric non-negative weights on the edges of a graph.
#[derive(Debug, Clone)]
pub struct WeightedSimilarity {
    graph: UndirectedGraph,
    weights: Vec<f64>,
    kind: SimilarityKind,
}

impl WeightedSimilarity {
    /// Wraps precomputed per-edge weights, indexed by edge id.
    pub fn from_parts(
        graph: UndirectedGraph,
        kind: SimilarityKind,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if weights.len() != graph.m() {
            return Err(Error::domain(format!(
                "expected {} edge weights, got {}",
                graph.m(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_nan() || **w < 0.0) {
            return Err(Error::domain(format!(
                "edge weights must be non-negative, got {w}"
            )));
        }
        Ok(WeightedSimilarity {
            graph,
            weights,
            kind,
        })
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn kind(&self) -> SimilarityKind {
        self.kind
    }

    /// Weights indexed by edge id (see [`UndirectedGraph::edges`]).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn edge_weight(&self, edge: usize) -> f64 {
        self.weights[edge]
    }

    /// Weight of `(i, j)`, or `None` when it is not an edge.
    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.graph.edge_id(i, j).map(|e| self.weights[e])
    }

    /// `(u, v, weight)` with `u < v`, sorted by `(u, v)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.graph
            .edges()
            .iter()
            .zip(&self.weights)
            .map(|(&(u, v), &w)| (u, v, w))
    }
}

/// Triangle count of every edge.
pub fn triangle_support(g: &UndirectedGraph) -> WeightedSimilarity {
    let weights = g
        .edges()
        .par_iter()
        .map(|&(u, v)| {
            let mut count = 0u64;
            for_each_common(g.neighbors(u), g.neighbors(v), |_| count += 1);
            count as f64
        })
        .collect();
    WeightedSimilarity {
        graph: g.clone(),
        weights,
        kind: SimilarityKind::TriangleCount,
    }
}

fn inverse_regularized_degrees(g: &UndirectedGraph, tau: f64) -> Vec<f64> {
    g.degrees().map(|d| 1.0 / (d as f64 + tau)).collect()
}

/// Entries of `(L_τ L_τ)·L_τ` on the edges of `g`.
///
/// Terms are accumulated in ascending order of the common neighbor, so the
/// result does not depend on the number of worker threads.
pub fn laplacian_support(g: &UndirectedGraph, cfg: LaplacianConfig) -> WeightedSimilarity {
    let inv = inverse_regularized_degrees(g, cfg.tau);
    let weights = g
        .edges()
        .par_iter()
        .map(|&(u, v)| {
            let scale = inv[u] * inv[v];
            let mut total = 0.0;
            for_each_common(g.neighbors(u), g.neighbors(v), |k| total += scale * inv[k]);
            total
        })
        .collect();
    WeightedSimilarity {
        graph: g.clone(),
        weights,
        kind: SimilarityKind::Laplacian { tau: cfg.tau },
    }
}

/// Largest absolute difference between `(L_τ L_τ)·L_τ` and
/// `(L_RW L_RW)·L_RWᵀ`, where `L_RW = D_τ^{-1} A`, over both orientations of
/// every edge.
pub fn random_walk_discrepancy(g: &UndirectedGraph, cfg: LaplacianConfig) -> f64 {
    let tau = cfg.tau;
    let dreg: Vec<f64> = g.degrees().map(|d| d as f64 + tau).collect();
    let sym = |i: usize, j: usize| 1.0 / (dreg[i] * dreg[j]).sqrt();
    let rw = |i: usize, _j: usize| 1.0 / dreg[i];
    g.edges()
        .par_iter()
        .map(|&(u, v)| {
            let mut worst = 0.0f64;
            for (i, j) in [(u, v), (v, u)] {
                let mut sym_path = 0.0;
                let mut rw_path = 0.0;
                for_each_common(g.neighbors(i), g.neighbors(j), |k| {
                    sym_path += sym(i, k) * sym(k, j);
                    rw_path += rw(i, k) * rw(k, j);
                });
                let lhs = sym_path * sym(i, j);
                let rhs = rw_path * rw(j, i);
                worst = worst.max((lhs - rhs).abs());
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

/// Absolute tolerance of [`random_walk_equivalence_check`].
pub const RANDOM_WALK_TOLERANCE: f64 = 1e-12;

/// True when the symmetric and random-walk Laplacian similarities agree on
/// every edge within [`RANDOM_WALK_TOLERANCE`].
pub fn random_walk_equivalence_check(g: &UndirectedGraph, cfg: LaplacianConfig) -> bool {
    random_walk_discrepancy(g, cfg) <= RANDOM_WALK_TOLERANCE
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> UndirectedGraph {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        UndirectedGraph::from_edges(n, edges).unwrap()
    }

    fn bridged_k4s() -> UndirectedGraph {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.push((3, 4));
        UndirectedGraph::from_edges(8, edges).unwrap()
    }

    #[test]
    fn triangle_support_examples() {
        let sim = triangle_support(&complete(3));
        assert_eq!(sim.weights(), &[1.0, 1.0, 1.0]);
        let sim = triangle_support(&complete(4));
        assert!(sim.weights().iter().all(|&w| w == 2.0));
        assert_eq!(sim.weights().len(), 6);

        let sim = triangle_support(&bridged_k4s());
        for (u, v, w) in sim.iter() {
            let expect = if (u, v) == (3, 4) { 0.0 } else { 2.0 };
            assert_eq!(w, expect, "edge ({u},{v})");
        }
        assert_eq!(sim.weight(4, 3), Some(0.0));
        assert_eq!(sim.weight(0, 7), None);
    }

    #[test]
    fn laplacian_support_examples() {
        let k3 = complete(3);
        let sim = laplacian_support(&k3, LaplacianConfig::new(0.0).unwrap());
        assert!(sim.weights().iter().all(|&w| (w - 1.0 / 8.0).abs() < 1e-15));
        let sim = laplacian_support(&k3, LaplacianConfig::new(1.0).unwrap());
        assert!(sim
            .weights()
            .iter()
            .all(|&w| (w - 1.0 / 27.0).abs() < 1e-15));
        assert_eq!(sim.kind(), SimilarityKind::Laplacian { tau: 1.0 });

        for tau in [0.0, 0.5, 3.0] {
            let sim = laplacian_support(&bridged_k4s(), LaplacianConfig::new(tau).unwrap());
            assert_eq!(sim.weight(3, 4), Some(0.0));
        }
    }

    #[test]
    fn rejects_bad_tau() {
        assert!(LaplacianConfig::new(-0.1).is_err());
        assert!(LaplacianConfig::new(f64::NAN).is_err());
        assert!(LaplacianConfig::new(f64::INFINITY).is_err());
    }

    #[test]
    fn random_walk_equivalence_examples() {
        assert!(random_walk_equivalence_check(
            &complete(4),
            LaplacianConfig::new(0.0).unwrap()
        ));
        let path = UndirectedGraph::from_edges(5, (0..4).map(|i| (i, i + 1))).unwrap();
        assert!(random_walk_equivalence_check(
            &path,
            LaplacianConfig::new(2.0).unwrap()
        ));
    }

    #[test]
    fn from_parts_validates() {
        let g = complete(3);
        assert!(WeightedSimilarity::from_parts(
            g.clone(),
            SimilarityKind::TriangleCount,
            vec![1.0; 2]
        )
        .is_err());
        assert!(WeightedSimilarity::from_parts(
            g.clone(),
            SimilarityKind::TriangleCount,
            vec![1.0, -1.0, 0.0]
        )
        .is_err());
        let sim =
            WeightedSimilarity::from_parts(g, SimilarityKind::TriangleCount, vec![3.0, 2.0, 1.0])
                .unwrap();
        assert_eq!(sim.weight(1, 2), Some(1.0));
    }
}
