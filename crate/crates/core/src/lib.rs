// SPDX-License-Identifier: Apache-2.0

//! Triangle-support graph clustering.
//!
//! Edges are weighted by the triangles they close, either by raw count or
//! through a regularized normalized Laplacian, and clusters are grown from a
//! seed ([`clustering::local_trans`]) or read off a single-linkage dendrogram
//! ([`clustering::global_trans`]). The [`models`] and [`experiments`] modules
//! sample planted-block random graphs and measure how often the planted block
//! is recovered.

pub mod cli;
pub mod clustering;
pub mod error;
pub mod experiments;
pub mod format;
pub mod graph;
pub mod metrics;
pub mod models;
pub mod rng;
pub mod similarity;

pub use clustering::{
    build_dendrogram, cut_dendrogram, global_trans, local_trans, ClusterSet, Dendrogram,
};
pub use error::{Error, Result};
pub use graph::{load_edge_list, write_edge_list, EdgeList, UndirectedGraph};
pub use metrics::{
    avg_clustering, count_triangles, local_clustering, transitivity_ratio, GraphStats,
};
pub use similarity::{
    laplacian_support, random_walk_equivalence_check, triangle_support, LaplacianConfig,
    SimilarityKind, WeightedSimilarity,
};
