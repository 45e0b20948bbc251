// SPDX-License-Identifier: Apache-2.0

//! Triangle counts, transitivity ratio and clustering coefficients.
//!
//! Ratios with an empty denominator are defined as 0: the transitivity of a
//! graph without connected triples, and the local clustering of a node with
//! fewer than two neighbors.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::fmt_real;
use crate::graph::{for_each_common, UndirectedGraph};

/// Neighbor lists restricted to higher-ranked nodes, ranking by (degree, id).
/// Every triangle is found exactly once from its lowest-ranked vertex, and
/// no forward list is longer than `sqrt(2m)`.
fn forward_lists(g: &UndirectedGraph) -> Vec<Vec<usize>> {
    let rank_key = |i: usize| (g.degree_unchecked(i), i);
    (0..g.n())
        .into_par_iter()
        .map(|u| {
            let ku = rank_key(u);
            g.neighbors(u)
                .iter()
                .copied()
                .filter(|&v| rank_key(v) > ku)
                .collect()
        })
        .collect()
}

/// Number of triangles, each counted once.
pub fn count_triangles(g: &UndirectedGraph) -> u64 {
    let forward = forward_lists(g);
    // `mark[w] == u` iff w is a forward neighbor of u; a stamp lookup is
    // much cheaper than a branchy sorted merge.
    (0..g.n())
        .into_par_iter()
        .map_init(
            || vec![usize::MAX; g.n()],
            |mark, u| {
                for &v in &forward[u] {
                    mark[v] = u;
                }
                let mut local = 0u64;
                for &v in &forward[u] {
                    local += forward[v].iter().filter(|&&w| mark[w] == u).count() as u64;
                }
                local
            },
        )
        .sum()
}

/// `Σ_j d_j (d_j − 1)`: the number of ordered connected triples.
pub fn two_star_count(g: &UndirectedGraph) -> u64 {
    g.degrees()
        .map(|d| (d as u64) * (d as u64).saturating_sub(1))
        .sum()
}

/// Closed triplets over connected triples, `6·triangles / Σ d(d−1)`.
pub fn transitivity_ratio(g: &UndirectedGraph) -> f64 {
    ratio(6 * count_triangles(g), two_star_count(g))
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn edges_among_neighbors(g: &UndirectedGraph, i: usize) -> u64 {
    let ni = g.neighbors(i);
    let mut twice = 0u64;
    for &u in ni {
        for_each_common(ni, g.neighbors(u), |_| twice += 1);
    }
    twice / 2
}

fn local_clustering_unchecked(g: &UndirectedGraph, i: usize) -> f64 {
    let d = g.degree_unchecked(i) as u64;
    if d < 2 {
        return 0.0;
    }
    ratio(edges_among_neighbors(g, i), d * (d - 1) / 2)
}

/// Edge density of the subgraph induced by the neighbors of `i`.
pub fn local_clustering(g: &UndirectedGraph, i: usize) -> Result<f64> {
    g.check_node(i)?;
    Ok(local_clustering_unchecked(g, i))
}

/// Mean of [`local_clustering`] over all nodes.
pub fn avg_clustering(g: &UndirectedGraph) -> Result<f64> {
    if g.n() == 0 {
        return Err(Error::domain("average clustering of a graph with no nodes"));
    }
    let total: f64 = (0..g.n())
        .into_par_iter()
        .map(|i| local_clustering_unchecked(g, i))
        .collect::<Vec<_>>()
        .iter()
        .sum();
    Ok(total / g.n() as f64)
}

/// Summary statistics of a graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub triangles: u64,
    pub two_stars: u64,
    pub transitivity: f64,
    pub avg_clustering: f64,
    pub mean_degree: f64,
}

impl GraphStats {
    /// Average clustering of the empty graph is reported as 0.
    pub fn compute(g: &UndirectedGraph) -> Self {
        let triangles = count_triangles(g);
        let two_stars = two_star_count(g);
        GraphStats {
            n: g.n(),
            m: g.m(),
            triangles,
            two_stars,
            transitivity: ratio(6 * triangles, two_stars),
            avg_clustering: avg_clustering(g).unwrap_or(0.0),
            mean_degree: g.mean_degree(),
        }
    }

    /// Flat JSON object with reals at 12 significant digits.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"n\":{},\"m\":{},\"triangles\":{},\"two_stars\":{},\"transitivity\":{},\"avg_clustering\":{},\"mean_degree\":{}}}",
            self.n,
            self.m,
            self.triangles,
            self.two_stars,
            fmt_real(self.transitivity),
            fmt_real(self.avg_clustering),
            fmt_real(self.mean_degree),
        )
    }
}
