// SPDX-License-Identifier: Apache-2.0

//! Independent oracles shared by the integration tests: dense matrices,
//! brute-force traversals and seeded random graphs.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transclust::UndirectedGraph;

pub type Dense = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) by flipping a coin for every pair.
pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> UndirectedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).unwrap()
}

/// A graph with random size and density, biased toward clustered structure
/// by overlaying a few dense groups on a sparse background.
pub fn random_graph(rng: &mut impl Rng, max_n: usize) -> UndirectedGraph {
    let n = rng.random_range(1..=max_n);
    let p = rng.random_range(0.0..0.5);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p * 0.3 {
                edges.push((i, j));
            }
        }
    }
    for _ in 0..rng.random_range(0..4) {
        let size = rng.random_range(1..=n.min(8));
        let group: Vec<usize> = (0..size).map(|_| rng.random_range(0..n)).collect();
        for (a, &u) in group.iter().enumerate() {
            for &v in &group[a + 1..] {
                if u != v && rng.random::<f64>() < 0.8 {
                    edges.push((u, v));
                }
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).unwrap()
}

pub fn adjacency(g: &UndirectedGraph) -> Dense {
    let n = g.n();
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    a
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0.0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

pub fn transpose(a: &Dense) -> Dense {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// `(D + τI)^{-1/2} A (D + τI)^{-1/2}`.
pub fn regularized_laplacian(g: &UndirectedGraph, tau: f64) -> Dense {
    let a = adjacency(g);
    let n = g.n();
    let scale: Vec<f64> = (0..n)
        .map(|i| 1.0 / (g.neighbors(i).len() as f64 + tau).sqrt())
        .collect();
    (0..n)
        .map(|i| (0..n).map(|j| scale[i] * a[i][j] * scale[j]).collect())
        .collect()
}

/// `(D + τI)^{-1} A`.
pub fn random_walk_laplacian(g: &UndirectedGraph, tau: f64) -> Dense {
    let a = adjacency(g);
    let n = g.n();
    (0..n)
        .map(|i| {
            let d = g.neighbors(i).len() as f64 + tau;
            (0..n).map(|j| a[i][j] / d).collect()
        })
        .collect()
}

/// `(M M) ∘ M` read off at each edge of `g`, in edge order.
pub fn masked_cube(g: &UndirectedGraph, m: &Dense) -> Vec<f64> {
    let mm = matmul(m, m);
    g.edges().iter().map(|&(u, v)| mm[u][v] * m[u][v]).collect()
}

/// Connected components of the subgraph keeping edges with `keep(edge id)`,
/// labelled by smallest member, found by breadth-first search.
pub fn components(g: &UndirectedGraph, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if keep(e) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut label = vec![usize::MAX; n];
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if label[v] == usize::MAX {
                    label[v] = s;
                    queue.push_back(v);
                }
            }
        }
    }
    label
}

/// Whether two labelings describe the same partition.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    use std::collections::HashMap;
    if a.len() != b.len() {
        return false;
    }
    let mut ab = HashMap::new();
    let mut ba = HashMap::new();
    a.iter()
        .zip(b)
        .all(|(&x, &y)| *ab.entry(x).or_insert(y) == y && *ba.entry(y).or_insert(x) == x)
}

/// Triangles by checking every triple.
pub fn brute_triangles(g: &UndirectedGraph) -> u64 {
    let n = g.n();
    let mut t = 0;
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                continue;
            }
            for k in j + 1..n {
                if g.has_edge(i, k) && g.has_edge(j, k) {
                    t += 1;
                }
            }
        }
    }
    t
}

/// `trace(A³) / Σ d(d−1)`, 0 when there are no two-stars.
pub fn dense_transitivity(g: &UndirectedGraph) -> f64 {
    let a = adjacency(g);
    let a3 = matmul(&matmul(&a, &a), &a);
    let trace: f64 = (0..g.n()).map(|i| a3[i][i]).sum();
    let two_stars: f64 = (0..g.n())
        .map(|i| {
            let d = g.neighbors(i).len() as f64;
            d * (d - 1.0)
        })
        .sum();
    if two_stars == 0.0 {
        0.0
    } else {
        trace / two_stars
    }
}

pub fn bridged_k4s() -> UndirectedGraph {
    let mut edges = Vec::new();
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
