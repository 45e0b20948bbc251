// SPDX-License-Identifier: Apache-2.0

//! Seed expansion and single-linkage clustering over an edge similarity.
//!
//! An edge survives a threshold `cut` iff its weight is `>= cut`. The local
//! cluster of a seed is everything reachable from it through surviving edges.
//! The global clustering at `cut` is the set of components of the surviving
//! edges, read off a maximum spanning forest built once and then cut at any
//! level.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::similarity::WeightedSimilarity;

fn check_cut(cut: f64) -> Result<()> {
    if cut.is_nan() || cut < 0.0 {
        Err(Error::domain(format!(
            "cut must be non-negative, got {cut}"
        )))
    } else {
        Ok(())
    }
}

/// Order in which [`local_trans_with`] processes its frontier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frontier {
    BreadthFirst,
    DepthFirst,
}

/// Nodes reachable from `seed` through edges of weight `>= cut`, sorted.
pub fn local_trans(sim: &WeightedSimilarity, seed: usize, cut: f64) -> Result<Vec<usize>> {
    local_trans_with(sim, seed, cut, Frontier::BreadthFirst)
}

pub fn local_trans_with(
    sim: &WeightedSimilarity,
    seed: usize,
    cut: f64,
    frontier: Frontier,
) -> Result<Vec<usize>> {
    let g = sim.graph();
    g.check_node(seed)?;
    check_cut(cut)?;

    let mut members = HashSet::from([seed]);
    let mut pending = VecDeque::from([seed]);
    loop {
        let next = match frontier {
            Frontier::BreadthFirst => pending.pop_front(),
            Frontier::DepthFirst => pending.pop_back(),
        };
        let Some(u) = next else { break };
        for (v, e) in g.incident_edges(u) {
            if sim.edge_weight(e) >= cut && members.insert(v) {
                pending.push_back(v);
            }
        }
    }
    let mut out: Vec<usize> = members.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// One forest edge of a [`Dendrogram`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Merge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Maximum spanning forest of a similarity, edges in non-increasing weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    n: usize,
    merges: Vec<Merge>,
}

impl Dendrogram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }
}

/// Kruskal on edges sorted by non-increasing weight, ties broken by `(u, v)`.
pub fn build_dendrogram(sim: &WeightedSimilarity) -> Dendrogram {
    let edges = sim.graph().edges();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&a, &b| {
        sim.edge_weight(b)
            .total_cmp(&sim.edge_weight(a))
            .then(edges[a].cmp(&edges[b]))
    });
    kruskal(sim, order)
}

/// Kruskal over a caller-supplied edge order, which must be sorted by
/// non-increasing weight.
pub(crate) fn kruskal(sim: &WeightedSimilarity, order: Vec<usize>) -> Dendrogram {
    let n = sim.graph().n();
    let edges = sim.graph().edges();
    let mut uf = UnionFind::new(n);
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    for e in order {
        let (u, v) = edges[e];
        if uf.union(u, v) {
            merges.push(Merge {
                u,
                v,
                weight: sim.edge_weight(e),
            });
            if merges.len() + 1 == n {
                break;
            }
        }
    }
    Dendrogram { n, merges }
}

/// A partition of the nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSet {
    labels: Vec<usize>,
    count: usize,
    cut: f64,
}

impl ClusterSet {
    /// Relabels `roots` so clusters are numbered by their smallest node.
    fn from_roots(roots: impl IntoIterator<Item = usize>, n: usize, cut: f64) -> Self {
        let mut relabel = vec![usize::MAX; n];
        let mut count = 0;
        let labels = roots
            .into_iter()
            .map(|r| {
                if relabel[r] == usize::MAX {
                    relabel[r] = count;
                    count += 1;
                }
                relabel[r]
            })
            .collect();
        ClusterSet { labels, count, cut }
    }

    /// Cluster index of each node; cluster `c` is the one whose smallest
    /// member is the `c`-th smallest among cluster minima.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> usize {
        self.labels[node]
    }

    pub fn cut(&self) -> f64 {
        self.cut
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Members of every cluster, in label order, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.count];
        for (node, &c) in self.labels.iter().enumerate() {
            blocks[c].push(node);
        }
        blocks
    }

    pub fn block_of(&self, node: usize) -> Vec<usize> {
        let c = self.labels[node];
        (0..self.labels.len())
            .filter(|&i| self.labels[i] == c)
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &c in &self.labels {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Components of the forest edges with weight `>= cut`.
pub fn cut_dendrogram(d: &Dendrogram, cut: f64) -> Result<ClusterSet> {
    check_cut(cut)?;
    let mut uf = UnionFind::new(d.n);
    for m in d.merges.iter().take_while(|m| m.weight >= cut) {
        uf.union(m.u, m.v);
    }
    let roots: Vec<usize> = (0..d.n).map(|i| uf.find(i)).collect();
    Ok(ClusterSet::from_roots(roots, d.n, cut))
}

/// Single-linkage clusters of `sim` at level `cut`.
pub fn global_trans(sim: &WeightedSimilarity, cut: f64) -> Result<ClusterSet> {
    check_cut(cut)?;
    cut_dendrogram(&build_dendrogram(sim), cut)
}
