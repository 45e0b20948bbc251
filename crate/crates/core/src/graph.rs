// SPDX-License-Identifier: Apache-2.0

//! Immutable sparse undirected simple graphs.
//!
//! Adjacency is stored in compressed sparse row form with every neighbor list
//! strictly sorted. Each undirected edge gets an id in lexicographic order of
//! its `(u, v)` endpoints with `u < v`, and every adjacency slot records the id
//! of the edge it belongs to, so per-edge data can be stored once and looked
//! up from either endpoint.
//!
//! Graphs loaded from text keep the original node ids. Dense ids are assigned
//! in ascending order of the original ids.

use std::io::{BufRead, Write};
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug)]
struct GraphData {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    slot_edge: Vec<usize>,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<u64>>,
}

/// Simple undirected graph: no self-loops, no parallel edges.
///
/// Cloning is cheap; the adjacency arrays are shared.
#[derive(Debug, Clone)]
pub struct UndirectedGraph {
    inner: Arc<GraphData>,
}

impl PartialEq for UndirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.inner.offsets == other.inner.offsets
            && self.inner.neighbors == other.inner.neighbors
            && (0..self.n()).all(|i| self.original_id(i) == other.original_id(i))
    }
}

impl Eq for UndirectedGraph {}

impl UndirectedGraph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_arcs(n, Vec::new(), None)
    }

    /// Builds a graph on nodes `0..n`.
    ///
    /// Self-loops are dropped, duplicates collapsed and reverse edges added.
    /// An endpoint `>= n` is an error.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let iter = edges.into_iter();
        let mut arcs = Vec::with_capacity(2 * iter.size_hint().0);
        for (u, v) in iter {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if u != v {
                arcs.push((u, v));
                arcs.push((v, u));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        Ok(Self::from_sorted_arcs(n, arcs, None))
    }

    /// `arcs` must be sorted, deduplicated, loop-free and symmetric.
    fn from_sorted_arcs(n: usize, arcs: Vec<(usize, usize)>, labels: Option<Vec<u64>>) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &arcs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors: Vec<usize> = arcs.into_iter().map(|(_, v)| v).collect();

        // Edges (u, v) with u < v are visited in ascending u, which is also the
        // order in which the lower entries of adj[v] appear, so a per-node
        // cursor finds the reverse slot without searching.
        let mut slot_edge = vec![0usize; neighbors.len()];
        let mut edges = Vec::with_capacity(neighbors.len() / 2);
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        for u in 0..n {
            for slot in offsets[u]..offsets[u + 1] {
                let v = neighbors[slot];
                if v > u {
                    let id = edges.len();
                    edges.push((u, v));
                    slot_edge[slot] = id;
                    slot_edge[cursor[v]] = id;
                    cursor[v] += 1;
                }
            }
        }

        UndirectedGraph {
            inner: Arc::new(GraphData {
                offsets,
                neighbors,
                slot_edge,
                edges,
                labels,
            }),
        }
    }

    pub fn n(&self) -> usize {
        self.inner.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.inner.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n() == 0
    }

    pub(crate) fn check_node(&self, node: usize) -> Result<()> {
        if node < self.n() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node, n: self.n() })
        }
    }

    pub fn degree(&self, i: usize) -> Result<usize> {
        self.check_node(i)?;
        Ok(self.degree_unchecked(i))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, i: usize) -> usize {
        self.inner.offsets[i + 1] - self.inner.offsets[i]
    }

    /// Degrees of all nodes, indexed by node.
    pub fn degrees(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.inner.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn mean_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m() as f64 / self.n() as f64
        }
    }

    /// Sorted neighbor list of `i`.
    ///
    /// # Panics
    /// If `i` is not a node of the graph.
    #[inline]
    pub fn neighbors(&self, i: usize) -> &[usize] {
        let o = &self.inner.offsets;
        &self.inner.neighbors[o[i]..o[i + 1]]
    }

    /// `(neighbor, edge id)` pairs of `i`, in ascending neighbor order.
    #[inline]
    pub fn incident_edges(&self, i: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let o = &self.inner.offsets;
        let range = o[i]..o[i + 1];
        self.inner.neighbors[range.clone()]
            .iter()
            .copied()
            .zip(self.inner.slot_edge[range].iter().copied())
    }

    /// Edges as `(u, v)` with `u < v`, sorted; the index is the edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.inner.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n() && j < self.n() && self.neighbors(i).binary_search(&j).is_ok()
    }

    pub fn edge_id(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n() || j >= self.n() {
            return None;
        }
        let pos = self.neighbors(i).binary_search(&j).ok()?;
        Some(self.inner.slot_edge[self.inner.offsets[i] + pos])
    }

    /// Id this node had in the source file, or the dense id when the graph
    /// was not loaded from one.
    pub fn original_id(&self, i: usize) -> u64 {
        match &self.inner.labels {
            Some(labels) => labels[i],
            None => i as u64,
        }
    }

    /// Dense id of an original id.
    pub fn node_for_original(&self, id: u64) -> Option<usize> {
        match &self.inner.labels {
            Some(labels) => labels.binary_search(&id).ok(),
            None => usize::try_from(id).ok().filter(|&i| i < self.n()),
        }
    }

    /// `|N_i ∩ N_j|` by sorted-list intersection.
    pub fn common_neighbor_count(&self, i: usize, j: usize) -> Result<usize> {
        self.check_node(i)?;
        self.check_node(j)?;
        if i == j {
            return Err(Error::domain(format!(
                "common neighbor count needs two distinct nodes, got {i} twice"
            )));
        }
        let mut count = 0;
        for_each_common(self.neighbors(i), self.neighbors(j), |_| count += 1);
        Ok(count)
    }

    /// Subgraph induced by `nodes`; node `k` of the result is the `k`-th
    /// smallest member, and its original id is carried over.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<UndirectedGraph> {
        let mut members = nodes.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&last) = members.last() {
            self.check_node(last)?;
        }
        let mut arcs = Vec::new();
        for (a, &u) in members.iter().enumerate() {
            for_each_common(self.neighbors(u), &members, |v| {
                let b = members.binary_search(&v).expect("member");
                arcs.push((a, b));
            });
        }
        let labels = members.iter().map(|&u| self.original_id(u)).collect();
        Ok(Self::from_sorted_arcs(members.len(), arcs, Some(labels)))
    }
}

/// Calls `f` on every element of `a ∩ b` in ascending order.
///
/// Both slices must be strictly sorted. When one list is much shorter the
/// longer one is probed by galloping search, so the cost stays close to
/// `O(min(|a|, |b|) log max(|a|, |b|))`.
pub(crate) fn for_each_common<F: FnMut(usize)>(a: &[usize], b: &[usize], mut f: F) {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.is_empty() {
        return;
    }
    if large.len() > 16 * small.len() {
        let mut rest = large;
        for &x in small {
            let mut step = 1;
            let mut hi = 0;
            while hi < rest.len() && rest[hi] < x {
                hi += step;
                step *= 2;
            }
            let lo = hi / 2;
            let hi = (hi + 1).min(rest.len());
            match rest[lo..hi].binary_search(&x) {
                Ok(p) => {
                    f(x);
                    rest = &rest[lo + p + 1..];
                }
                Err(p) => rest = &rest[lo + p..],
            }
            if rest.is_empty() {
                break;
            }
        }
    } else {
        let (mut i, mut j) = (0, 0);
        while i < small.len() && j < large.len() {
            match small[i].cmp(&large[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    f(small[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

/// Raw edge list as read from text, before normalization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeList {
    pub pairs: Vec<(u64, u64)>,
}

impl EdgeList {
    /// Parses whitespace-separated integer pairs, one per line. Blank lines
    /// and lines starting with `#` are skipped. Tokens after the second are
    /// ignored.
    pub fn read<R: BufRead>(reader: R) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let mut next = |what: &str| -> Result<u64> {
                let tok = tokens.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: format!("missing {what} node id"),
                })?;
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("invalid node id {tok:?}"),
                })
            };
            let u = next("first")?;
            let v = next("second")?;
            pairs.push((u, v));
        }
        Ok(EdgeList { pairs })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::read(text.as_bytes())
    }

    /// Remaps ids densely (ascending original id) and normalizes to a simple
    /// undirected graph.
    pub fn into_graph(self) -> UndirectedGraph {
        let mut ids: Vec<u64> = self.pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        ids.sort_unstable();
        ids.dedup();
        let dense = |id: u64| ids.binary_search(&id).expect("collected id");
        let mut arcs = Vec::with_capacity(2 * self.pairs.len());
        for &(u, v) in &self.pairs {
            if u != v {
                let (a, b) = (dense(u), dense(v));
                arcs.push((a, b));
                arcs.push((b, a));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        let n = ids.len();
        UndirectedGraph::from_sorted_arcs(n, arcs, Some(ids))
    }
}

/// Reads an edge-list file into a graph.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<UndirectedGraph> {
    Ok(EdgeList::read(reader)?.into_graph())
}

/// Writes each edge once as `u v` with `u < v`, sorted, using original ids.
pub fn write_edge_list<W: Write>(g: &UndirectedGraph, mut out: W) -> Result<()> {
    for &(u, v) in g.edges() {
        writeln!(out, "{} {}", g.original_id(u), g.original_id(v))?;
    }
    out.flush()?;
    Ok(())
}
