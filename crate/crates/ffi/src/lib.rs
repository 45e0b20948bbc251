// SPDX-License-Identifier: Apache-2.0

//! C ABI over the `transclust` library.
//!
//! Graphs and similarities are opaque heap handles created by `tc_*_new`
//! style functions and released with the matching `tc_*_free`. Fallible
//! calls return a [`TcStatus`]; on failure a message is available from
//! [`tc_last_error_message`] on the same thread until the next failing call.
//!
//! A similarity handle keeps its own reference to the graph it was built
//! from, so the graph handle may be freed first.
//!
//! Variable-length results are written into caller buffers. When the buffer
//! is too small the call returns `TC_STATUS_BUFFER_TOO_SMALL` and stores the
//! required length, so the caller can retry.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use transclust::{
    clustering, load_edge_list, similarity, Error, GraphStats, LaplacianConfig, UndirectedGraph,
    WeightedSimilarity,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NodeOutOfRange = 3,
    ParseError = 4,
    IoError = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque graph handle.
pub struct TcGraph {
    graph: UndirectedGraph,
}

/// Opaque edge-similarity handle.
pub struct TcSimilarity {
    sim: WeightedSimilarity,
}

/// Plain-data copy of the graph statistics.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TcGraphStats {
    pub n: usize,
    pub m: usize,
    pub triangles: u64,
    pub two_stars: u64,
    pub transitivity: f64,
    pub avg_clustering: f64,
    pub mean_degree: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: TcStatus, msg: impl Into<String>) -> TcStatus {
    set_error(msg);
    status
}

fn from_error(err: Error) -> TcStatus {
    let status = match &err {
        Error::Parse { .. } => TcStatus::ParseError,
        Error::NodeOutOfRange { .. } => TcStatus::NodeOutOfRange,
        Error::File { .. } | Error::Io(_) => TcStatus::IoError,
        _ => TcStatus::InvalidArgument,
    };
    fail(status, err.to_string())
}

fn guard<F: FnOnce() -> TcStatus>(f: F) -> TcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(TcStatus::Panic, "internal panic"),
    }
}

fn into_handle<T>(value: T, out: *mut *mut T) -> TcStatus {
    // SAFETY: callers check `out` for null before building `value`.
    unsafe { *out = Box::into_raw(Box::new(value)) };
    TcStatus::Ok
}

/// Copies `items` into `buf` if it fits; always stores the length in `len`.
///
/// # Safety
/// `buf` must be valid for `capacity` writes and `len` for one write.
unsafe fn write_buffer<T: Copy>(
    items: &[T],
    buf: *mut T,
    capacity: usize,
    len: *mut usize,
) -> TcStatus {
    *len = items.len();
    if items.len() > capacity {
        return fail(
            TcStatus::BufferTooSmall,
            format!("buffer holds {capacity} items, {} needed", items.len()),
        );
    }
    if !items.is_empty() {
        if buf.is_null() {
            return fail(TcStatus::NullPointer, "output buffer is null");
        }
        ptr::copy_nonoverlapping(items.as_ptr(), buf, items.len());
    }
    TcStatus::Ok
}

macro_rules! require {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(TcStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph on nodes `0..n` from `edge_count` pairs stored flat in
/// `edges` (`u0, v0, u1, v1, ...`). Self-loops and duplicates are dropped.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (may be NULL when
/// `edge_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut TcGraph,
) -> TcStatus {
    guard(|| {
        require!(out);
        if edge_count > 0 {
            require!(edges);
        }
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs = flat.chunks_exact(2).map(|c| (c[0], c[1]));
        match UndirectedGraph::from_edges(n, pairs) {
            Ok(graph) => into_handle(TcGraph { graph }, out),
            Err(e) => from_error(e),
        }
    })
}

/// Parses an edge list held in a NUL-terminated string.
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_parse(text: *const c_char, out: *mut *mut TcGraph) -> TcStatus {
    guard(|| {
        require!(text, out);
        match load_edge_list(CStr::from_ptr(text).to_bytes()) {
            Ok(graph) => into_handle(TcGraph { graph }, out),
            Err(e) => from_error(e),
        }
    })
}

/// Loads an edge-list file.
///
/// # Safety
/// `path` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_load(path: *const c_char, out: *mut *mut TcGraph) -> TcStatus {
    guard(|| {
        require!(path, out);
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            return fail(TcStatus::InvalidArgument, "path is not valid UTF-8");
        };
        let file = match std::fs::File::open(path) {
            Ok(f) => f,
            Err(e) => return fail(TcStatus::IoError, format!("{path}: {e}")),
        };
        match load_edge_list(BufReader::new(file)) {
            Ok(graph) => into_handle(TcGraph { graph }, out),
            Err(e) => from_error(e),
        }
    })
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `graph` must come from a `tc_graph_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_free(graph: *mut TcGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Node count, 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_node_count(graph: *const TcGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.n())
}

/// Edge count, 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_edge_count(graph: *const TcGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.m())
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_degree(
    graph: *const TcGraph,
    node: usize,
    out: *mut usize,
) -> TcStatus {
    guard(|| {
        require!(graph, out);
        match (*graph).graph.degree(node) {
            Ok(d) => {
                *out = d;
                TcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Id of `node` in the file the graph was loaded from.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_original_id(
    graph: *const TcGraph,
    node: usize,
    out: *mut u64,
) -> TcStatus {
    guard(|| {
        require!(graph, out);
        let g = &(*graph).graph;
        if node >= g.n() {
            return fail(
                TcStatus::NodeOutOfRange,
                format!("node {node} out of range for {} nodes", g.n()),
            );
        }
        *out = g.original_id(node);
        TcStatus::Ok
    })
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_common_neighbors(
    graph: *const TcGraph,
    i: usize,
    j: usize,
    out: *mut usize,
) -> TcStatus {
    guard(|| {
        require!(graph, out);
        match (*graph).graph.common_neighbor_count(i, j) {
            Ok(c) => {
                *out = c;
                TcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_stats(graph: *const TcGraph, out: *mut TcGraphStats) -> TcStatus {
    guard(|| {
        require!(graph, out);
        let s = GraphStats::compute(&(*graph).graph);
        *out = TcGraphStats {
            n: s.n,
            m: s.m,
            triangles: s.triangles,
            two_stars: s.two_stars,
            transitivity: s.transitivity,
            avg_clustering: s.avg_clustering,
            mean_degree: s.mean_degree,
        };
        TcStatus::Ok
    })
}

/// Triangle-count similarity.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_similarity_triangle(
    graph: *const TcGraph,
    out: *mut *mut TcSimilarity,
) -> TcStatus {
    guard(|| {
        require!(graph, out);
        into_handle(
            TcSimilarity {
                sim: similarity::triangle_support(&(*graph).graph),
            },
            out,
        )
    })
}

fn laplacian_config(g: &UndirectedGraph, tau: f64) -> Result<LaplacianConfig, TcStatus> {
    if tau.is_nan() {
        Ok(LaplacianConfig::mean_degree(g))
    } else {
        LaplacianConfig::new(tau).map_err(from_error)
    }
}

/// Regularized-Laplacian similarity. A NaN `tau` selects the mean degree.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_similarity_laplacian(
    graph: *const TcGraph,
    tau: f64,
    out: *mut *mut TcSimilarity,
) -> TcStatus {
    guard(|| {
        require!(graph, out);
        let g = &(*graph).graph;
        match laplacian_config(g, tau) {
            Ok(cfg) => into_handle(
                TcSimilarity {
                    sim: similarity::laplacian_support(g, cfg),
                },
                out,
            ),
            Err(status) => status,
        }
    })
}

/// Releases a similarity. NULL is ignored.
///
/// # Safety
/// `sim` must come from a `tc_similarity_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tc_similarity_free(sim: *mut TcSimilarity) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Weight of edge `(u, v)`; `TC_STATUS_INVALID_ARGUMENT` when it is not an edge.
///
/// # Safety
/// `sim` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_similarity_weight(
    sim: *const TcSimilarity,
    u: usize,
    v: usize,
    out: *mut f64,
) -> TcStatus {
    guard(|| {
        require!(sim, out);
        match (*sim).sim.weight(u, v) {
            Some(w) => {
                *out = w;
                TcStatus::Ok
            }
            None => fail(
                TcStatus::InvalidArgument,
                format!("({u}, {v}) is not an edge"),
            ),
        }
    })
}

/// All edge weights, in edge order (`u < v`, sorted by `(u, v)`).
///
/// # Safety
/// `weights` must be valid for `capacity` writes; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_similarity_weights(
    sim: *const TcSimilarity,
    weights: *mut f64,
    capacity: usize,
    len: *mut usize,
) -> TcStatus {
    guard(|| {
        require!(sim, len);
        write_buffer((*sim).sim.weights(), weights, capacity, len)
    })
}

/// Local cluster of `seed` at threshold `cut`, as sorted node ids.
///
/// # Safety
/// `nodes` must be valid for `capacity` writes; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_local_trans(
    sim: *const TcSimilarity,
    seed: usize,
    cut: f64,
    nodes: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> TcStatus {
    guard(|| {
        require!(sim, len);
        match clustering::local_trans(&(*sim).sim, seed, cut) {
            Ok(members) => write_buffer(&members, nodes, capacity, len),
            Err(e) => from_error(e),
        }
    })
}

/// Global clustering at `cut`: one cluster label per node, labels numbered by
/// smallest member. `cluster_count` receives the number of clusters.
///
/// # Safety
/// `labels` must be valid for `capacity` writes; `len` and `cluster_count`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_global_trans(
    sim: *const TcSimilarity,
    cut: f64,
    labels: *mut usize,
    capacity: usize,
    len: *mut usize,
    cluster_count: *mut usize,
) -> TcStatus {
    guard(|| {
        require!(sim, len, cluster_count);
        match clustering::global_trans(&(*sim).sim, cut) {
            Ok(clusters) => {
                *cluster_count = clusters.len();
                write_buffer(clusters.labels(), labels, capacity, len)
            }
            Err(e) => from_error(e),
        }
    })
}

/// Checks that the symmetric and random-walk Laplacian similarities agree.
/// A NaN `tau` selects the mean degree.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_random_walk_equivalence_check(
    graph: *const TcGraph,
    tau: f64,
    out: *mut bool,
) -> TcStatus {
    guard(|| {
        require!(graph, out);
        let g = &(*graph).graph;
        match laplacian_config(g, tau) {
            Ok(cfg) => {
                *out = similarity::random_walk_equivalence_check(g, cfg);
                TcStatus::Ok
            }
            Err(status) => status,
        }
    })
}
