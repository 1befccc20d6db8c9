//! C ABI over `walknet`.
//!
//! Graphs cross the boundary as opaque `WnGraph` handles owned by the caller
//! and released with `wn_graph_free`. Every fallible call returns a
//! `WnStatus`; on failure `wn_last_error_message` describes the error for the
//! calling thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use walknet::metrics::AsplMode;
use walknet::{DistanceModel, Error, GenParams, Graph, InitialGraphSpec, NodeId, RngSeed};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnStatus {
    Ok = 0,
    InvalidInput = 1,
    Disconnected = 2,
    Io = 3,
    Parse = 4,
    NullPointer = 5,
    Panic = 6,
}

/// Shape of the starting graph.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnInitialKind {
    Cycle = 0,
    Complete = 1,
    /// Edge-list file named by `initial_path`.
    File = 2,
}

/// Generation parameters. Fill with `wn_gen_params_default` and override fields.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct WnGenParams {
    pub initial_kind: WnInitialKind,
    /// Node count for `Cycle` and `Complete`.
    pub initial_size: u64,
    /// NUL-terminated path for `File`; ignored otherwise.
    pub initial_path: *const c_char,
    pub nodes_to_add: u64,
    pub marks_per_walk: u64,
    pub p1: f64,
    /// `false` runs the no-shortcut baseline.
    pub special_edges: bool,
    pub beta: f64,
    pub epsilon: f64,
    pub seed: u64,
}

/// Measurements of one graph. `gamma` is NaN when fewer than two distinct degrees exist.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct WnMetrics {
    pub node_count: u64,
    pub edge_count: u64,
    pub avg_local_clustering: f64,
    pub transitivity: f64,
    pub avg_shortest_path: f64,
    pub gamma: f64,
    pub max_degree: u64,
    /// 0 for exact path lengths, otherwise the number of BFS sources used.
    pub aspl_sources: u64,
}

/// Opaque graph handle.
pub struct WnGraph {
    inner: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

struct Failure(WnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidInput(_) => WnStatus::InvalidInput,
            Error::Disconnected { .. } => WnStatus::Disconnected,
            Error::Io { .. } => WnStatus::Io,
            Error::Parse { .. } | Error::Csv(_) => WnStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(WnStatus::NullPointer, format!("{what} is null"))
}

fn guard<F>(f: F) -> WnStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WnStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            WnStatus::Panic
        }
    }
}

unsafe fn path_arg(p: *const c_char, what: &str) -> Result<PathBuf, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    let s = CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(WnStatus::InvalidInput, format!("{what} is not UTF-8")))?;
    Ok(PathBuf::from(s))
}

unsafe fn graph_ref<'a>(g: *const WnGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn graph_mut<'a>(g: *mut WnGraph) -> Result<&'a mut Graph, Failure> {
    g.as_mut()
        .map(|h| &mut h.inner)
        .ok_or_else(|| null("graph"))
}

fn into_handle(g: Graph) -> *mut WnGraph {
    Box::into_raw(Box::new(WnGraph { inner: g }))
}

/// Message of the last failed call on this thread, or NULL. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn wn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// C10 start, N = 1000, m = 5, p1 = 0.5, shortcuts on, beta = 2, epsilon = 0.05, seed 0.
#[no_mangle]
pub unsafe extern "C" fn wn_gen_params_default(out: *mut WnGenParams) -> WnStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let model = DistanceModel::default();
        *out = WnGenParams {
            initial_kind: WnInitialKind::Cycle,
            initial_size: 10,
            initial_path: ptr::null(),
            nodes_to_add: 1000,
            marks_per_walk: 5,
            p1: 0.5,
            special_edges: true,
            beta: model.beta,
            epsilon: model.epsilon,
            seed: 0,
        };
        Ok(())
    })
}

/// A new empty graph. Never NULL.
#[no_mangle]
pub extern "C" fn wn_graph_new() -> *mut WnGraph {
    into_handle(Graph::new())
}

/// Releases a graph. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn wn_graph_free(g: *mut WnGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of nodes; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn wn_graph_node_count(g: *const WnGraph) -> u64 {
    g.as_ref().map_or(0, |h| h.inner.node_count() as u64)
}

/// Number of edges; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn wn_graph_edge_count(g: *const WnGraph) -> u64 {
    g.as_ref().map_or(0, |h| h.inner.edge_count() as u64)
}

#[no_mangle]
pub unsafe extern "C" fn wn_graph_add_node(g: *mut WnGraph, out_id: *mut u32) -> WnStatus {
    guard(|| {
        let graph = graph_mut(g)?;
        let id = graph.add_node();
        if let Some(out) = out_id.as_mut() {
            *out = id.0;
        }
        Ok(())
    })
}

/// Adds edge `{u, v}`. `inserted` (optional) receives false for self-loops and existing edges.
#[no_mangle]
pub unsafe extern "C" fn wn_graph_add_edge(
    g: *mut WnGraph,
    u: u32,
    v: u32,
    inserted: *mut bool,
) -> WnStatus {
    guard(|| {
        let graph = graph_mut(g)?;
        let added = graph.add_edge(NodeId(u), NodeId(v))?;
        if let Some(out) = inserted.as_mut() {
            *out = added;
        }
        Ok(())
    })
}

/// Borrows the neighbor list of `v`. The array stays valid until the graph is mutated or freed.
#[no_mangle]
pub unsafe extern "C" fn wn_graph_neighbors(
    g: *const WnGraph,
    v: u32,
    out_ids: *mut *const u32,
    out_len: *mut usize,
) -> WnStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        let ids = out_ids.as_mut().ok_or_else(|| null("out_ids"))?;
        let len = out_len.as_mut().ok_or_else(|| null("out_len"))?;
        let v = NodeId(v);
        if !graph.contains_node(v) {
            return Err(Failure(
                WnStatus::InvalidInput,
                format!(
                    "node {v} out of range (graph has {} nodes)",
                    graph.node_count()
                ),
            ));
        }
        let ns = graph.neighbors(v);
        // NodeId is a transparent u32.
        *ids = ns.as_ptr().cast::<u32>();
        *len = ns.len();
        Ok(())
    })
}

/// Loads an edge-list file into a new graph stored in `*out`.
#[no_mangle]
pub unsafe extern "C" fn wn_graph_read_edge_list(
    path: *const c_char,
    out: *mut *mut WnGraph,
) -> WnStatus {
    guard(|| {
        let path = path_arg(path, "path")?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = into_handle(Graph::read_edge_list(path)?);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn wn_graph_write_edge_list(
    g: *const WnGraph,
    path: *const c_char,
) -> WnStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        let path = path_arg(path, "path")?;
        graph.write_edge_list(path)?;
        Ok(())
    })
}

unsafe fn gen_params(p: &WnGenParams) -> Result<GenParams, Failure> {
    let initial = match p.initial_kind {
        WnInitialKind::Cycle => InitialGraphSpec::Cycle(p.initial_size as usize),
        WnInitialKind::Complete => InitialGraphSpec::Complete(p.initial_size as usize),
        WnInitialKind::File => InitialGraphSpec::File(path_arg(p.initial_path, "initial_path")?),
    };
    Ok(GenParams {
        initial,
        nodes_to_add: p.nodes_to_add as usize,
        marks_per_walk: p.marks_per_walk as usize,
        p1: p.p1,
        special_edges: p.special_edges,
        distance: DistanceModel {
            beta: p.beta,
            epsilon: p.epsilon,
        },
        seed: RngSeed(p.seed),
    })
}

/// Grows a graph; on success `*out` owns a new handle.
#[no_mangle]
pub unsafe extern "C" fn wn_generate(
    params: *const WnGenParams,
    out: *mut *mut WnGraph,
) -> WnStatus {
    guard(|| {
        let params = params.as_ref().ok_or_else(|| null("params"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let params = gen_params(params)?;
        *out = into_handle(walknet::generate(&params)?);
        Ok(())
    })
}

/// Measures a connected graph. `aspl_sources == 0` computes exact path lengths;
/// otherwise that many BFS sources are drawn with `aspl_seed`.
#[no_mangle]
pub unsafe extern "C" fn wn_measure(
    g: *const WnGraph,
    aspl_sources: u64,
    aspl_seed: u64,
    out: *mut WnMetrics,
) -> WnStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let mode = match aspl_sources {
            0 => AsplMode::Exact,
            k => AsplMode::Sampled {
                sources: k as usize,
                seed: aspl_seed,
            },
        };
        let m = walknet::measure(graph, mode)?;
        *out = WnMetrics {
            node_count: m.node_count as u64,
            edge_count: m.edge_count as u64,
            avg_local_clustering: m.avg_local_clustering,
            transitivity: m.transitivity,
            avg_shortest_path: m.avg_shortest_path,
            gamma: m.gamma.unwrap_or(f64::NAN),
            max_degree: m.max_degree as u64,
            aspl_sources,
        };
        Ok(())
    })
}

/// Branching-process diameter estimate used to size the shortcut distances.
#[no_mangle]
pub unsafe extern "C" fn wn_estimate_diameter(
    node_count: u64,
    edge_count: u64,
    epsilon: f64,
    out: *mut f64,
) -> WnStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = walknet::sampling::estimate_diameter(
            node_count as usize,
            edge_count as usize,
            epsilon,
        )?;
        Ok(())
    })
}
