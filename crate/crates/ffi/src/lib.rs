//! C interface to `hitree`.
//!
//! Graphs and trees are opaque handles owned by the caller and released with
//! the matching `*_free` function. Every fallible call returns a
//! [`HitStatus`]; on failure a message is available from [`hit_last_error`]
//! on the same thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hitree::certificates::{degree2_independent, find_bad_path};
use hitree::io::from_graph6;
use hitree::oracle::count_spanning_trees;
use hitree::reduction::{find_structure, high_degree_set, ReductionError, StructureResult};
use hitree::synthesis::{build_good_tree, build_tree_no_adjacent_deg2, SynthesisError};
use hitree::{Edge, Graph, Tree};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// A legitimate negative outcome, such as no star cover.
    NotFound = 3,
    BufferTooSmall = 4,
    /// A certificate failed after construction; indicates a bug.
    Internal = 5,
    Panic = 6,
}

/// Opaque graph handle.
pub struct HitGraph(Graph);

/// Opaque spanning-tree handle; remembers the graph it spans.
pub struct HitTree(Tree);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (HitStatus, String);

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> HitStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HitStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            HitStatus::Panic
        }
    }
}

fn invalid(e: impl ToString) -> Failure {
    (HitStatus::InvalidArgument, e.to_string())
}

unsafe fn graph_ref<'a>(g: *const HitGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.0).ok_or((HitStatus::NullPointer, "graph handle is null".into()))
}

unsafe fn tree_ref<'a>(t: *const HitTree) -> Result<&'a Tree, Failure> {
    t.as_ref().map(|h| &h.0).ok_or((HitStatus::NullPointer, "tree handle is null".into()))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err((HitStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn synthesis_failure(e: SynthesisError) -> Failure {
    let status = match e {
        SynthesisError::Precondition(_) => HitStatus::InvalidArgument,
        SynthesisError::NoStarCover(_) => HitStatus::NotFound,
        _ => HitStatus::Internal,
    };
    (status, e.to_string())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a simple graph on `n` vertices from `edge_count` pairs stored
/// flat in `edges` (`2 * edge_count` entries).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or be null when
/// `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hit_graph_new(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut HitGraph,
) -> HitStatus {
    guard(|| {
        check_out(out)?;
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err((HitStatus::NullPointer, "edge array is null".into()));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let g = Graph::from_edges(n, flat.chunks(2).map(|p| (p[0], p[1]))).map_err(invalid)?;
        *out = Box::into_raw(Box::new(HitGraph(g)));
        Ok(())
    })
}

/// Parses a graph6 string.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hit_graph_from_graph6(text: *const c_char, out: *mut *mut HitGraph) -> HitStatus {
    guard(|| {
        check_out(out)?;
        if text.is_null() {
            return Err((HitStatus::NullPointer, "text is null".into()));
        }
        let s = CStr::from_ptr(text).to_str().map_err(invalid)?;
        let g = from_graph6(s).map_err(invalid)?;
        *out = Box::into_raw(Box::new(HitGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hit_graph_vertex_count(g: *const HitGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.vertex_count())
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hit_graph_edge_count(g: *const HitGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.edge_count())
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hit_graph_free(g: *mut HitGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Spanning tree with no three consecutive vertices that have tree degree 2
/// and graph degree at least 3.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hit_build_good_tree(g: *const HitGraph, out: *mut *mut HitTree) -> HitStatus {
    guard(|| {
        check_out(out)?;
        let g = graph_ref(g)?;
        let built = build_good_tree(g).map_err(synthesis_failure)?;
        *out = Box::into_raw(Box::new(HitTree(built.tree)));
        Ok(())
    })
}

/// Spanning tree whose degree-2 vertices are pairwise non-adjacent, via a
/// large bipartite subgraph and a cover by stars with at least 6 leaves.
/// Returns `NotFound` when no such cover is found.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hit_build_no_adjacent_deg2(g: *const HitGraph, out: *mut *mut HitTree) -> HitStatus {
    guard(|| {
        check_out(out)?;
        let g = graph_ref(g)?;
        let t = build_tree_no_adjacent_deg2(g).map_err(synthesis_failure)?;
        *out = Box::into_raw(Box::new(HitTree(t)));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a live tree handle.
#[no_mangle]
pub unsafe extern "C" fn hit_tree_edge_count(t: *const HitTree) -> usize {
    t.as_ref().map_or(0, |h| h.0.edge_count())
}

/// Copies the sorted edges as flat pairs into `buf`, which holds `cap`
/// values; `cap` must be at least twice the edge count.
///
/// # Safety
/// `t` must be a live tree handle and `buf` writable for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn hit_tree_edges(t: *const HitTree, buf: *mut usize, cap: usize) -> HitStatus {
    guard(|| {
        let t = tree_ref(t)?;
        let need = 2 * t.edge_count();
        if cap < need {
            return Err((HitStatus::BufferTooSmall, format!("need {need} slots, got {cap}")));
        }
        if need > 0 {
            check_out(buf)?;
            let out = std::slice::from_raw_parts_mut(buf, need);
            for (i, e) in t.edges().iter().enumerate() {
                out[2 * i] = e.0;
                out[2 * i + 1] = e.1;
            }
        }
        Ok(())
    })
}

/// Builds a tree handle from flat edge pairs, checking that they form a
/// spanning tree of `g`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn hit_tree_new(
    g: *const HitGraph,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut HitTree,
) -> HitStatus {
    guard(|| {
        check_out(out)?;
        let g = graph_ref(g)?;
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err((HitStatus::NullPointer, "edge array is null".into()));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let t = Tree::spanning(g, flat.chunks(2).map(|p| Edge::new(p[0], p[1]))).map_err(invalid)?;
        *out = Box::into_raw(Box::new(HitTree(t)));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a tree handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hit_tree_free(t: *mut HitTree) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Whether `t` has no path of three vertices of tree degree 2 and degree at
/// least 3 in `g`.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hit_tree_is_good(g: *const HitGraph, t: *const HitTree, out: *mut bool) -> HitStatus {
    guard(|| {
        check_out(out)?;
        let (g, t) = (graph_ref(g)?, tree_ref(t)?);
        *out = find_bad_path(g, t).map_err(invalid)?.is_none();
        Ok(())
    })
}

/// # Safety
/// `t` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hit_tree_degree2_independent(t: *const HitTree, out: *mut bool) -> HitStatus {
    guard(|| {
        check_out(out)?;
        *out = degree2_independent(tree_ref(t)?);
        Ok(())
    })
}

fn to_c_string(s: String, out: *mut *mut c_char) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| (HitStatus::Internal, e.to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Exact number of spanning trees as a decimal string; release it with
/// [`hit_string_free`].
///
/// # Safety
/// `g` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hit_count_spanning_trees(g: *const HitGraph, out: *mut *mut c_char) -> HitStatus {
    guard(|| {
        check_out(out)?;
        to_c_string(count_spanning_trees(graph_ref(g)?).to_string(), out)
    })
}

/// A reducible cycle, path or configuration as JSON, using the vertices of
/// degree at least 4 (plus `extra`, `extra_count` ids) as the special set.
///
/// # Safety
/// `g` must be live, `extra` readable for `extra_count` values (or null when
/// zero) and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hit_find_structure(
    g: *const HitGraph,
    extra: *const usize,
    extra_count: usize,
    out: *mut *mut c_char,
) -> HitStatus {
    guard(|| {
        check_out(out)?;
        let g = graph_ref(g)?;
        let mut s: BTreeSet<usize> = high_degree_set(g);
        if extra_count > 0 {
            if extra.is_null() {
                return Err((HitStatus::NullPointer, "extra is null".into()));
            }
            s.extend(std::slice::from_raw_parts(extra, extra_count));
        }
        let found: StructureResult = find_structure(g, &s).map_err(|e| match e {
            ReductionError::Precondition(_) => invalid(e),
            ReductionError::Internal { .. } => (HitStatus::Internal, e.to_string()),
        })?;
        let json = serde_json::to_string(&found).map_err(|e| (HitStatus::Internal, e.to_string()))?;
        to_c_string(json, out)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
