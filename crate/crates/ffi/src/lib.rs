//! C ABI over `pgk`.
//!
//! Groups and graphs cross the boundary as opaque handles. Every fallible
//! call returns a [`PgkStatus`]; on failure a message is kept per thread and
//! can be read with [`pgk_last_error_message`]. Handles, strings and index
//! buffers handed out here must be released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pgk::ccg::{mark_ccg_enhanced, mark_ccg_power};
use pgk::graph::{parse_graph, AnyGraph, ColoredGraph};
use pgk::group::{parse_group_spec, FiniteGroup, GroupError};
use pgk::nilpotent::{graph_iso_nilpotent, GraphKind, NilpotentError};
use pgk::powergraph::{directed_power_graph, enhanced_power_graph, power_graph};
use pgk::reconstruction::{reconstruct, SourceKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Io = 4,
    WrongGraphType = 5,
    Pipeline = 6,
    NotNilpotent = 7,
    Panic = 8,
}

/// Graph built from a group.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgkGraphKind {
    Pow = 0,
    Epow = 1,
    Dpow = 2,
    Cdpow = 3,
}

/// Which graph an undirected input is assumed to be.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgkSource {
    Power = 0,
    Enhanced = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgkStage {
    R4 = 0,
    R3 = 1,
    R2 = 2,
    R1 = 3,
    Cdpow = 4,
    Dpow = 5,
}

/// Opaque finite group.
pub struct PgkGroup(FiniteGroup);

/// Opaque graph, directed or undirected.
pub struct PgkGraph(AnyGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PgkStatus, String);

impl Failure {
    fn new(status: PgkStatus, message: impl ToString) -> Self {
        Failure(status, message.to_string())
    }
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PgkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            PgkStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".to_string());
            PgkStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(PgkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure::new(PgkStatus::InvalidUtf8, e))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(PgkStatus::NullPointer, "null handle"))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::new(PgkStatus::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

fn undirected(g: &AnyGraph) -> Result<&ColoredGraph, Failure> {
    match g {
        AnyGraph::Undirected(g) => Ok(g),
        AnyGraph::Directed(_) => Err(Failure::new(
            PgkStatus::WrongGraphType,
            "expected an undirected graph",
        )),
    }
}

fn group_failure(e: GroupError) -> Failure {
    match e {
        GroupError::Io { .. } => Failure::new(PgkStatus::Io, e),
        _ => Failure::new(PgkStatus::Parse, e),
    }
}

/// Message for the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next `pgk_*` call on the same thread.
#[no_mangle]
pub extern "C" fn pgk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a group spec such as `Z12`, `Q8`, `Z2xZ6` or `file:path`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pgk_group_parse(spec: *const c_char, out: *mut *mut PgkGroup) -> PgkStatus {
    guard(|| {
        check_out(out)?;
        let g = parse_group_spec(str_arg(spec)?).map_err(group_failure)?;
        *out = Box::into_raw(Box::new(PgkGroup(g)));
        Ok(())
    })
}

/// # Safety
/// `group` must be NULL or a handle from `pgk_group_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pgk_group_free(group: *mut PgkGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Order of the group, 0 for a NULL handle.
///
/// # Safety
/// `group` must be NULL or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn pgk_group_order(group: *const PgkGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.order())
}

/// # Safety
/// `group` must be a live group handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pgk_graph_from_group(
    group: *const PgkGroup,
    kind: PgkGraphKind,
    out: *mut *mut PgkGraph,
) -> PgkStatus {
    guard(|| {
        check_out(out)?;
        let g = &handle(group)?.0;
        let graph: AnyGraph = match kind {
            PgkGraphKind::Pow => power_graph(g).into(),
            PgkGraphKind::Epow => enhanced_power_graph(g).into(),
            PgkGraphKind::Dpow => directed_power_graph(g).without_colors().into(),
            PgkGraphKind::Cdpow => directed_power_graph(g).into(),
        };
        *out = Box::into_raw(Box::new(PgkGraph(graph)));
        Ok(())
    })
}

/// Parses a graph in the text format written by `pgk_graph_to_string`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pgk_graph_parse(text: *const c_char, out: *mut *mut PgkGraph) -> PgkStatus {
    guard(|| {
        check_out(out)?;
        let g = parse_graph(str_arg(text)?).map_err(|e| Failure::new(PgkStatus::Parse, e))?;
        *out = Box::into_raw(Box::new(PgkGraph(g)));
        Ok(())
    })
}

/// Writes the graph's text form into a new string; free it with `pgk_string_free`.
///
/// # Safety
/// `graph` must be a live graph handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pgk_graph_to_string(graph: *const PgkGraph, out: *mut *mut c_char) -> PgkStatus {
    guard(|| {
        check_out(out)?;
        let text = handle(graph)?.0.to_text();
        *out = CString::new(text)
            .map_err(|e| Failure::new(PgkStatus::Parse, e))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `graph` must be NULL or a graph handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pgk_graph_free(graph: *mut PgkGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn pgk_graph_vertex_count(graph: *const PgkGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `graph` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn pgk_graph_is_directed(graph: *const PgkGraph) -> bool {
    matches!(graph.as_ref(), Some(PgkGraph(AnyGraph::Directed(_))))
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pgk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Finds the vertices generating maximal cyclic subgroups, one per class of
/// closed twins. The indices are written to a new buffer of `*out_len`
/// entries; release it with `pgk_indices_free`.
///
/// # Safety
/// `graph` must be a live graph handle; `out` and `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pgk_detect(
    graph: *const PgkGraph,
    source: PgkSource,
    out: *mut *mut usize,
    out_len: *mut usize,
) -> PgkStatus {
    guard(|| {
        check_out(out)?;
        check_out(out_len)?;
        let g = undirected(&handle(graph)?.0)?;
        let marking = match source {
            PgkSource::Power => mark_ccg_power(g),
            PgkSource::Enhanced => mark_ccg_enhanced(g),
        }
        .map_err(|e| Failure::new(PgkStatus::Pipeline, e))?;
        let boxed = marking.cc_vertices().into_boxed_slice();
        *out_len = boxed.len();
        *out = Box::into_raw(boxed) as *mut usize;
        Ok(())
    })
}

/// # Safety
/// `ptr` and `len` must come from one `pgk_detect` call, or `ptr` is NULL.
#[no_mangle]
pub unsafe extern "C" fn pgk_indices_free(ptr: *mut usize, len: usize) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(ptr, len)));
    }
}

/// Rebuilds the directed power graph (or an intermediate stage) from an
/// undirected power graph or enhanced power graph.
///
/// # Safety
/// `graph` must be a live graph handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pgk_reconstruct(
    graph: *const PgkGraph,
    source: PgkSource,
    stage: PgkStage,
    out: *mut *mut PgkGraph,
) -> PgkStatus {
    guard(|| {
        check_out(out)?;
        let g = undirected(&handle(graph)?.0)?;
        let kind = match source {
            PgkSource::Power => SourceKind::Power,
            PgkSource::Enhanced => SourceKind::Enhanced,
        };
        let r = reconstruct(g, kind).map_err(|e| Failure::new(PgkStatus::Pipeline, e))?;
        let result: AnyGraph = match stage {
            PgkStage::R4 => r.r4.graph().clone().into(),
            PgkStage::R3 => r.r3.graph().clone().into(),
            PgkStage::R2 => r.r2.graph().clone().into(),
            PgkStage::R1 => r.r1.graph().clone().into(),
            PgkStage::Cdpow => r.cdpow.into(),
            PgkStage::Dpow => r.cdpow.without_colors().into(),
        };
        *out = Box::into_raw(Box::new(PgkGraph(result)));
        Ok(())
    })
}

/// Decides isomorphism of two graphs of nilpotent groups. `kind` must be
/// `Pow`, `Epow` or `Dpow`.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pgk_iso_nilpotent(
    first: *const PgkGraph,
    second: *const PgkGraph,
    kind: PgkGraphKind,
    out: *mut bool,
) -> PgkStatus {
    guard(|| {
        check_out(out)?;
        let kind = match kind {
            PgkGraphKind::Pow => GraphKind::Pow,
            PgkGraphKind::Epow => GraphKind::Epow,
            PgkGraphKind::Dpow => GraphKind::Dpow,
            PgkGraphKind::Cdpow => {
                return Err(Failure::new(PgkStatus::WrongGraphType, "colored input is not accepted"))
            }
        };
        let answer = graph_iso_nilpotent(&handle(first)?.0, &handle(second)?.0, kind).map_err(|e| match e {
            NilpotentError::NotNilpotent { .. } => Failure::new(PgkStatus::NotNilpotent, e),
            NilpotentError::WrongGraphType { .. } => Failure::new(PgkStatus::WrongGraphType, e),
            _ => Failure::new(PgkStatus::Pipeline, e),
        })?;
        *out = answer;
        Ok(())
    })
}
