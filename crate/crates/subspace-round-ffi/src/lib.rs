//! C ABI for the subspace-round library: opaque handles, integer status
//! codes, and a thread-local last-error message. Every entry point catches
//! panics and reports them as `SR_STATUS_PANIC` instead of unwinding across
//! the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ndarray::Array2;
use subspace_round::error::Error;
use subspace_round::graph::{self, WeightedGraph};
use subspace_round::partitions::{delta_partitions, Partition};
use subspace_round::spectral::{self, Embedding};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrStatus {
    Ok = 0,
    /// A null pointer, bad dimension, or otherwise invalid argument.
    InvalidArgument = 1,
    /// Input validation failed (non-orthonormal rows, bad weights, ...).
    InvalidInput = 2,
    /// The algorithm signaled a numeric or structural failure.
    Numeric = 3,
    /// Text input failed to parse.
    Parse = 4,
    /// A panic was caught at the boundary.
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> SrStatus {
    match err {
        Error::Parse { .. } => SrStatus::Parse,
        Error::InvalidEmbedding { .. }
        | Error::NonFiniteEntries
        | Error::NodeOutOfRange { .. }
        | Error::SizesExceedN { .. }
        | Error::EmptySet
        | Error::OverlapDetected { .. }
        | Error::SizeMismatch { .. } => SrStatus::InvalidInput,
        _ => SrStatus::Numeric,
    }
}

fn fail(err: &Error) -> SrStatus {
    set_error(&err.to_string());
    status_of(err)
}

fn guard<F: FnOnce() -> SrStatus>(f: F) -> SrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("panic caught at the FFI boundary");
            SrStatus::Panic
        }
    }
}

/// Opaque embedding handle (k×n matrix with orthonormal rows).
pub struct SrEmbedding {
    inner: Embedding,
}

/// Opaque partition handle (ordered disjoint node sets).
pub struct SrPartition {
    inner: Partition,
}

/// Opaque weighted-graph handle.
pub struct SrGraph {
    inner: WeightedGraph,
}

/// Message for the most recent error on this thread. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Build an embedding from a row-major k×n buffer. On success writes a new
/// handle to `out`; free it with `sr_embedding_free`.
///
/// # Safety
/// `rows` must point to k·n readable doubles and `out` must be a valid
/// location to store a pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_embedding_create(
    rows: *const f64,
    k: usize,
    n: usize,
    out: *mut *mut SrEmbedding,
) -> SrStatus {
    guard(|| {
        if rows.is_null() || out.is_null() || k == 0 || n == 0 {
            set_error("null pointer or zero dimension");
            return SrStatus::InvalidArgument;
        }
        let data = unsafe { std::slice::from_raw_parts(rows, k * n) };
        let matrix = Array2::from_shape_vec((k, n), data.to_vec()).expect("shape checked");
        match Embedding::new(matrix) {
            Ok(embedding) => {
                unsafe {
                    *out = Box::into_raw(Box::new(SrEmbedding { inner: embedding }));
                }
                SrStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `handle` must be null or a pointer from `sr_embedding_create`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_embedding_free(handle: *mut SrEmbedding) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Run the clustering pipeline on an embedding.
///
/// # Safety
/// `embedding` must be a live embedding handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_spectral_clustering(
    embedding: *const SrEmbedding,
    out: *mut *mut SrPartition,
) -> SrStatus {
    guard(|| {
        let (Some(embedding), false) = (unsafe { embedding.as_ref() }, out.is_null()) else {
            set_error("null handle");
            return SrStatus::InvalidArgument;
        };
        match spectral::spectral_clustering(&embedding.inner) {
            Ok(partition) => {
                unsafe {
                    *out = Box::into_raw(Box::new(SrPartition { inner: partition }));
                }
                SrStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// ∥YΓ^⊥∥₂² for an embedding and a partition.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_residual(
    embedding: *const SrEmbedding,
    partition: *const SrPartition,
    out: *mut f64,
) -> SrStatus {
    guard(|| {
        let (Some(embedding), Some(partition)) =
            (unsafe { embedding.as_ref() }, unsafe { partition.as_ref() })
        else {
            set_error("null handle");
            return SrStatus::InvalidArgument;
        };
        if out.is_null() {
            set_error("null output pointer");
            return SrStatus::InvalidArgument;
        }
        if partition.inner.n() != embedding.inner.n() {
            set_error("partition and embedding disagree on n");
            return SrStatus::InvalidArgument;
        }
        unsafe {
            *out = spectral::residual(&embedding.inner, &partition.inner);
        }
        SrStatus::Ok
    })
}

/// Bottleneck similarity between two partitions with the same set count.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_partition_delta(
    a: *const SrPartition,
    b: *const SrPartition,
    out: *mut f64,
) -> SrStatus {
    guard(|| {
        let (Some(a), Some(b)) = (unsafe { a.as_ref() }, unsafe { b.as_ref() }) else {
            set_error("null handle");
            return SrStatus::InvalidArgument;
        };
        if out.is_null() {
            set_error("null output pointer");
            return SrStatus::InvalidArgument;
        }
        match delta_partitions(a.inner.sets(), b.inner.sets()) {
            Ok((delta, _)) => {
                unsafe { *out = delta };
                SrStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Number of sets in a partition; 0 for a null handle.
///
/// # Safety
/// `partition` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_partition_len(partition: *const SrPartition) -> usize {
    unsafe { partition.as_ref() }.map_or(0, |p| p.inner.k())
}

/// Number of nodes the partition is over; 0 for a null handle.
///
/// # Safety
/// `partition` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_partition_n(partition: *const SrPartition) -> usize {
    unsafe { partition.as_ref() }.map_or(0, |p| p.inner.n())
}

/// Size of one set; 0 when the index is out of range.
///
/// # Safety
/// `partition` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sr_partition_set_len(
    partition: *const SrPartition,
    index: usize,
) -> usize {
    unsafe { partition.as_ref() }
        .and_then(|p| p.inner.sets().get(index))
        .map_or(0, |s| s.len())
}

/// Copy the members of one set into `buffer` (up to `capacity` ids) and
/// return how many were written.
///
/// # Safety
/// `partition` must be a live handle and `buffer` must point to `capacity`
/// writable usize slots.
#[no_mangle]
pub unsafe extern "C" fn sr_partition_set_members(
    partition: *const SrPartition,
    index: usize,
    buffer: *mut usize,
    capacity: usize,
) -> usize {
    let Some(p) = (unsafe { partition.as_ref() }) else {
        return 0;
    };
    let Some(set) = p.inner.sets().get(index) else {
        return 0;
    };
    if buffer.is_null() {
        return 0;
    }
    let count = set.len().min(capacity);
    let slice = unsafe { std::slice::from_raw_parts_mut(buffer, count) };
    slice.copy_from_slice(&set.members()[..count]);
    count
}

/// # Safety
/// `handle` must be null or a pointer from a partition-producing call.
#[no_mangle]
pub unsafe extern "C" fn sr_partition_free(handle: *mut SrPartition) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Parse a graph from edge-list text (`u v w` lines, `#` comments, optional
/// `n <int>` header).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_graph_parse(
    text: *const c_char,
    out: *mut *mut SrGraph,
) -> SrStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            set_error("null pointer");
            return SrStatus::InvalidArgument;
        }
        let text = match unsafe { std::ffi::CStr::from_ptr(text) }.to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("graph text is not valid UTF-8");
                return SrStatus::InvalidArgument;
            }
        };
        match subspace_round::io::parse_graph(text) {
            Ok(g) => {
                unsafe {
                    *out = Box::into_raw(Box::new(SrGraph { inner: g }));
                }
                SrStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Cluster a graph into k parts by the smallest-k Laplacian eigenvector
/// embedding, covering every node.
///
/// # Safety
/// `graph_handle` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sr_cluster_graph(
    graph_handle: *const SrGraph,
    k: usize,
    out: *mut *mut SrPartition,
) -> SrStatus {
    guard(|| {
        let Some(g) = (unsafe { graph_handle.as_ref() }) else {
            set_error("null handle");
            return SrStatus::InvalidArgument;
        };
        if out.is_null() {
            set_error("null output pointer");
            return SrStatus::InvalidArgument;
        }
        match graph::cluster_graph(&g.inner, k) {
            Ok((partition, _)) => {
                unsafe {
                    *out = Box::into_raw(Box::new(SrPartition { inner: partition }));
                }
                SrStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `handle` must be null or a pointer from `sr_graph_parse`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_graph_free(handle: *mut SrGraph) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}
