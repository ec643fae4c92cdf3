//! C ABI for `walkmatch`.
//!
//! Objects cross the boundary as opaque handles created by `wm_*_new` and
//! released by the matching `wm_*_free`. Every fallible call returns a
//! [`WmStatus`]; the message of the last failure on the calling thread is
//! available from [`wm_last_error_message`].

use std::cell::RefCell;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use walkmatch::{
    run_matched, BuildConfig, Error, Graph, MatchTolerances, MatchedWalk, ProbabilityVector,
    StochasticSchedule, TransitionMatrix,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidGraph = 2,
    InvalidSchedule = 3,
    InvalidDistribution = 4,
    ConstructionFailed = 5,
    OutOfRange = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque graph handle.
pub struct WmGraph(Graph);

/// Opaque schedule handle.
pub struct WmSchedule(StochasticSchedule);

/// Opaque handle to a quantum walk co-evolving with its classical walk.
pub struct WmWalk(MatchedWalk);

/// Summary of a verified run. `oracle_worst` is NaN when the dense check was skipped.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WmReport {
    pub horizon: usize,
    pub max_abs_deviation: f64,
    pub unitarity_worst: f64,
    pub norm_worst: f64,
    pub closed_form_worst: f64,
    pub oracle_worst: f64,
    pub shift_involution: bool,
    pub passed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> WmStatus {
    match err {
        Error::EmptyGraph
        | Error::SelfLoop(_)
        | Error::DuplicateEdge(..)
        | Error::IsolatedVertex(_)
        | Error::NotAdjacent(..) => WmStatus::InvalidGraph,
        Error::VertexOutOfRange { .. }
        | Error::CoinOutOfRange { .. }
        | Error::IndexOutOfRange { .. } => WmStatus::OutOfRange,
        Error::InvalidSchedule(_) | Error::ScheduleExhausted { .. } => WmStatus::InvalidSchedule,
        Error::InvalidDistribution(_) | Error::DimensionMismatch { .. } => {
            WmStatus::InvalidDistribution
        }
        _ => WmStatus::ConstructionFailed,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), WmStatus>) -> WmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("panic inside walkmatch".into());
            WmStatus::Panic
        }
    }
}

fn fail(err: Error) -> WmStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, WmStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null pointer argument".into());
        WmStatus::NullPointer
    })
}

unsafe fn input<'a, T>(p: *const T, len: usize) -> Result<&'a [T], WmStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        set_error("null pointer argument".into());
        return Err(WmStatus::NullPointer);
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a, T>(p: *mut T, len: usize, needed: usize) -> Result<&'a mut [T], WmStatus> {
    if len < needed {
        set_error(format!("buffer holds {len} values, {needed} needed"));
        return Err(WmStatus::BufferTooSmall);
    }
    if p.is_null() {
        set_error("null pointer argument".into());
        return Err(WmStatus::NullPointer);
    }
    Ok(slice::from_raw_parts_mut(p, needed))
}

unsafe fn publish<T>(out: *mut *mut T, value: T) -> Result<(), WmStatus> {
    if out.is_null() {
        set_error("null output handle".into());
        return Err(WmStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn distribution(n: usize, pi: &[f64]) -> Result<ProbabilityVector, WmStatus> {
    if pi.len() != n {
        return Err(fail(Error::DimensionMismatch {
            expected: n,
            found: pi.len(),
        }));
    }
    ProbabilityVector::new(pi.to_vec()).map_err(fail)
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the buffer size needed for the full message.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn wm_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len() + 1
    })
}

/// Builds a graph from `edge_count` unordered pairs stored as
/// `edges[2 * i], edges[2 * i + 1]`. Vertex ids must be dense from zero.
///
/// # Safety
/// `edges` must point to `2 * edge_count` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wm_graph_new(
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut WmGraph,
) -> WmStatus {
    guard(|| {
        let flat = input(edges, 2 * edge_count)?;
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = Graph::from_edges(&pairs).map_err(fail)?;
        publish(out, WmGraph(g))
    })
}

/// # Safety
/// `graph` must be null or a handle from [`wm_graph_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wm_graph_free(graph: *mut WmGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wm_graph_vertex_count(graph: *const WmGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Number of directed edges (walker dimension), or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wm_graph_dimension(graph: *const WmGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.dimension())
}

/// The `coin`-th smallest neighbor of `vertex`.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wm_graph_eta(
    graph: *const WmGraph,
    vertex: usize,
    coin: usize,
    out: *mut usize,
) -> WmStatus {
    guard(|| {
        let g = deref(graph)?;
        let v = g.0.eta(vertex, coin).map_err(fail)?;
        *output(out, 1, 1)?.first_mut().unwrap() = v;
        Ok(())
    })
}

/// Position of `from` among the sorted neighbors of `to`.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wm_graph_sigma(
    graph: *const WmGraph,
    from: usize,
    to: usize,
    out: *mut usize,
) -> WmStatus {
    guard(|| {
        let g = deref(graph)?;
        let c = g.0.sigma(from, to).map_err(fail)?;
        *output(out, 1, 1)?.first_mut().unwrap() = c;
        Ok(())
    })
}

fn checked_schedule(g: &Graph, s: StochasticSchedule, horizon: usize) -> Result<WmSchedule, WmStatus> {
    walkmatch::validate_schedule(&s, g, horizon)
        .into_result()
        .map_err(fail)?;
    Ok(WmSchedule(s))
}

/// A single column-major `n x n` matrix used at every step.
///
/// # Safety
/// `graph` must be a live handle, `matrix` must point to `len` values, and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wm_schedule_homogeneous(
    graph: *const WmGraph,
    matrix: *const f64,
    len: usize,
    out: *mut *mut WmSchedule,
) -> WmStatus {
    guard(|| {
        let g = &deref(graph)?.0;
        let n = g.vertex_count();
        let m = TransitionMatrix::new(n, input(matrix, len)?.to_vec()).map_err(fail)?;
        publish(out, checked_schedule(g, StochasticSchedule::Homogeneous(m), 1)?)
    })
}

/// `count` column-major matrices stored back to back.
///
/// # Safety
/// `graph` must be a live handle, `matrices` must point to `count * n * n`
/// values, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wm_schedule_sequence(
    graph: *const WmGraph,
    matrices: *const f64,
    count: usize,
    out: *mut *mut WmSchedule,
) -> WmStatus {
    guard(|| {
        let g = &deref(graph)?.0;
        let n = g.vertex_count();
        let data = input(matrices, count * n * n)?;
        let ms = data
            .chunks_exact(n * n)
            .map(|c| TransitionMatrix::new(n, c.to_vec()))
            .collect::<walkmatch::Result<Vec<_>>>()
            .map_err(fail)?;
        publish(out, checked_schedule(g, StochasticSchedule::Sequence(ms), count)?)
    })
}

/// Seeded random matrices, regenerated at every step.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wm_schedule_random(seed: u64, out: *mut *mut WmSchedule) -> WmStatus {
    guard(|| publish(out, WmSchedule(StochasticSchedule::Random { seed })))
}

/// # Safety
/// `schedule` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wm_schedule_free(schedule: *mut WmSchedule) {
    if !schedule.is_null() {
        drop(Box::from_raw(schedule));
    }
}

/// Starts a matched walk from `pi0` (length `n`). The walk keeps its own
/// copies of the graph and schedule.
///
/// # Safety
/// Handles must be live, `pi0` must point to `n` values, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wm_walk_new(
    graph: *const WmGraph,
    schedule: *const WmSchedule,
    pi0: *const f64,
    n: usize,
    out: *mut *mut WmWalk,
) -> WmStatus {
    guard(|| {
        let g = &deref(graph)?.0;
        let s = &deref(schedule)?.0;
        let pi = distribution(g.vertex_count(), input(pi0, n)?)?;
        let walk = MatchedWalk::new(g.clone(), s.clone(), pi, BuildConfig::default()).map_err(fail)?;
        publish(out, WmWalk(walk))
    })
}

/// Builds `W(t)` and advances the quantum and classical walks by one step.
///
/// # Safety
/// `walk` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn wm_walk_step(walk: *mut WmWalk) -> WmStatus {
    guard(|| {
        let w = walk.as_mut().ok_or(WmStatus::NullPointer)?;
        w.0.step().map_err(fail)?;
        Ok(())
    })
}

/// Number of steps taken, or 0 for a null handle.
///
/// # Safety
/// `walk` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wm_walk_time(walk: *const WmWalk) -> usize {
    walk.as_ref().map_or(0, |w| w.0.time())
}

/// Writes `mu(v, t)` for every vertex into `out` (`len >= n`).
///
/// # Safety
/// `walk` must be a live handle and `out` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn wm_walk_vertex_probabilities(
    walk: *const WmWalk,
    out: *mut f64,
    len: usize,
) -> WmStatus {
    guard(|| {
        let mu = deref(walk)?.0.vertex_probabilities();
        output(out, len, mu.len())?.copy_from_slice(&mu);
        Ok(())
    })
}

/// Writes the classical distribution `pi(t)` into `out` (`len >= n`).
///
/// # Safety
/// `walk` must be a live handle and `out` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn wm_walk_classical_probabilities(
    walk: *const WmWalk,
    out: *mut f64,
    len: usize,
) -> WmStatus {
    guard(|| {
        let w = deref(walk)?;
        let pi = w.0.classical().as_slice();
        output(out, len, pi.len())?.copy_from_slice(pi);
        Ok(())
    })
}

/// Writes amplitudes as interleaved `re, im` pairs (`len >= 2 * dimension`).
///
/// # Safety
/// `walk` must be a live handle and `out` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn wm_walk_amplitudes(walk: *const WmWalk, out: *mut f64, len: usize) -> WmStatus {
    guard(|| {
        let amps = deref(walk)?.0.state().amplitudes();
        let buf = output(out, len, 2 * amps.len())?;
        for (pair, a) in buf.chunks_exact_mut(2).zip(amps) {
            pair[0] = a.re;
            pair[1] = a.im;
        }
        Ok(())
    })
}

/// # Safety
/// `walk` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wm_walk_free(walk: *mut WmWalk) {
    if !walk.is_null() {
        drop(Box::from_raw(walk));
    }
}

/// Runs and verifies `steps` matched steps. Returns `WM_STATUS_OK` whenever a
/// report was produced; check `out->passed` for the verdict.
///
/// # Safety
/// Handles must be live, `pi0` must point to `n` values, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wm_run_matched(
    graph: *const WmGraph,
    schedule: *const WmSchedule,
    pi0: *const f64,
    n: usize,
    steps: usize,
    tolerance: f64,
    out: *mut WmReport,
) -> WmStatus {
    guard(|| {
        let g = &deref(graph)?.0;
        let s = &deref(schedule)?.0;
        let pi = distribution(g.vertex_count(), input(pi0, n)?)?;
        if tolerance.is_nan() || tolerance <= 0.0 {
            set_error(format!("tolerance must be positive, got {tolerance}"));
            return Err(WmStatus::ConstructionFailed);
        }
        let report = run_matched(
            g,
            s,
            &pi,
            steps,
            &BuildConfig::default(),
            MatchTolerances::with_deviation(tolerance),
        )
        .map_err(fail)?;
        if !report.passed {
            set_error(report.failures.join("; "));
        }
        let dst = out.as_mut().ok_or(WmStatus::NullPointer)?;
        *dst = WmReport {
            horizon: report.horizon,
            max_abs_deviation: report.max_abs_deviation,
            unitarity_worst: report.unitarity_worst,
            norm_worst: report.norm_worst,
            closed_form_worst: report.closed_form_worst,
            oracle_worst: report.oracle_worst.unwrap_or(f64::NAN),
            shift_involution: report.shift_involution,
            passed: report.passed,
        };
        Ok(())
    })
}
