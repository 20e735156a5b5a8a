//! C ABI for the saddle solver.
//!
//! Conventions: every fallible function returns a [`SaddleStatus`] and
//! writes its result through an out-parameter. Handles are opaque; free
//! them with the matching `*_free`. On any non-Ok status,
//! [`saddle_last_error_message`] returns a thread-local description valid
//! until the next failing call on the same thread. Matrices cross the
//! boundary as row-major `double` buffers.

#![warn(unsafe_op_in_unsafe_fn)]
// the pointer contracts are spelled out once in the module docs above
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use saddle_core::diagnostics::{certify, CertificateReport};
use saddle_core::gallery::{
    LpProblem, LsL1Problem, MarkowitzProblem, MatrixGameProblem, ToyProblem,
};
use saddle_core::problem::{random_feasible_init, SaddleProblem, WithReferenceValue};
use saddle_core::projection::SymMatrix;
use saddle_core::schedule::StepSchedule;
use saddle_core::solver::{solve, RunResult, SolverConfig};
use saddle_core::{Error, Matrix, PrimalDualPoint, Vector};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaddleStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NonFinite = 4,
    ScheduleExhausted = 5,
    EigenFailure = 6,
    IndexOutOfRange = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|c| *c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn fail(status: SaddleStatus, msg: &str) -> SaddleStatus {
    set_error(msg);
    status
}

fn status_of(err: &Error) -> SaddleStatus {
    match err {
        Error::DimensionMismatch { .. } => SaddleStatus::DimensionMismatch,
        Error::NonFinite(_) | Error::NonFiniteIterate { .. } => SaddleStatus::NonFinite,
        Error::ScheduleExhausted { .. } => SaddleStatus::ScheduleExhausted,
        Error::EigenFailure(_) => SaddleStatus::EigenFailure,
        _ => SaddleStatus::InvalidArgument,
    }
}

fn from_core(err: Error) -> SaddleStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

fn guarded(f: impl FnOnce() -> SaddleStatus) -> SaddleStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in saddle library".into());
            fail(SaddleStatus::Panic, &msg)
        }
    }
}

/// Message for the most recent failure on this thread. Never null;
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn saddle_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

pub struct SaddleProblemHandle {
    inner: Box<dyn SaddleProblem>,
}

pub struct SaddleScheduleHandle {
    inner: StepSchedule,
}

pub struct SaddleRunHandle {
    inner: RunResult,
}

pub struct SaddleReportHandle {
    report: CertificateReport,
    names: Vec<CString>,
}

unsafe fn slice_arg<'a>(ptr: *const f64, len: u64) -> Option<&'a [f64]> {
    if ptr.is_null() {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts(ptr, len as usize) })
    }
}

fn emit_problem(
    out: *mut *mut SaddleProblemHandle,
    problem: Box<dyn SaddleProblem>,
) -> SaddleStatus {
    if out.is_null() {
        return fail(SaddleStatus::NullArgument, "out pointer is null");
    }
    unsafe {
        *out = Box::into_raw(Box::new(SaddleProblemHandle { inner: problem }));
    }
    SaddleStatus::Ok
}

/// Scalar Lagrangian with saddle (2, 2) and value 5.
#[no_mangle]
pub unsafe extern "C" fn saddle_problem_toy_new(
    out: *mut *mut SaddleProblemHandle,
) -> SaddleStatus {
    guarded(|| emit_problem(out, Box::new(ToyProblem)))
}

/// Matrix game x'Cy on probability simplices; payoff is rows×cols
/// row-major.
#[no_mangle]
pub unsafe extern "C" fn saddle_problem_matrix_game_new(
    rows: u64,
    cols: u64,
    payoff: *const f64,
    out: *mut *mut SaddleProblemHandle,
) -> SaddleStatus {
    guarded(|| {
        let Some(data) = (unsafe { slice_arg(payoff, rows * cols) }) else {
            return fail(SaddleStatus::NullArgument, "payoff pointer is null");
        };
        match Matrix::new(rows as usize, cols as usize, data.to_vec()) {
            Ok(c) => emit_problem(out, Box::new(MatrixGameProblem::new(c))),
            Err(e) => from_core(e),
        }
    })
}

/// Lagrangian of the inequality-form LP min{c'x : Ax <= b}; a is m×n
/// row-major, b has m entries, c has n entries.
#[no_mangle]
pub unsafe extern "C" fn saddle_problem_lp_new(
    m: u64,
    n: u64,
    a: *const f64,
    b: *const f64,
    c: *const f64,
    out: *mut *mut SaddleProblemHandle,
) -> SaddleStatus {
    guarded(|| {
        let (Some(a), Some(b), Some(c)) = (
            unsafe { slice_arg(a, m * n) },
            unsafe { slice_arg(b, m) },
            unsafe { slice_arg(c, n) },
        ) else {
            return fail(
                SaddleStatus::NullArgument,
                "matrix or vector pointer is null",
            );
        };
        let build = || -> Result<LpProblem, Error> {
            LpProblem::new(
                Matrix::new(m as usize, n as usize, a.to_vec())?,
                Vector::from_slice(b)?,
                Vector::from_slice(c)?,
            )
        };
        match build() {
            Ok(p) => emit_problem(out, Box::new(p)),
            Err(e) => from_core(e),
        }
    })
}

/// Lagrangian of min ½‖u‖² + gamma‖x‖₁ s.t. u = Ax − b; primal block is
/// (x, u) of length n + m.
#[no_mangle]
pub unsafe extern "C" fn saddle_problem_lsl1_new(
    m: u64,
    n: u64,
    a: *const f64,
    b: *const f64,
    gamma: f64,
    out: *mut *mut SaddleProblemHandle,
) -> SaddleStatus {
    guarded(|| {
        let (Some(a), Some(b)) = (unsafe { slice_arg(a, m * n) }, unsafe { slice_arg(b, m) })
        else {
            return fail(
                SaddleStatus::NullArgument,
                "matrix or vector pointer is null",
            );
        };
        let build = || -> Result<LsL1Problem, Error> {
            LsL1Problem::new(
                Matrix::new(m as usize, n as usize, a.to_vec())?,
                Vector::from_slice(b)?,
                gamma,
            )
        };
        match build() {
            Ok(p) => emit_problem(out, Box::new(p)),
            Err(e) => from_core(e),
        }
    })
}

/// Robust portfolio problem; sigma is the n×n nominal covariance
/// (row-major, must be positive definite), rho the mean uncertainty
/// radii, eta in (0,1), gamma > 0.
#[no_mangle]
pub unsafe extern "C" fn saddle_problem_markowitz_new(
    n: u64,
    mu: *const f64,
    sigma: *const f64,
    rho: *const f64,
    eta: f64,
    gamma: f64,
    out: *mut *mut SaddleProblemHandle,
) -> SaddleStatus {
    guarded(|| {
        let (Some(mu), Some(sigma), Some(rho)) = (
            unsafe { slice_arg(mu, n) },
            unsafe { slice_arg(sigma, n * n) },
            unsafe { slice_arg(rho, n) },
        ) else {
            return fail(SaddleStatus::NullArgument, "mu/sigma/rho pointer is null");
        };
        let build = || -> Result<MarkowitzProblem, Error> {
            MarkowitzProblem::new(
                Vector::from_slice(mu)?,
                SymMatrix::from_flat(n as usize, sigma)?,
                Vector::from_slice(rho)?,
                eta,
                gamma,
            )
        };
        match build() {
            Ok(p) => emit_problem(out, Box::new(p)),
            Err(e) => from_core(e),
        }
    })
}

/// Attach an externally known saddle value (used for dist-to-reference
/// columns and convergence summaries).
#[no_mangle]
pub unsafe extern "C" fn saddle_problem_set_reference_value(
    problem: *mut SaddleProblemHandle,
    value: f64,
) -> SaddleStatus {
    guarded(|| {
        let Some(handle) = (unsafe { problem.as_mut() }) else {
            return fail(SaddleStatus::NullArgument, "problem handle is null");
        };
        if !value.is_finite() {
            return fail(SaddleStatus::NonFinite, "reference value must be finite");
        }
        let placeholder: Box<dyn SaddleProblem> = Box::new(ToyProblem);
        let inner = std::mem::replace(&mut handle.inner, placeholder);
        handle.inner = Box::new(WithReferenceValue::new(inner, value));
        SaddleStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn saddle_problem_dims(
    problem: *const SaddleProblemHandle,
    n_x: *mut u64,
    n_y: *mut u64,
) -> SaddleStatus {
    guarded(|| {
        let Some(handle) = (unsafe { problem.as_ref() }) else {
            return fail(SaddleStatus::NullArgument, "problem handle is null");
        };
        if n_x.is_null() || n_y.is_null() {
            return fail(SaddleStatus::NullArgument, "out pointer is null");
        }
        let (x, y) = handle.inner.dims();
        unsafe {
            *n_x = x as u64;
            *n_y = y as u64;
        }
        SaddleStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn saddle_problem_free(problem: *mut SaddleProblemHandle) {
    if !problem.is_null() {
        drop(unsafe { Box::from_raw(problem) });
    }
}

fn emit_schedule(out: *mut *mut SaddleScheduleHandle, schedule: StepSchedule) -> SaddleStatus {
    if out.is_null() {
        return fail(SaddleStatus::NullArgument, "out pointer is null");
    }
    unsafe {
        *out = Box::into_raw(Box::new(SaddleScheduleHandle { inner: schedule }));
    }
    SaddleStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn saddle_schedule_constant_new(
    alpha: f64,
    out: *mut *mut SaddleScheduleHandle,
) -> SaddleStatus {
    guarded(|| match StepSchedule::constant(alpha) {
        Ok(s) => emit_schedule(out, s),
        Err(e) => from_core(e),
    })
}

/// Finite-horizon schedule t_k = 1/(horizon+1−k); pass `reversed = true`
/// for the flipped (descending) ordering.
#[no_mangle]
pub unsafe extern "C" fn saddle_schedule_reversed_harmonic_new(
    horizon: u64,
    reversed: bool,
    out: *mut *mut SaddleScheduleHandle,
) -> SaddleStatus {
    guarded(
        || match StepSchedule::reversed_harmonic(horizon as usize).with_reversed(reversed) {
            Ok(s) => emit_schedule(out, s),
            Err(e) => from_core(e),
        },
    )
}

#[no_mangle]
pub unsafe extern "C" fn saddle_schedule_harmonic_new(
    out: *mut *mut SaddleScheduleHandle,
) -> SaddleStatus {
    guarded(|| emit_schedule(out, StepSchedule::harmonic()))
}

#[no_mangle]
pub unsafe extern "C" fn saddle_schedule_custom_new(
    steps: *const f64,
    len: u64,
    out: *mut *mut SaddleScheduleHandle,
) -> SaddleStatus {
    guarded(|| {
        let Some(steps) = (unsafe { slice_arg(steps, len) }) else {
            return fail(SaddleStatus::NullArgument, "steps pointer is null");
        };
        match StepSchedule::custom(steps.to_vec()) {
            Ok(s) => emit_schedule(out, s),
            Err(e) => from_core(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn saddle_schedule_free(schedule: *mut SaddleScheduleHandle) {
    if !schedule.is_null() {
        drop(unsafe { Box::from_raw(schedule) });
    }
}

/// How the initial point is chosen.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaddleInitKind {
    /// Zero vector, projected into the feasible sets.
    Zero = 0,
    /// Uniform in a ball of `init_radius`, projected.
    Random = 1,
    /// Explicit concatenated (x, y) of length n_x + n_y in `init_values`.
    Explicit = 2,
}

/// Solve options. Start from [`saddle_solve_options_default`] and adjust.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SaddleSolveOptions {
    /// Number of update steps K; the trace covers k = 0..=K.
    pub iters: u64,
    pub seed: u64,
    /// Trace thinning; k = 0 and k = K are always recorded.
    pub record_every: u64,
    /// Keep per-iterate data so the run can be certified.
    pub store_iterates: bool,
    pub init_kind: SaddleInitKind,
    pub init_radius: f64,
    pub init_values: *const f64,
    pub init_len: u64,
}

#[no_mangle]
pub unsafe extern "C" fn saddle_solve_options_default(
    out: *mut SaddleSolveOptions,
) -> SaddleStatus {
    guarded(|| {
        if out.is_null() {
            return fail(SaddleStatus::NullArgument, "out pointer is null");
        }
        unsafe {
            *out = SaddleSolveOptions {
                iters: 1000,
                seed: 0,
                record_every: 1,
                store_iterates: false,
                init_kind: SaddleInitKind::Zero,
                init_radius: 1.0,
                init_values: std::ptr::null(),
                init_len: 0,
            };
        }
        SaddleStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn saddle_solve(
    problem: *const SaddleProblemHandle,
    schedule: *const SaddleScheduleHandle,
    options: *const SaddleSolveOptions,
    out: *mut *mut SaddleRunHandle,
) -> SaddleStatus {
    guarded(|| {
        let (Some(problem), Some(schedule), Some(options)) = (
            unsafe { problem.as_ref() },
            unsafe { schedule.as_ref() },
            unsafe { options.as_ref() },
        ) else {
            return fail(
                SaddleStatus::NullArgument,
                "problem/schedule/options is null",
            );
        };
        if out.is_null() {
            return fail(SaddleStatus::NullArgument, "out pointer is null");
        }
        let (n_x, n_y) = problem.inner.dims();
        let init = match options.init_kind {
            SaddleInitKind::Zero => PrimalDualPoint::zeros(n_x, n_y),
            SaddleInitKind::Random => {
                random_feasible_init(&problem.inner, options.init_radius, options.seed)
            }
            SaddleInitKind::Explicit => {
                let Some(values) = (unsafe { slice_arg(options.init_values, options.init_len) })
                else {
                    return fail(SaddleStatus::NullArgument, "init_values pointer is null");
                };
                if values.len() != n_x + n_y {
                    return fail(
                        SaddleStatus::DimensionMismatch,
                        &format!(
                            "init has {} entries, problem needs {}",
                            values.len(),
                            n_x + n_y
                        ),
                    );
                }
                let x = match Vector::from_slice(&values[..n_x]) {
                    Ok(v) => v,
                    Err(e) => return from_core(e),
                };
                let y = match Vector::from_slice(&values[n_x..]) {
                    Ok(v) => v,
                    Err(e) => return from_core(e),
                };
                PrimalDualPoint::new(x, y)
            }
        };
        let cfg = SolverConfig {
            max_iters: options.iters as usize,
            schedule: schedule.inner.clone(),
            init,
            record_every: options.record_every as usize,
            rng_seed: options.seed,
            store_iterates: options.store_iterates,
        };
        match solve(&problem.inner, &cfg) {
            Ok(run) => {
                unsafe {
                    *out = Box::into_raw(Box::new(SaddleRunHandle { inner: run }));
                }
                SaddleStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// One trace record. `dist_to_ref` is NaN (and `has_dist_to_ref` false)
/// when the problem carries no reference point.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SaddleTraceRow {
    pub k: u64,
    pub t_k: f64,
    pub f_iter: f64,
    pub f_weighted: f64,
    pub f_avg_point: f64,
    pub subgrad_norm: f64,
    pub dist_to_ref: f64,
    pub has_dist_to_ref: bool,
}

#[no_mangle]
pub unsafe extern "C" fn saddle_run_trace_len(run: *const SaddleRunHandle) -> u64 {
    match unsafe { run.as_ref() } {
        Some(run) => run.inner.trace.len() as u64,
        None => 0,
    }
}

#[no_mangle]
pub unsafe extern "C" fn saddle_run_trace_row(
    run: *const SaddleRunHandle,
    index: u64,
    out: *mut SaddleTraceRow,
) -> SaddleStatus {
    guarded(|| {
        let Some(run) = (unsafe { run.as_ref() }) else {
            return fail(SaddleStatus::NullArgument, "run handle is null");
        };
        if out.is_null() {
            return fail(SaddleStatus::NullArgument, "out pointer is null");
        }
        let Some(rec) = run.inner.trace.get(index as usize) else {
            return fail(
                SaddleStatus::IndexOutOfRange,
                &format!("row {index} out of range ({} rows)", run.inner.trace.len()),
            );
        };
        unsafe {
            *out = SaddleTraceRow {
                k: rec.k as u64,
                t_k: rec.t_k,
                f_iter: rec.f_iter,
                f_weighted: rec.f_weighted,
                f_avg_point: rec.f_avg_point,
                subgrad_norm: rec.subgrad_norm,
                dist_to_ref: rec.dist_to_ref.unwrap_or(f64::NAN),
                has_dist_to_ref: rec.dist_to_ref.is_some(),
            };
        }
        SaddleStatus::Ok
    })
}

/// Copy the final step-weighted averages into caller buffers of exactly
/// n_x and n_y entries.
#[no_mangle]
pub unsafe extern "C" fn saddle_run_final_average(
    run: *const SaddleRunHandle,
    x_out: *mut f64,
    x_len: u64,
    y_out: *mut f64,
    y_len: u64,
) -> SaddleStatus {
    guarded(|| {
        let Some(run) = (unsafe { run.as_ref() }) else {
            return fail(SaddleStatus::NullArgument, "run handle is null");
        };
        if x_out.is_null() || y_out.is_null() {
            return fail(SaddleStatus::NullArgument, "out buffer is null");
        }
        let avg = &run.inner.final_average;
        let (n_x, n_y) = avg.dims();
        if x_len as usize != n_x || y_len as usize != n_y {
            return fail(
                SaddleStatus::DimensionMismatch,
                &format!("buffers sized {x_len}/{y_len}, need {n_x}/{n_y}"),
            );
        }
        unsafe {
            std::ptr::copy_nonoverlapping(avg.x().as_slice().as_ptr(), x_out, n_x);
            std::ptr::copy_nonoverlapping(avg.y().as_slice().as_ptr(), y_out, n_y);
        }
        SaddleStatus::Ok
    })
}

/// max over the run of ‖(g_k, h_k)‖.
#[no_mangle]
pub unsafe extern "C" fn saddle_run_empirical_subgrad_bound(run: *const SaddleRunHandle) -> f64 {
    match unsafe { run.as_ref() } {
        Some(run) => run.inner.empirical_subgrad_bound,
        None => f64::NAN,
    }
}

#[no_mangle]
pub unsafe extern "C" fn saddle_run_free(run: *mut SaddleRunHandle) {
    if !run.is_null() {
        drop(unsafe { Box::from_raw(run) });
    }
}

/// One certificate check. `name` stays valid while the report handle
/// lives.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SaddleReportRow {
    pub name: *const c_char,
    pub applicable: bool,
    pub worst_violation: f64,
    pub k_at_worst: u64,
    pub pass: bool,
}

/// Evaluate every certificate check on a run that stored its iterates.
#[no_mangle]
pub unsafe extern "C" fn saddle_certify(
    problem: *const SaddleProblemHandle,
    run: *const SaddleRunHandle,
    out: *mut *mut SaddleReportHandle,
) -> SaddleStatus {
    guarded(|| {
        let (Some(problem), Some(run)) = (unsafe { problem.as_ref() }, unsafe { run.as_ref() })
        else {
            return fail(SaddleStatus::NullArgument, "problem/run handle is null");
        };
        if out.is_null() {
            return fail(SaddleStatus::NullArgument, "out pointer is null");
        }
        match certify(&run.inner, &problem.inner) {
            Ok(report) => {
                let names = report
                    .entries
                    .iter()
                    .map(|e| CString::new(e.name.clone()).unwrap_or_default())
                    .collect();
                unsafe {
                    *out = Box::into_raw(Box::new(SaddleReportHandle { report, names }));
                }
                SaddleStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn saddle_report_len(report: *const SaddleReportHandle) -> u64 {
    match unsafe { report.as_ref() } {
        Some(r) => r.report.entries.len() as u64,
        None => 0,
    }
}

#[no_mangle]
pub unsafe extern "C" fn saddle_report_row(
    report: *const SaddleReportHandle,
    index: u64,
    out: *mut SaddleReportRow,
) -> SaddleStatus {
    guarded(|| {
        let Some(handle) = (unsafe { report.as_ref() }) else {
            return fail(SaddleStatus::NullArgument, "report handle is null");
        };
        if out.is_null() {
            return fail(SaddleStatus::NullArgument, "out pointer is null");
        }
        let Some(entry) = handle.report.entries.get(index as usize) else {
            return fail(
                SaddleStatus::IndexOutOfRange,
                &format!(
                    "row {index} out of range ({} rows)",
                    handle.report.entries.len()
                ),
            );
        };
        unsafe {
            *out = SaddleReportRow {
                name: handle.names[index as usize].as_ptr(),
                applicable: entry.applicable,
                worst_violation: entry.worst_violation,
                k_at_worst: entry.k_at_worst as u64,
                pass: entry.pass,
            };
        }
        SaddleStatus::Ok
    })
}

/// True iff every applicable check passed.
#[no_mangle]
pub unsafe extern "C" fn saddle_report_all_pass(report: *const SaddleReportHandle) -> bool {
    match unsafe { report.as_ref() } {
        Some(r) => r.report.all_pass(),
        None => false,
    }
}

#[no_mangle]
pub unsafe extern "C" fn saddle_report_free(report: *mut SaddleReportHandle) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}
