// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

//! C interface to `dephasim`.
//!
//! Every function returns a [`DphStatus`]; on failure the message is
//! available from [`dph_last_error`] on the same thread. Handles are opaque
//! and owned by the caller until passed to the matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dephasim::bath::{self, InverseTemperature, SpectralParams};
use dephasim::dynamics::{self, ModelConfig, Variant};
use dephasim::measures::{self, MeasureResult};
use dephasim::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DphStatus {
    Ok = 0,
    InvalidArgument = 1,
    ContractViolation = 2,
    NumericalFailure = 3,
    NullPointer = 4,
    IndexOutOfRange = 5,
    Panic = 6,
}

pub const DPH_VARIANT_PAPER: u32 = 0;
pub const DPH_VARIANT_PAIRWISE: u32 = 1;

/// Qubit register plus bath parameters.
pub struct DphSystem {
    model: ModelConfig,
    params: SpectralParams,
}

/// Result of a measure computation, including its backflow intervals.
pub struct DphMeasure {
    result: MeasureResult,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DphKernels {
    pub gamma: f64,
    pub delta: f64,
    pub gamma_rate: f64,
    pub delta_rate: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DphMeasureSummary {
    pub blp: f64,
    pub entropy: f64,
    pub interval_count: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DphInterval {
    pub t_start: f64,
    pub t_end: f64,
    pub d_start: f64,
    pub d_end: f64,
    pub s_start: f64,
    pub s_end: f64,
    /// Nonzero when the interval opens at a zero of the partner factor.
    pub kink_start: u8,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("NUL bytes removed"));
}

fn fail(status: DphStatus, msg: impl Into<String>) -> DphStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> DphStatus {
    let status = match e {
        Error::InvalidParameter { .. } => DphStatus::InvalidArgument,
        Error::ContractViolation(_) => DphStatus::ContractViolation,
        Error::NumericalFailure { .. } => DphStatus::NumericalFailure,
    };
    fail(status, e.to_string())
}

/// Run `f`, turning panics into [`DphStatus::Panic`].
fn guard(f: impl FnOnce() -> DphStatus) -> DphStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == DphStatus::Ok {
                set_error("");
            }
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(DphStatus::Panic, format!("internal panic: {msg}"))
        }
    }
}

/// Message for the most recent failure on this thread, or an empty string.
///
/// The pointer stays valid until the next `dph_` call on the same thread.
#[no_mangle]
pub extern "C" fn dph_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Create a system. Pass `beta = INFINITY` for zero temperature.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn dph_system_new(
    qubits: u32,
    omega0: f64,
    variant: u32,
    horizon: f64,
    coupling: f64,
    ohmicity: f64,
    cutoff: f64,
    beta: f64,
    out: *mut *mut DphSystem,
) -> DphStatus {
    guard(|| {
        if out.is_null() {
            return fail(DphStatus::NullPointer, "out is null");
        }
        let variant = match variant {
            DPH_VARIANT_PAPER => Variant::Paper,
            DPH_VARIANT_PAIRWISE => Variant::Pairwise,
            v => return fail(DphStatus::InvalidArgument, format!("unknown variant {v}")),
        };
        let beta = if beta == f64::INFINITY {
            InverseTemperature::Infinite
        } else {
            InverseTemperature::Finite(beta)
        };
        let built = ModelConfig::new(qubits as usize, omega0, variant, horizon)
            .and_then(|model| Ok((model, SpectralParams::new(coupling, ohmicity, cutoff, beta)?)));
        match built {
            Ok((model, params)) => {
                // SAFETY: checked non-null above; caller guarantees it is writable.
                unsafe { *out = Box::into_raw(Box::new(DphSystem { model, params })) };
                DphStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `system` must be null or a handle from [`dph_system_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dph_system_free(system: *mut DphSystem) {
    if !system.is_null() {
        // SAFETY: caller guarantees the pointer came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(system) });
    }
}

/// # Safety
/// `system` must be a live handle or null.
unsafe fn system_ref<'a>(system: *const DphSystem) -> Option<&'a DphSystem> {
    // SAFETY: forwarded from the caller's contract.
    unsafe { system.as_ref() }
}

/// Write `value` through `out`, checking for null.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn store<T>(out: *mut T, value: T) -> DphStatus {
    if out.is_null() {
        return fail(DphStatus::NullPointer, "out is null");
    }
    // SAFETY: non-null and, by contract, writable.
    unsafe { out.write(value) };
    DphStatus::Ok
}

/// Decoherence exponent, indirect interaction and their time derivatives.
///
/// # Safety
/// `system` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dph_kernels(system: *const DphSystem, t: f64, out: *mut DphKernels) -> DphStatus {
    guard(|| {
        // SAFETY: forwarded from the caller's contract.
        let Some(sys) = (unsafe { system_ref(system) }) else {
            return fail(DphStatus::NullPointer, "system is null");
        };
        match bath::kernel_values(&sys.params, t) {
            // SAFETY: forwarded from the caller's contract.
            Ok(k) => unsafe {
                store(
                    out,
                    DphKernels {
                        gamma: k.gamma,
                        delta: k.delta,
                        gamma_rate: k.gamma_rate,
                        delta_rate: k.delta_rate,
                    },
                )
            },
            Err(e) => from_error(e),
        }
    })
}

/// Trace distance between the two evolved states at time `t`.
///
/// # Safety
/// `system` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dph_trace_distance(system: *const DphSystem, t: f64, out: *mut f64) -> DphStatus {
    guard(|| {
        // SAFETY: forwarded from the caller's contract.
        let Some(sys) = (unsafe { system_ref(system) }) else {
            return fail(DphStatus::NullPointer, "system is null");
        };
        match dynamics::trace_distance(&sys.model, &sys.params, t) {
            // SAFETY: forwarded from the caller's contract.
            Ok(d) => unsafe { store(out, d) },
            Err(e) => from_error(e),
        }
    })
}

/// Relative entropy between the two evolved states as a function of their trace distance.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dph_relative_entropy(trace_distance: f64, out: *mut f64) -> DphStatus {
    guard(|| match dynamics::relative_entropy(trace_distance) {
        // SAFETY: forwarded from the caller's contract.
        Ok(s) => unsafe { store(out, s) },
        Err(e) => from_error(e),
    })
}

/// Compute both measures over `[0, T]`. Pass `tol <= 0` for the default `1e-9 T`.
///
/// # Safety
/// `system` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dph_measure(
    system: *const DphSystem,
    grid_points: usize,
    tol: f64,
    out: *mut *mut DphMeasure,
) -> DphStatus {
    guard(|| {
        // SAFETY: forwarded from the caller's contract.
        let Some(sys) = (unsafe { system_ref(system) }) else {
            return fail(DphStatus::NullPointer, "system is null");
        };
        if out.is_null() {
            return fail(DphStatus::NullPointer, "out is null");
        }
        let tol = if tol > 0.0 { tol } else { measures::default_tolerance(sys.model.horizon()) };
        match measures::measure(&sys.model, &sys.params, grid_points, tol) {
            Ok(result) => {
                // SAFETY: checked non-null above.
                unsafe { *out = Box::into_raw(Box::new(DphMeasure { result })) };
                DphStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `measure` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dph_measure_summary(measure: *const DphMeasure, out: *mut DphMeasureSummary) -> DphStatus {
    guard(|| {
        // SAFETY: forwarded from the caller's contract.
        let Some(m) = (unsafe { measure.as_ref() }) else {
            return fail(DphStatus::NullPointer, "measure is null");
        };
        let r = &m.result;
        // SAFETY: forwarded from the caller's contract.
        unsafe {
            store(
                out,
                DphMeasureSummary {
                    blp: r.blp,
                    entropy: r.entropy,
                    interval_count: r.intervals.len(),
                },
            )
        }
    })
}

/// # Safety
/// `measure` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dph_measure_interval(measure: *const DphMeasure, index: usize, out: *mut DphInterval) -> DphStatus {
    guard(|| {
        // SAFETY: forwarded from the caller's contract.
        let Some(m) = (unsafe { measure.as_ref() }) else {
            return fail(DphStatus::NullPointer, "measure is null");
        };
        let Some(iv) = m.result.intervals.get(index) else {
            return fail(
                DphStatus::IndexOutOfRange,
                format!("interval {index} of {}", m.result.intervals.len()),
            );
        };
        // SAFETY: forwarded from the caller's contract.
        unsafe {
            store(
                out,
                DphInterval {
                    t_start: iv.t_start,
                    t_end: iv.t_end,
                    d_start: iv.d_start,
                    d_end: iv.d_end,
                    s_start: iv.s_start,
                    s_end: iv.s_end,
                    kink_start: iv.kink_start as u8,
                },
            )
        }
    })
}

/// # Safety
/// `measure` must be null or a handle from [`dph_measure`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dph_measure_free(measure: *mut DphMeasure) {
    if !measure.is_null() {
        // SAFETY: caller guarantees the pointer came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(measure) });
    }
}
