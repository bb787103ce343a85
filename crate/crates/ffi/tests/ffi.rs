// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use dephasim_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(dph_last_error()) }.to_string_lossy().into_owned()
}

fn system(qubits: u32, s: f64) -> *mut DphSystem {
    let mut sys = ptr::null_mut();
    let status = unsafe { dph_system_new(qubits, 0.0, DPH_VARIANT_PAPER, 20.0, 1.0, s, 3.0, f64::INFINITY, &mut sys) };
    assert_eq!(status, DphStatus::Ok, "{}", last_error());
    assert!(!sys.is_null());
    sys
}

#[test]
fn kernels_and_trace_distance() {
    let sys = system(1, 3.0);
    let mut k = DphKernels::default();
    assert_eq!(unsafe { dph_kernels(sys, 0.0, &mut k) }, DphStatus::Ok);
    assert_eq!(k, DphKernels::default());
    assert_eq!(unsafe { dph_kernels(sys, 20.0, &mut k) }, DphStatus::Ok);
    // s = 3: Gamma saturates at G Gamma(3) / 2 = 1.
    assert!((k.gamma - 1.0).abs() < 1e-3);
    let mut d = 0.0;
    assert_eq!(unsafe { dph_trace_distance(sys, 20.0, &mut d) }, DphStatus::Ok);
    assert!((d - (-k.gamma).exp()).abs() < 1e-15);
    unsafe { dph_system_free(sys) };
}

#[test]
fn relative_entropy_values() {
    let mut s = 0.0;
    assert_eq!(unsafe { dph_relative_entropy(0.5, &mut s) }, DphStatus::Ok);
    assert!((s - 3f64.ln() * 0.5).abs() < 1e-15);
    assert_eq!(unsafe { dph_relative_entropy(1.5, &mut s) }, DphStatus::ContractViolation);
    assert!(!last_error().is_empty());
}

#[test]
fn measure_handle_exposes_intervals() {
    let sys = system(1, 3.0);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { dph_measure(sys, 20001, 0.0, &mut m) }, DphStatus::Ok);
    let mut summary = DphMeasureSummary::default();
    assert_eq!(unsafe { dph_measure_summary(m, &mut summary) }, DphStatus::Ok);
    assert_eq!(summary.interval_count, 1);
    assert!((summary.blp - 0.0431).abs() < 1e-3);
    let mut iv = DphInterval::default();
    assert_eq!(unsafe { dph_measure_interval(m, 0, &mut iv) }, DphStatus::Ok);
    assert!((iv.t_start - 3f64.sqrt() / 3.0).abs() < 1e-6);
    assert_eq!(iv.t_end, 20.0);
    assert!((iv.d_end - iv.d_start - summary.blp).abs() < 1e-15);
    assert_eq!(unsafe { dph_measure_interval(m, 1, &mut iv) }, DphStatus::IndexOutOfRange);
    unsafe {
        dph_measure_free(m);
        dph_system_free(sys);
    }
}

#[test]
fn error_codes() {
    let mut sys = ptr::null_mut();
    let st = unsafe { dph_system_new(1, 0.0, DPH_VARIANT_PAPER, 20.0, 1.0, -1.0, 3.0, f64::INFINITY, &mut sys) };
    assert_eq!(st, DphStatus::InvalidArgument);
    assert!(last_error().contains("`s`"), "{}", last_error());
    assert!(sys.is_null());
    let st = unsafe { dph_system_new(1, 0.0, 7, 20.0, 1.0, 1.0, 3.0, f64::INFINITY, &mut sys) };
    assert_eq!(st, DphStatus::InvalidArgument);
    let st = unsafe { dph_system_new(1, 0.0, DPH_VARIANT_PAPER, 20.0, 1.0, 1.0, 3.0, 2.0, ptr::null_mut()) };
    assert_eq!(st, DphStatus::NullPointer);

    let mut d = 0.0;
    assert_eq!(unsafe { dph_trace_distance(ptr::null(), 1.0, &mut d) }, DphStatus::NullPointer);
    let sys = system(2, 1.0);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { dph_measure(sys, 10, 0.0, &mut m) }, DphStatus::ContractViolation);
    assert!(m.is_null());
    assert_eq!(unsafe { dph_trace_distance(sys, 1.0, ptr::null_mut()) }, DphStatus::NullPointer);
    // A success clears the message.
    assert_eq!(unsafe { dph_trace_distance(sys, 1.0, &mut d) }, DphStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe {
        dph_system_free(sys);
        dph_system_free(ptr::null_mut());
        dph_measure_free(ptr::null_mut());
    }
}

#[test]
fn finite_temperature_system() {
    let mut sys = ptr::null_mut();
    let st = unsafe { dph_system_new(1, 0.0, DPH_VARIANT_PAIRWISE, 20.0, 1.0, 1.0, 1.0, 1.0, &mut sys) };
    assert_eq!(st, DphStatus::Ok);
    let mut k = DphKernels::default();
    assert_eq!(unsafe { dph_kernels(sys, 1.0, &mut k) }, DphStatus::Ok);
    assert!((k.gamma - 0.955_272_808_323_74).abs() < 1e-9);
    unsafe { dph_system_free(sys) };
}

#[test]
fn generated_header_compiles_as_c() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/dephasim.h");
    let text = std::fs::read_to_string(&header).expect("header generated by the build script");
    for name in ["dph_system_new", "dph_measure_interval", "dph_last_error", "DPH_STATUS_NUMERICAL_FAILURE"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include <math.h>\n#include \"dephasim.h\"\n\
         int main(void) {\n  DphSystem *s = NULL;\n  DphStatus st = dph_system_new(2, 0.0, DPH_VARIANT_PAPER, 20.0, 1.0, 3.0, 3.0, INFINITY, &s);\n\
           if (st != DPH_STATUS_OK) return 1;\n  dph_system_free(s);\n  return 0;\n}\n",
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    match Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header.parent().unwrap())
        .arg(&src)
        .output()
    {
        Ok(o) => assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr)),
        Err(e) => eprintln!("skipping C compile check, `{cc}` unavailable: {e}"),
    }
}
