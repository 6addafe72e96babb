use std::ffi::CString;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use gpk_ffi::*;

fn z(n: usize) -> *mut GpkGroup {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gpk_group_new(&n, 1, &mut g) }, GpkStatus::Ok);
    g
}

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    let n = unsafe { gpk_last_error(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn group_lifecycle() {
    let orders = [2usize, 6];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(gpk_group_new(orders.as_ptr(), 2, &mut g), GpkStatus::Ok);
        let (mut n, mut l) = (0, 0);
        assert_eq!(gpk_group_order(g, &mut n), GpkStatus::Ok);
        assert_eq!(gpk_group_exponent(g, &mut l), GpkStatus::Ok);
        assert_eq!((n, l), (12, 6));
        gpk_group_free(g);
        gpk_group_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_reported() {
    let mut g = ptr::null_mut();
    let bad = [1usize];
    unsafe {
        assert_eq!(
            gpk_group_new(bad.as_ptr(), 1, &mut g),
            GpkStatus::InvalidArgument
        );
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(gpk_group_order(ptr::null(), &mut 0), GpkStatus::NullPointer);
        assert!(last_error().contains("null"));
        let mut o = ptr::null_mut();
        let text = CString::new("{not json").unwrap();
        assert_eq!(
            gpk_oracle_from_json(text.as_ptr(), &mut o),
            GpkStatus::ParseError
        );
    }
}

#[test]
fn worked_fbi_table() {
    let g = z(12);
    let table = [0usize, 3, 3, 9, 9, 3, 0, 6, 0, 6, 6, 9];
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(
            gpk_oracle_from_table(g, g, table.as_ptr(), 12, &mut f),
            GpkStatus::Ok
        );
        let (mut sp, mut st) = (false, false);
        assert_eq!(gpk_is_fbi(f, &mut sp, &mut st), GpkStatus::Ok);
        assert!(sp && st);

        let mut delta = usize::MAX;
        assert_eq!(gpk_run_once(f, 4, 7, &mut delta), GpkStatus::Ok);
        assert_eq!(delta, 0);
        let mut calls = 0;
        assert_eq!(gpk_oracle_calls(f, &mut calls), GpkStatus::Ok);
        assert_eq!(calls, 1);
        assert_eq!(gpk_oracle_reset_calls(f), GpkStatus::Ok);

        let (mut image, mut used) = (0, 0);
        for seed in 0..10 {
            assert_eq!(
                gpk_marker_selection(f, GpkCandidateMode::Shuffled, seed, &mut image, &mut used),
                GpkStatus::Ok
            );
            assert_eq!(image, 4);
        }
        gpk_oracle_free(f);
        gpk_group_free(g);
    }
}

#[test]
fn closed_form_identity_oracle() {
    let json = CString::new(r#"{"orders_G":[6],"orders_H":[6],"table":[[0],[1],[2],[3],[4],[5]]}"#)
        .unwrap();
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(gpk_oracle_from_json(json.as_ptr(), &mut f), GpkStatus::Ok);
        let (mut re, mut im) = (0.0, 0.0);
        // alpha_z = (1/6) sum_g zeta^(g(z-1)): all weight on z = 1.
        assert_eq!(
            gpk_closed_form_amplitude(f, 1, 1, &mut re, &mut im),
            GpkStatus::Ok
        );
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        assert_eq!(
            gpk_closed_form_amplitude(f, 1, 5, &mut re, &mut im),
            GpkStatus::Ok
        );
        assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
        assert_eq!(
            gpk_closed_form_amplitude(f, 6, 0, &mut re, &mut im),
            GpkStatus::InvalidArgument
        );
        gpk_oracle_free(f);
    }
}

#[test]
fn zero_sums() {
    let mut out = false;
    unsafe {
        // 1 + zeta_3 + zeta_3^2 = 0.
        assert_eq!(
            gpk_is_zero_sum([1i64, 1, 1].as_ptr(), 3, &mut out),
            GpkStatus::Ok
        );
        assert!(out);
        assert_eq!(
            gpk_is_zero_sum([1i64, 1, 0, 0].as_ptr(), 4, &mut out),
            GpkStatus::Ok
        );
        assert!(!out);
        assert_eq!(
            gpk_is_zero_sum(ptr::null(), 0, &mut out),
            GpkStatus::NullPointer
        );
    }
}

fn header_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(header_dir().join("gpk.h")).unwrap();
    for name in [
        "typedef struct GpkGroup GpkGroup;",
        "typedef struct GpkOracle GpkOracle;",
        "GPK_STATUS_OK = 0",
        "gpk_group_new(",
        "gpk_oracle_from_table(",
        "gpk_oracle_from_json(",
        "gpk_run_once(",
        "gpk_closed_form_amplitude(",
        "gpk_is_fbi(",
        "gpk_marker_selection(",
        "gpk_is_zero_sum(",
        "gpk_last_error(",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

/// Compiles and runs a C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let tmp = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let profile_dir = tmp.parent().unwrap().join(if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    });
    let lib = profile_dir.join("libgpk_ffi.a");
    assert!(
        lib.exists(),
        "static library not built at {}",
        lib.display()
    );
    let exe = tmp.join("gpk_smoke");
    let status = Command::new("cc")
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/c/smoke.c"))
        .arg("-I")
        .arg(header_dir())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
