use std::ffi::{c_int, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use disco_top_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(dt_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn deleted_join_of_k5_is_a_three_sphere() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(dt_complex_skeleton(4, 1, &mut k), DtStatus::Ok);
        let mut j = ptr::null_mut();
        assert_eq!(dt_complex_deleted_join(k, &mut j), DtStatus::Ok);
        let mut buf = [0usize; 8];
        let mut len = 0;
        assert_eq!(dt_complex_betti(j, buf.as_mut_ptr(), buf.len(), &mut len), DtStatus::Ok);
        assert_eq!(&buf[..len], &[1, 0, 0, 1]);
        assert_eq!(dt_complex_f_vector(j, buf.as_mut_ptr(), buf.len(), &mut len), DtStatus::Ok);
        assert_eq!(&buf[..len], &[10, 40, 60, 30]);
        dt_complex_free(j);
        dt_complex_free(k);
    }
}

#[test]
fn small_buffer_reports_required_length() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(dt_complex_skeleton(3, 3, &mut k), DtStatus::Ok);
        let mut buf = [0usize; 2];
        let mut len = 0;
        assert_eq!(dt_complex_f_vector(k, buf.as_mut_ptr(), buf.len(), &mut len), DtStatus::BufferTooSmall);
        assert_eq!(len, 4);
        assert!(!last_error().is_empty());
        dt_complex_free(k);
    }
}

#[test]
fn parse_errors_carry_messages() {
    let text = CString::new("# disco-top complex v1\nsimplicial\ndim 0 2\n0\nx\n").unwrap();
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(dt_complex_parse(text.as_ptr(), &mut k), DtStatus::Parse);
        assert!(k.is_null());
        assert!(last_error().contains("line 5"), "{}", last_error());
        let ok = CString::new(
            "# disco-top complex v1\nsimplicial\ndim 0 3\n0\n1\n2\ndim 1 3\n0 1\n0 2\n1 2\ndim 2 1\n0 1 2\n",
        )
        .unwrap();
        assert_eq!(dt_complex_parse(ok.as_ptr(), &mut k), DtStatus::Ok);
        assert!(last_error().is_empty());
        let mut buf = [0usize; 4];
        let mut len = 0;
        assert_eq!(dt_complex_betti(k, buf.as_mut_ptr(), 4, &mut len), DtStatus::Ok);
        assert_eq!(&buf[..len], &[1, 0, 0]);
        dt_complex_free(k);
    }
}

#[test]
fn null_handles_are_rejected() {
    unsafe {
        let mut len = 0;
        assert_eq!(dt_complex_betti(ptr::null(), ptr::null_mut(), 0, &mut len), DtStatus::NullPointer);
        assert_eq!(dt_complex_skeleton(2, 1, ptr::null_mut()), DtStatus::NullPointer);
        dt_complex_free(ptr::null_mut());
        dt_function_free(ptr::null_mut());
        dt_string_free(ptr::null_mut());
    }
}

#[test]
fn hexagon_vietoris_rips() {
    let third = std::f64::consts::TAU / 3.0;
    let mut buf = [0usize; 4];
    let mut len = 0;
    unsafe {
        assert_eq!(dt_vr_ngon_betti(6, third, 0, 3, buf.as_mut_ptr(), 4, &mut len), DtStatus::Ok);
        assert_eq!(&buf[..len], &[1, 0, 1]);
        assert_eq!(dt_vr_ngon_betti(6, third / 2.0, 0, 3, buf.as_mut_ptr(), 4, &mut len), DtStatus::Ok);
        assert_eq!(&buf[..len], &[1, 1]);
    }
}

#[test]
fn constants() {
    let (mut lo, mut ex, mut r) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(dt_c_constant(1, 4, &mut lo, &mut ex), DtStatus::Ok);
        assert_eq!(ex, 4.0 * std::f64::consts::PI / 5.0);
        assert_eq!(lo, ex);
        assert_eq!(dt_c_constant(0, 5, &mut lo, &mut ex), DtStatus::Ok);
        assert!(ex.is_nan());
        assert_eq!(dt_r_constant(1, &mut r), DtStatus::Ok);
        assert!((r - 2.0 * std::f64::consts::FRAC_PI_3).abs() < 1e-15);
    }
}

#[test]
fn step_witnesses_through_handles() {
    unsafe {
        for (monotone, expected) in [(1, 0.0), (0, std::f64::consts::PI)] {
            let mut f = ptr::null_mut();
            assert_eq!(dt_witness_step(monotone, 20, &mut f), DtStatus::Ok);
            let mut ok: c_int = -2;
            assert_eq!(dt_function_verified(f, &mut ok), DtStatus::Ok);
            assert_eq!(ok, 1);
            let mut a = -1.0;
            assert_eq!(dt_function_alpha(f, 0.1, 0.2, &mut a), DtStatus::Ok);
            assert_eq!(a, expected);
            dt_function_free(f);
        }
    }
}

#[test]
fn tverberg_witness_reaches_pi() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(dt_witness_tverberg_one_point(20, &mut f), DtStatus::Ok);
        let mut a = 0.0;
        assert_eq!(dt_function_alpha_r(f, 2, 0.1, &mut a), DtStatus::Ok);
        assert_eq!(a, std::f64::consts::PI);
        dt_function_free(f);
    }
}

#[test]
fn user_function_and_injectivity_error() {
    let pts = [0.0, 0.25, 0.5, 0.75];
    let vals = [0.0, 1.0, 1.0, 2.0];
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(dt_function_new(pts.as_ptr(), 4, 1, vals.as_ptr(), 1, 0.125, &mut f), DtStatus::Ok);
        let mut n = 0;
        assert_eq!(dt_function_len(f, &mut n), DtStatus::Ok);
        assert_eq!(n, 4);
        let mut ok: c_int = 0;
        assert_eq!(dt_function_verified(f, &mut ok), DtStatus::Ok);
        assert_eq!(ok, -1);
        let mut d = 0.0;
        assert_eq!(dt_function_delta(f, 0.25, &mut d), DtStatus::Ok);
        assert_eq!(d, 1.0);
        let mut a = 0.0;
        assert_eq!(dt_function_alpha(f, 0.25, 0.5, &mut a), DtStatus::NotInjective);
        dt_function_free(f);
    }
}

#[test]
fn experiment_report_round_trip() {
    let cfg = CString::new(r#"{"experiment": "bound", "scenario": "tverberg", "r": 6, "d": 19}"#).unwrap();
    unsafe {
        let mut rep = ptr::null_mut();
        let mut passed = 0;
        assert_eq!(dt_experiment_run(cfg.as_ptr(), &mut rep, &mut passed), DtStatus::InapplicableTheorem);
        assert!(last_error().contains("prime power"));
        let cfg = CString::new(r#"{"experiment": "vr-ladder", "n": 6}"#).unwrap();
        assert_eq!(dt_experiment_run(cfg.as_ptr(), &mut rep, &mut passed), DtStatus::Ok);
        assert_eq!(passed, 1);
        let text = CStr::from_ptr(rep).to_str().unwrap();
        assert!(text.contains("\"schema\""));
        dt_string_free(rep);
    }
}

#[test]
fn version_is_nonempty() {
    let v = unsafe { CStr::from_ptr(dt_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_api_and_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/disco_top.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["dt_complex_skeleton", "dt_function_alpha_r", "dt_experiment_run", "typedef struct DtComplex DtComplex"] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99"]).arg(&header).status() else {
        eprintln!("cc not found; skipping C compile check");
        return;
    };
    assert!(status.success());
}
