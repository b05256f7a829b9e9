use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use rainbow_ap_ffi::*;

fn letters(c: *const RapColoring) -> String {
    let mut needed = 0usize;
    unsafe {
        assert_eq!(rap_coloring_write_letters(c, ptr::null_mut(), 0, &mut needed), RapStatus::BufferTooSmall);
        let mut buf = vec![0u8; needed];
        assert_eq!(rap_coloring_write_letters(c, buf.as_mut_ptr().cast(), buf.len(), &mut needed), RapStatus::Ok);
        CStr::from_bytes_with_nul(&buf).unwrap().to_str().unwrap().to_owned()
    }
}

fn last_error() -> String {
    let p = rap_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn parse_find_and_free() {
    let s = CString::new("BABCCDDA").unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(rap_coloring_parse(s.as_ptr(), RapTopology::Cyclic, 4, &mut c), RapStatus::Ok);
        assert!(rap_last_error().is_null());
        assert_eq!(rap_coloring_len(c), 8);
        assert_eq!(rap_coloring_k(c), 4);
        assert_eq!(letters(c), "BABCCDDA");

        let mut found = false;
        let mut w = RapWitness::default();
        let mut elems = [usize::MAX; 4];
        assert_eq!(rap_find_rainbow_ap(c, 4, &mut found, &mut w, elems.as_mut_ptr(), 4), RapStatus::Ok);
        assert!(found);
        assert_eq!(w, RapWitness { start: 0, d: 3, length: 4 });
        assert_eq!(elems, [0, 3, 6, 1]);

        let mut b = RapBalance::Unbalanced;
        assert_eq!(rap_classify_balance(c, &mut b), RapStatus::Ok);
        assert_eq!(b, RapBalance::Equinumerous);
        rap_coloring_free(c);
        rap_coloring_free(ptr::null_mut());
    }
}

#[test]
fn error_codes() {
    let bad = CString::new("ABE").unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(rap_coloring_parse(bad.as_ptr(), RapTopology::Interval, 4, &mut c), RapStatus::Parse);
        assert!(c.is_null());
        assert!(last_error().contains('E'));
        assert_eq!(rap_coloring_parse(ptr::null(), RapTopology::Interval, 4, &mut c), RapStatus::NullPointer);
        assert_eq!(rap_construct_interval4(9, RapVariant::Alt41, &mut c), RapStatus::InvalidArgument);
        assert_eq!(rap_construct_k(3, 30, &mut c), RapStatus::InvalidArgument);
        let mut report = ptr::null_mut();
        let name = CString::new("nope").unwrap();
        assert_eq!(rap_run_suite_json(name.as_ptr(), ptr::null(), &mut report), RapStatus::UnknownSuite);
        assert!(report.is_null());
        let invalid = [0xffu8, 0];
        assert_eq!(
            rap_coloring_from_json(invalid.as_ptr().cast(), &mut c),
            RapStatus::InvalidUtf8
        );
    }
}

#[test]
fn constructions_are_rainbow_free() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(rap_construct_interval4(43, RapVariant::Alt41, &mut c), RapStatus::Ok);
        let mut found = true;
        assert_eq!(rap_find_rainbow_ap(c, 4, &mut found, ptr::null_mut(), ptr::null_mut(), 0), RapStatus::Ok);
        assert!(!found);
        rap_coloring_free(c);

        assert_eq!(rap_construct_k(6, 6 * 7 + 5, &mut c), RapStatus::Ok);
        assert_eq!(rap_coloring_len(c), 47);
        assert_eq!(rap_find_rainbow_ap(c, 6, &mut found, ptr::null_mut(), ptr::null_mut(), 0), RapStatus::Ok);
        assert!(!found);
        rap_coloring_free(c);

        assert_eq!(rap_construct_z24(2, &mut c), RapStatus::Ok);
        let mut valid = false;
        assert_eq!(rap_verify_certificate(c, 4, &mut valid), RapStatus::Ok);
        assert!(valid);
        let mut canon = ptr::null_mut();
        assert_eq!(rap_canonical_form(c, &mut canon), RapStatus::Ok);
        assert_eq!(rap_verify_certificate(canon, 4, &mut valid), RapStatus::Ok);
        assert!(valid);
        rap_coloring_free(canon);
        rap_coloring_free(c);

        assert_eq!(rap_construct_pow3(81, &mut c), RapStatus::Ok);
        assert_eq!(rap_coloring_k(c), 5);
        assert_eq!(rap_find_rainbow_ap(c, 3, &mut found, ptr::null_mut(), ptr::null_mut(), 0), RapStatus::Ok);
        assert!(!found);
        rap_coloring_free(c);
    }
}

#[test]
fn search_through_abi() {
    let mut cfg = RapSearchConfig {
        n: 16,
        k: 4,
        ap_length: 0,
        max_nodes: 0,
        time_limit_ms: 0,
        symmetry: RapSymmetry::FullCanonical,
        threads: 2,
    };
    let mut res = RapSearchResult {
        status: RapSearchStatus::Found,
        nodes: 0,
        prunes_capacity: 0,
        prunes_rainbow: 0,
        canonical_rejects: 0,
        elapsed_ms: 0,
    };
    let mut cert = ptr::null_mut();
    unsafe {
        assert_eq!(rap_search(&cfg, &mut res, &mut cert), RapStatus::Ok);
        assert_eq!(res.status, RapSearchStatus::Exhausted);
        assert!(cert.is_null());
        assert!(res.nodes > 0);

        cfg.n = 24;
        cfg.symmetry = RapSymmetry::ValueOrder;
        assert_eq!(rap_search(&cfg, &mut res, &mut cert), RapStatus::Ok);
        assert_eq!(res.status, RapSearchStatus::Found);
        let mut valid = false;
        assert_eq!(rap_verify_certificate(cert, 4, &mut valid), RapStatus::Ok);
        assert!(valid);
        rap_coloring_free(cert);

        cfg.max_nodes = 10;
        assert_eq!(rap_search(&cfg, &mut res, ptr::null_mut()), RapStatus::Ok);
        assert_eq!(res.status, RapSearchStatus::BudgetExceeded);
        assert_eq!(res.nodes, 10);

        cfg.n = 10;
        assert_eq!(rap_search(&cfg, &mut res, ptr::null_mut()), RapStatus::InvalidArgument);
    }
}

#[test]
fn suite_report_json() {
    let name = CString::new("z24").unwrap();
    let params = CString::new(r#"{"tiles": 2}"#).unwrap();
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(rap_run_suite_json(name.as_ptr(), params.as_ptr(), &mut report), RapStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(report).to_str().unwrap()).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["params"]["tiles"], 2);
        rap_string_free(report);
    }
}

#[test]
fn json_round_trip() {
    let json = CString::new(r#"{"n":4,"k":2,"topology":"cyclic","colors":"ABBA"}"#).unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(rap_coloring_from_json(json.as_ptr(), &mut c), RapStatus::Ok);
        assert_eq!(letters(c), "ABBA");
        rap_coloring_free(c);
    }
}

/// Compiles a C program against the generated header and static library.
#[test]
fn c_program_links() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let lib = [deps, deps.parent().unwrap()]
        .iter()
        .map(|d| d.join("librainbow_ap_ffi.a"))
        .find(|p| p.exists())
        .expect("static library next to the test binary");
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let out = deps.join("rap_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg(root.join("tests/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ABCCDDABDB 0");
}
