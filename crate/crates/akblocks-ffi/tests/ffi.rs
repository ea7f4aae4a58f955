use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use akblocks_ffi::*;

const EXAMPLE: &str = "[[3,2,1,1,1,1],[4,2,1],[2,2,1],[1]]";

fn new_block(e: usize, charge: &[i64], mp: &str) -> (AkStatus, *mut AkBlock) {
    let mp = CString::new(mp).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { ak_block_new(e, charge.len(), charge.as_ptr(), mp.as_ptr(), &mut out) };
    (st, out)
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { ak_string_free(p) };
    s
}

#[test]
fn worked_example_through_handles() {
    let (st, b) = new_block(5, &[1, 3, 3, 6], EXAMPLE);
    assert_eq!(st, AkStatus::AkOk);
    let mut mv = [9usize; 4];
    let mut n = 0;
    assert_eq!(
        unsafe { ak_block_mv(b, mv.as_mut_ptr(), 4, &mut n) },
        AkStatus::AkOk
    );
    assert_eq!((n, mv), (4, [1, 0, 1, 0]));
    let mut w = 0;
    assert_eq!(unsafe { ak_block_weight(b, &mut w) }, AkStatus::AkOk);
    assert_eq!(w, 2);
    let mut core = false;
    assert_eq!(unsafe { ak_block_is_core(b, &mut core) }, AkStatus::AkOk);
    assert!(core);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ak_block_scopes_json(b, &mut s) }, AkStatus::AkOk);
    assert!(take_string(s).contains("\"scopes_vector\":[3,3,2,1,1]"));
    let mut same = false;
    assert_eq!(
        unsafe { ak_blocks_scopes_equivalent(b, b, &mut same) },
        AkStatus::AkOk
    );
    assert!(same);
    let mut simples = 0;
    assert_eq!(
        unsafe { ak_block_count_simples(b, &mut simples) },
        AkStatus::AkOk
    );
    assert!(simples >= 1);
    unsafe { ak_block_free(b) };
}

#[test]
fn error_codes() {
    let (st, b) = new_block(5, &[1, 3, 3, 6], "nope");
    assert_eq!(st, AkStatus::AkErrParse);
    assert!(b.is_null());
    let msg = unsafe { CStr::from_ptr(ak_last_error()) }
        .to_str()
        .unwrap()
        .to_string();
    assert!(msg.contains("multipartition"));

    let (st, b) = new_block(2, &[0], "[[2]]");
    assert_eq!(st, AkStatus::AkOk);
    let mut out = 0u64;
    assert_eq!(
        unsafe { ak_block_count_simples(b, &mut out) },
        AkStatus::AkErrNotCore
    );
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { ak_block_decomposition_json(b, 1, &mut s) },
        AkStatus::AkErrBudget
    );
    let mut short = [0usize; 0];
    let mut n = 0;
    assert_eq!(
        unsafe { ak_block_mv(b, short.as_mut_ptr(), 0, &mut n) },
        AkStatus::AkErrParse
    );
    assert_eq!(n, 1);
    assert_eq!(
        unsafe { ak_block_weight(ptr::null(), &mut 0) },
        AkStatus::AkErrNull
    );
    unsafe { ak_block_free(b) };
    unsafe { ak_block_free(ptr::null_mut()) };
}

#[test]
fn decomposition_json() {
    let (st, b) = new_block(2, &[0], "[[2]]");
    assert_eq!(st, AkStatus::AkOk);
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { ak_block_decomposition_json(b, 100, &mut s) },
        AkStatus::AkOk
    );
    let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(v["rows"], serde_json::json!([[[2]], [[1, 1]]]));
    assert_eq!(v["entries"], serde_json::json!([[{"0": 1}], [{"1": 1}]]));
    unsafe { ak_block_free(b) };
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/akblocks.h")).unwrap();
    for name in [
        "ak_block_new",
        "ak_block_free",
        "ak_block_weight",
        "ak_block_is_core",
        "ak_block_mv",
        "ak_block_count_simples",
        "ak_blocks_scopes_equivalent",
        "ak_block_json",
        "ak_block_scopes_json",
        "ak_block_decomposition_json",
        "ak_string_free",
        "ak_last_error",
        "typedef struct AkBlock AkBlock",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn c_program_links_against_static_library() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libakblocks_ffi.a");
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
