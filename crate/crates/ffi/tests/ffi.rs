use std::ffi::{c_char, CStr};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use trisolve_ffi::*;

fn owned(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ts_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ts_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn position_round_trip() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(ts_position_new(5, c"a1".as_ptr(), &mut p), TsStatus::Ok);
        assert_eq!(ts_position_legal_jump_count(p), 2);
        let mut sax = 0;
        assert_eq!(ts_sax_count(p, &mut sax), TsStatus::Ok);
        assert_eq!(sax, 1);
        assert_eq!(ts_position_apply(p, c"c3-a1".as_ptr()), TsStatus::Ok);
        let mut holes = ptr::null_mut();
        assert_eq!(ts_position_holes(p, &mut holes), TsStatus::Ok);
        assert!(!owned(holes).contains("c3"));
        let mut class = TsClass::Empty;
        assert_eq!(ts_position_class(p, &mut class), TsStatus::Ok);
        assert_eq!(class, TsClass::Peg0);
        ts_position_free(p);
    }
}

#[test]
fn errors_carry_messages() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(ts_position_new(5, c"f9".as_ptr(), &mut p), TsStatus::IllegalMove);
        assert!(last_error().contains("f9"), "{}", last_error());
        assert_eq!(ts_position_new(5, c"??".as_ptr(), &mut p), TsStatus::InvalidArgument);
        assert_eq!(ts_position_new(5, ptr::null(), &mut p), TsStatus::NullPointer);
        assert!(p.is_null());
        assert_eq!(ts_position_parse(4, c". oo ooo oooo".as_ptr(), &mut p), TsStatus::Ok);
        assert_eq!(ts_position_apply(p, c"a1-a3".as_ptr()), TsStatus::IllegalMove);
        assert_eq!(ts_position_peg_count(p), 9);
        ts_position_free(p);
    }
}

#[test]
fn solving() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(ts_solve(9, c"a2".as_ptr(), ptr::null(), &mut s), TsStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(ts_solution_text(s, &mut text), TsStatus::Ok);
        let sol = trisolve::Solution::parse(9, &owned(text)).unwrap();
        sol.validate().unwrap();
        ts_solution_free(s);

        assert_eq!(ts_solve(5, c"b3".as_ptr(), c"b3".as_ptr(), &mut s), TsStatus::Unsolvable);
        assert_eq!(ts_shortest(4, ptr::null(), ptr::null(), 1_000_000, &mut s), TsStatus::Ok);
        assert_eq!(ts_solution_move_count(s), 5);
        ts_solution_free(s);
        assert_eq!(ts_shortest(7, ptr::null(), ptr::null(), 1_000, &mut s), TsStatus::BudgetExhausted);

        let mut count = 0;
        assert_eq!(ts_count_solutions(5, c"a1".as_ptr(), c"a1".as_ptr(), &mut count), TsStatus::Ok);
        assert_eq!(count, 6816);
        let mut odds = 0;
        assert_eq!(ts_player_odds(c"a1".as_ptr(), b'C' as c_char, &mut odds), TsStatus::Ok);
        assert_eq!(odds, 7);
        let mut ok = false;
        assert_eq!(ts_is_feasible(6, c"a1".as_ptr(), c"a1".as_ptr(), &mut ok), TsStatus::Ok);
        assert!(ok);
    }
}

// Compile the C example against the generated header and static library.
#[test]
fn c_header_compiles_and_links() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = target.join("libtrisolve_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let exe = std::env::temp_dir().join(format!("trisolve_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("examples/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
