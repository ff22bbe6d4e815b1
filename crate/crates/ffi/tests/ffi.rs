use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use zetakit_ffi::*;

struct Ctx(*mut ZkContext);

impl Ctx {
    fn new(bits: u32) -> Self {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { zk_context_new(bits, 1e-30, 0, &mut p) }, ZkStatus::Ok);
        assert!(!p.is_null());
        Ctx(p)
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { zk_context_free(self.0) }
    }
}

fn empty() -> ZkValue {
    ZkValue {
        value: ptr::null_mut(),
        exact: ptr::null_mut(),
        err: f64::NAN,
        certified: 0,
    }
}

fn text(p: *const c_char) -> Option<String> {
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
}

fn last_error() -> String {
    text(zk_last_error()).unwrap()
}

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn exact_values() {
    let ctx = Ctx::new(256);
    let mut v = empty();
    let s = c("-2");
    assert_eq!(
        unsafe { zk_zeta_z(ctx.0, s.as_ptr(), ptr::null(), &mut v) },
        ZkStatus::Ok
    );
    assert_eq!(text(v.exact).as_deref(), Some("6"));
    assert_eq!(v.err, 0.0);
    unsafe { zk_value_clear(&mut v) };
    assert!(v.value.is_null() && v.exact.is_null());

    let s = c("1");
    assert_eq!(
        unsafe { zk_zeta_zn(ctx.0, 3, s.as_ptr(), ptr::null(), &mut v) },
        ZkStatus::Ok
    );
    assert_eq!(text(v.exact).as_deref(), Some("2/3"));
    unsafe { zk_value_clear(&mut v) };

    let s = c("-2");
    assert_eq!(unsafe { zk_zeta_z_deriv(ctx.0, s.as_ptr(), &mut v) }, ZkStatus::Ok);
    assert_eq!(text(v.exact).as_deref(), Some("-7"));
    unsafe { zk_value_clear(&mut v) };
}

#[test]
fn decimal_values() {
    let ctx = Ctx::new(128);
    let mut v = empty();
    assert_eq!(unsafe { zk_sphere_volume(ctx.0, 3, &mut v) }, ZkStatus::Ok);
    let value = text(v.value).unwrap();
    let x: f64 = value.parse().unwrap();
    assert!((x - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
    assert!(v.err < 1e-30);
    assert!(v.exact.is_null());
    assert_eq!(v.certified, 1);
    unsafe { zk_value_clear(&mut v) };

    let (re, im) = (c("-1/2"), c("1"));
    assert_eq!(
        unsafe { zk_zeta_z(ctx.0, re.as_ptr(), im.as_ptr(), &mut v) },
        ZkStatus::Ok
    );
    assert!(text(v.value).unwrap().ends_with('i'));
    unsafe { zk_value_clear(&mut v) };
}

#[test]
fn error_codes_and_messages() {
    let ctx = Ctx::new(128);
    let mut v = empty();
    let half = c("1/2");
    assert_eq!(
        unsafe { zk_zeta_z(ctx.0, half.as_ptr(), ptr::null(), &mut v) },
        ZkStatus::Pole
    );
    assert!(last_error().contains("pole"));
    assert!(v.value.is_null());

    let one = c("1");
    assert_eq!(
        unsafe { zk_zeta_zn(ctx.0, 1, one.as_ptr(), ptr::null(), &mut v) },
        ZkStatus::Domain
    );

    let junk = c("one half");
    assert_eq!(
        unsafe { zk_zeta_z(ctx.0, junk.as_ptr(), ptr::null(), &mut v) },
        ZkStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { zk_zeta_z(ptr::null(), one.as_ptr(), ptr::null(), &mut v) },
        ZkStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { zk_zeta_z(ctx.0, ptr::null(), ptr::null(), &mut v) },
        ZkStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { zk_zeta_z(ctx.0, one.as_ptr(), ptr::null(), ptr::null_mut()) },
        ZkStatus::InvalidArgument
    );

    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { zk_context_new(16, 1e-30, 0, &mut p) },
        ZkStatus::InvalidContext
    );
    assert!(p.is_null());

    assert_eq!(
        unsafe { zk_zeta_z(ctx.0, one.as_ptr(), ptr::null(), &mut v) },
        ZkStatus::Ok
    );
    assert_eq!(last_error(), "");
    unsafe { zk_value_clear(&mut v) };
}

#[test]
fn strings_and_verification() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { zk_catalan(10, &mut s) }, ZkStatus::Ok);
    assert_eq!(text(s).as_deref(), Some("16796"));
    unsafe { zk_string_free(s) };
    assert_eq!(unsafe { zk_closed_poly(1, &mut s) }, ZkStatus::Ok);
    assert_eq!(text(s).as_deref(), Some("(n^2 - 1)/12"));
    unsafe { zk_string_free(s) };
    unsafe { zk_string_free(ptr::null_mut()) };

    let ctx = Ctx::new(128);
    let (mut passed, mut failed) = (0u32, 0u32);
    let suite = c("spheres");
    assert_eq!(
        unsafe { zk_verify(ctx.0, suite.as_ptr(), 1, &mut passed, &mut failed) },
        ZkStatus::Ok
    );
    assert_eq!((passed, failed), (4, 0));
    let bad = c("everything");
    assert_eq!(
        unsafe { zk_verify(ctx.0, bad.as_ptr(), 1, &mut passed, &mut failed) },
        ZkStatus::InvalidArgument
    );
    assert_eq!(text(zk_version()).as_deref(), Some(env!("CARGO_PKG_VERSION")));
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/zetakit.h")
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn header_compiles_as_c_and_cpp() {
    if !have_cc() {
        eprintln!("cc not found, skipping");
        return;
    }
    let h = header();
    for lang in ["c", "c++"] {
        let out = Command::new("cc")
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&h)
            .output()
            .unwrap();
        assert!(out.status.success(), "{lang}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "zetakit.h"

int main(void) {
    ZkContext *ctx = NULL;
    if (zk_context_new(128, 1e-30, 0, &ctx) != ZK_STATUS_OK) return 1;
    ZkValue v;
    if (zk_zeta_zn(ctx, 3, "1", NULL, &v) != ZK_STATUS_OK) return 2;
    printf("%s\n", v.exact);
    zk_value_clear(&v);
    if (zk_zeta_z(ctx, "1/2", NULL, &v) != ZK_STATUS_POLE) return 3;
    printf("%s\n", zk_last_error());
    zk_context_free(ctx);
    return 0;
}
"#;

#[test]
fn c_program_links_against_the_static_library() {
    // Test binaries live in target/<profile>/deps; the library sits one level up.
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().unwrap().parent().unwrap().join("libzetakit_ffi.a");
    if !have_cc() || !lib.exists() {
        eprintln!("cc or {} not available, skipping", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("zetakit-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let bin = dir.join("main");
    let out = Command::new("cc")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lmpfr", "-lgmp", "-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    let stdout = String::from_utf8(run.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("2/3"));
    assert!(lines.next().unwrap().contains("pole"));
    std::fs::remove_dir_all(&dir).ok();
}
