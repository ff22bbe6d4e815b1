//! C ABI over zetakit.
//!
//! Every fallible call returns a [`ZkStatus`]. On failure the message is kept
//! in a thread-local slot readable with [`zk_last_error`]. Strings handed out
//! by the library are owned by the caller and released with
//! [`zk_string_free`] or [`zk_value_clear`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rug::Rational;
use zetakit::cli::format_complex;
use zetakit::eval::{EvalResult, Method};
use zetakit::numerics::rational::parse_rational;
use zetakit::spheres::{catalan, sphere_volume_gamma};
use zetakit::verify::{run_suites, Suite, VerifyOptions};
use zetakit::zeta_z::{zeta_z_closed, zeta_z_deriv};
use zetakit::zeta_zn::{zeta_zn_closed_poly, zeta_zn_direct, zeta_zn_negative_int, DiscreteCircle};
use zetakit::{HPComplex, HPReal, PrecisionContext, ZetaError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZkStatus {
    Ok = 0,
    /// Null pointer, invalid UTF-8 or an unparsable number.
    InvalidArgument = 1,
    InvalidContext = 2,
    Pole = 3,
    Domain = 4,
    NoConvergence = 5,
    Indeterminate = 6,
    IllConditioned = 7,
    Reconstruction = 8,
    /// A panic was caught at the boundary.
    Internal = 9,
}

impl From<&ZetaError> for ZkStatus {
    fn from(e: &ZetaError) -> Self {
        match e {
            ZetaError::Pole(_) => ZkStatus::Pole,
            ZetaError::Domain(_) => ZkStatus::Domain,
            ZetaError::NoConvergence(_) => ZkStatus::NoConvergence,
            ZetaError::Indeterminate(_) | ZetaError::NeedsLimitInterpretation(_) => ZkStatus::Indeterminate,
            ZetaError::IllConditioned(_) => ZkStatus::IllConditioned,
            ZetaError::Reconstruction(_) => ZkStatus::Reconstruction,
            ZetaError::InvalidContext(_) => ZkStatus::InvalidContext,
        }
    }
}

/// Opaque evaluation settings.
pub struct ZkContext {
    inner: PrecisionContext,
}

/// One evaluated value. `exact` is null unless the value is a known rational.
#[repr(C)]
pub struct ZkValue {
    /// Decimal value, `re±imi` when complex.
    pub value: *mut c_char,
    /// Exact `p/q` form, or null.
    pub exact: *mut c_char,
    /// Absolute error bound.
    pub err: f64,
    /// Nonzero when the error bound is proved.
    pub certified: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(ZkStatus, String);

impl From<ZetaError> for Failure {
    fn from(e: ZetaError) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(ZkStatus::InvalidArgument, msg.into())
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ZkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ZkStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            ZkStatus::Internal
        }
    }
}

unsafe fn context<'a>(ctx: *const ZkContext) -> Result<&'a PrecisionContext, Failure> {
    ctx.as_ref().map(|c| &c.inner).ok_or_else(|| invalid("null context"))
}

unsafe fn string<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(invalid(format!("null {what}")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn number(p: *const c_char, what: &str) -> Result<Rational, Failure> {
    parse_rational(string(p, what)?).map_err(|e| invalid(format!("{what}: {e}")))
}

/// `re` is required, `im` may be null.
unsafe fn complex(re: *const c_char, im: *const c_char, prec: u32) -> Result<(Rational, HPComplex), Failure> {
    let r = number(re, "s")?;
    let value = if im.is_null() {
        HPReal::from_rational(prec, &r).into()
    } else {
        let i = number(im, "im")?;
        HPComplex::from_parts(&HPReal::from_rational(prec, &r), &HPReal::from_rational(prec, &i))
    };
    Ok((r, value))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("null output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_value(out: *mut ZkValue, r: EvalResult, ctx: &PrecisionContext) -> Result<(), Failure> {
    let v = ZkValue {
        value: owned(format_complex(&r.value, ctx.output_digits())),
        exact: r.exact.map_or(ptr::null_mut(), |q| owned(q.to_string())),
        err: r.err,
        certified: r.certified as i32,
    };
    if out.is_null() {
        let mut v = v;
        zk_value_clear(&mut v);
        return Err(invalid("null output pointer"));
    }
    out.write(v);
    Ok(())
}

/// Create a context. `max_terms` of 0 keeps the library default.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zk_context_new(
    precision_bits: u32,
    target_tol: f64,
    max_terms: usize,
    out: *mut *mut ZkContext,
) -> ZkStatus {
    guard(|| {
        let mut c = PrecisionContext::with_precision(precision_bits)?.with_tol(target_tol)?;
        if max_terms > 0 {
            c = c.with_max_terms(max_terms)?;
        }
        write(out, Box::into_raw(Box::new(ZkContext { inner: c })))
    })
}

/// # Safety
/// `ctx` must come from [`zk_context_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zk_context_free(ctx: *mut ZkContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// The spectral zeta function of the integers at `re + im i`, from its
/// closed form. Numbers are integers, `p/q` or decimals; `im` may be null.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn zk_zeta_z(
    ctx: *const ZkContext,
    re: *const c_char,
    im: *const c_char,
    out: *mut ZkValue,
) -> ZkStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let (_, s) = complex(re, im, ctx.precision_bits())?;
        write_value(out, zeta_z_closed(&s, ctx)?, ctx)
    })
}

/// Derivative of the spectral zeta function of the integers at real `s`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn zk_zeta_z_deriv(ctx: *const ZkContext, s: *const c_char, out: *mut ZkValue) -> ZkStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let s = HPReal::from_rational(ctx.precision_bits(), &number(s, "s")?);
        write_value(out, zeta_z_deriv(&s, ctx)?, ctx)
    })
}

/// Spectral zeta function of the discrete circle with `n` vertices. Integer
/// arguments with a closed form come back exact.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn zk_zeta_zn(
    ctx: *const ZkContext,
    n: u32,
    re: *const c_char,
    im: *const c_char,
    out: *mut ZkValue,
) -> ZkStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let circle = DiscreteCircle::new(n)?;
        let prec = ctx.precision_bits();
        let (r, s) = complex(re, im, prec)?;
        let integer = im.is_null() && *r.denom() == 1;
        let result = match r.numer().to_i32() {
            Some(k) if integer && k <= 0 => {
                let q = Rational::from(zeta_zn_negative_int(circle, k.unsigned_abs()));
                EvalResult::exact(q, prec, Method::ClosedForm)
            }
            Some(k) if integer && (1..=8).contains(&k) => {
                let q = zeta_zn_closed_poly(k as u32)?.eval_int(n as i64);
                EvalResult::exact(q, prec, Method::ClosedForm)
            }
            _ => zeta_zn_direct(circle, &s, ctx)?,
        };
        write_value(out, result, ctx)
    })
}

/// Volume of the unit sphere of dimension `n`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn zk_sphere_volume(ctx: *const ZkContext, n: u32, out: *mut ZkValue) -> ZkStatus {
    guard(|| {
        let ctx = context(ctx)?;
        write_value(out, sphere_volume_gamma(n, ctx)?, ctx)
    })
}

/// The Catalan number `C_m` in decimal.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zk_catalan(m: u32, out: *mut *mut c_char) -> ZkStatus {
    guard(|| write(out, owned(catalan(m).to_string())))
}

/// The closed polynomial in `n` for the discrete circle at `s = m`, as text.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zk_closed_poly(m: u32, out: *mut *mut c_char) -> ZkStatus {
    guard(|| write(out, owned(zeta_zn_closed_poly(m)?.to_string())))
}

/// Run a verification suite (`"all"` or a suite name) and report how many
/// checks passed and failed.
///
/// # Safety
/// Pointers must be valid; `suite` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn zk_verify(
    ctx: *const ZkContext,
    suite: *const c_char,
    seed: u64,
    passed: *mut u32,
    failed: *mut u32,
) -> ZkStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let suites = Suite::parse_selection(string(suite, "suite")?).map_err(|e| invalid(e.to_string()))?;
        if passed.is_null() || failed.is_null() {
            return Err(invalid("null output pointer"));
        }
        let opts = VerifyOptions {
            seed,
            corrupt_poly: false,
        };
        let results = run_suites(&suites, ctx, &opts);
        let ok = results.iter().filter(|r| r.passed).count() as u32;
        write(passed, ok)?;
        write(failed, results.len() as u32 - ok)
    })
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn zk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn zk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Release the strings inside `v` and null them.
///
/// # Safety
/// `v` must be null or point to a value filled by this library.
#[no_mangle]
pub unsafe extern "C" fn zk_value_clear(v: *mut ZkValue) {
    if let Some(v) = v.as_mut() {
        zk_string_free(v.value);
        zk_string_free(v.exact);
        v.value = ptr::null_mut();
        v.exact = ptr::null_mut();
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn zk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(ZkStatus::from(&ZetaError::Pole("1/2".into())), ZkStatus::Pole);
        assert_eq!(
            ZkStatus::from(&ZetaError::NeedsLimitInterpretation("0".into())),
            ZkStatus::Indeterminate
        );
        assert_eq!(ZkStatus::Internal as i32, 9);
    }

    #[test]
    fn panics_become_internal_errors() {
        let prev = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let status = guard(|| panic!("boom"));
        std::panic::set_hook(prev);
        assert_eq!(status, ZkStatus::Internal);
        let msg = unsafe { CStr::from_ptr(zk_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal error");
    }
}
