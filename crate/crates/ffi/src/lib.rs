//! C ABI over the polybound toolkit.
//!
//! Every fallible function returns a [`PbStatus`] and writes results through
//! out-pointers. On failure a message is available from
//! [`pb_last_error_message`] on the same thread. Handles and strings returned
//! by the library are released with the matching `*_free` function.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use polybound::polybounded::{parse_cover, verify_cover, Cover, Target};
use polybound::semigroup::{Semigroup, Window};
use polybound::verdict::{Scope, Verdict};
use polybound::Error;

/// Result code of every fallible call.
#[allow(non_camel_case_types)]
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbStatus {
    PB_OK = 0,
    /// A required pointer argument was null.
    PB_ERR_NULL = 1,
    PB_ERR_PARSE = 2,
    /// Objects from different semigroup handles were mixed.
    PB_ERR_FOREIGN = 3,
    PB_ERR_INVALID = 4,
    /// A search or size guard was exceeded.
    PB_ERR_GUARD = 5,
    PB_ERR_UTF8 = 6,
    PB_ERR_IO = 7,
    /// A Rust panic was caught at the boundary.
    PB_ERR_PANIC = 8,
}

/// Opaque semigroup handle.
pub struct PbSemigroup(Semigroup);

/// Opaque cover certificate, tied to the semigroup it was parsed against.
pub struct PbCover(Cover);

/// Outcome of [`pb_cover_verify`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PbVerdict {
    /// 1 when every window element is covered, else 0.
    pub verified: i32,
    /// 1 when the check covered the whole (finite) semigroup.
    pub exhaustive: i32,
    /// First uncovered element when `verified` is 0.
    pub counterexample: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PbStatus {
    match e {
        Error::Parse { .. } => PbStatus::PB_ERR_PARSE,
        Error::ForeignElement | Error::HandleMismatch => PbStatus::PB_ERR_FOREIGN,
        Error::GuardExceeded { .. } => PbStatus::PB_ERR_GUARD,
        Error::Io(_) => PbStatus::PB_ERR_IO,
        _ => PbStatus::PB_ERR_INVALID,
    }
}

struct Failure(PbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guarded(body: impl FnOnce() -> Result<(), Failure>) -> PbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            PbStatus::PB_OK
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("panic inside polybound");
            PbStatus::PB_ERR_PANIC
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(PbStatus::PB_ERR_NULL, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    non_null(p, what)?;
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PbStatus::PB_ERR_UTF8, format!("{what} is not valid UTF-8")))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse a semigroup expression such as `builtin:cyclic:6` or
/// `product(builtin:zpm,cayley:c2.tbl)`.
#[no_mangle]
pub unsafe extern "C" fn pb_semigroup_parse(spec: *const c_char, out: *mut *mut PbSemigroup) -> PbStatus {
    guarded(|| {
        non_null(out, "out")?;
        let spec = str_arg(spec, "spec")?;
        let s = polybound::cli::parse_spec(spec)?;
        *out = Box::into_raw(Box::new(PbSemigroup(s)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pb_semigroup_free(s: *mut PbSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Writes the order and `finite = true`, or `order = 0` and `finite = false`
/// for countably infinite semigroups.
#[no_mangle]
pub unsafe extern "C" fn pb_semigroup_cardinality(
    s: *const PbSemigroup,
    order: *mut usize,
    finite: *mut bool,
) -> PbStatus {
    guarded(|| {
        non_null(s, "semigroup")?;
        non_null(order, "order")?;
        non_null(finite, "finite")?;
        let o = (*s).0.order();
        *order = o.unwrap_or(0);
        *finite = o.is_some();
        Ok(())
    })
}

/// Product of two element indices.
#[no_mangle]
pub unsafe extern "C" fn pb_semigroup_mul(s: *const PbSemigroup, a: usize, b: usize, out: *mut usize) -> PbStatus {
    guarded(|| {
        non_null(s, "semigroup")?;
        non_null(out, "out")?;
        let s = &(*s).0;
        for x in [a, b] {
            s.element(x)?;
        }
        *out = s
            .checked_mul(a, b)
            .ok_or_else(|| Failure(PbStatus::PB_ERR_GUARD, format!("{a}*{b} has no representable index")))?;
        Ok(())
    })
}

/// Parse cover text (`<polynomial> = <element>` per line) against a semigroup.
#[no_mangle]
pub unsafe extern "C" fn pb_cover_parse(
    s: *const PbSemigroup,
    text: *const c_char,
    out: *mut *mut PbCover,
) -> PbStatus {
    guarded(|| {
        non_null(s, "semigroup")?;
        non_null(out, "out")?;
        let text = str_arg(text, "text")?;
        let c = parse_cover(&(*s).0, text)?;
        *out = Box::into_raw(Box::new(PbCover(c)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pb_cover_free(c: *mut PbCover) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Check the cover on the first `window` elements (clamped to the order of
/// finite semigroups). The cover must come from the same semigroup handle.
#[no_mangle]
pub unsafe extern "C" fn pb_cover_verify(
    s: *const PbSemigroup,
    c: *const PbCover,
    window: usize,
    out: *mut PbVerdict,
) -> PbStatus {
    guarded(|| {
        non_null(s, "semigroup")?;
        non_null(c, "cover")?;
        non_null(out, "out")?;
        let w = Window::clamped(&(*s).0, window)?;
        *out = match verify_cover(&w, &Target::All, &(*c).0)? {
            Verdict::Verified(scope) => PbVerdict {
                verified: 1,
                exhaustive: (scope == Scope::Exhaustive) as i32,
                counterexample: 0,
            },
            Verdict::Counterexample(x) => PbVerdict {
                verified: 0,
                exhaustive: 0,
                counterexample: x,
            },
        };
        Ok(())
    })
}

/// Run a command-line invocation (`argv[0]` is the program name). Writes the
/// process exit code and the combined report and diagnostics, which the
/// caller releases with [`pb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pb_run_command(
    argv: *const *const c_char,
    argc: usize,
    exit_code: *mut i32,
    output: *mut *mut c_char,
) -> PbStatus {
    guarded(|| {
        non_null(exit_code, "exit_code")?;
        non_null(output, "output")?;
        if argc > 0 {
            non_null(argv, "argv")?;
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(str_arg(*argv.add(i), "argument")?.to_string());
        }
        if args.is_empty() {
            args.push("polybound".into());
        }
        let o = polybound::cli::run(args);
        let text = o.stdout + &o.stderr;
        let c = CString::new(text).map_err(|_| Failure(PbStatus::PB_ERR_INVALID, "output contains NUL".into()))?;
        *exit_code = o.code;
        *output = c.into_raw();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Null-terminated library version.
#[no_mangle]
pub extern "C" fn pb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
