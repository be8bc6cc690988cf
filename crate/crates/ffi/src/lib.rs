//! C ABI for torloc.
//!
//! Inputs are JSON documents in the formats read by the `torloc` command line tool.
//! Results come back through out-parameters; strings are allocated here and must be
//! released with [`torloc_string_free`], fans with [`torloc_fan_free`]. Every call
//! returns a [`TorlocStatus`]; on failure [`torloc_last_error`] describes the cause.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use torloc::applications::{chern_number, mixed_volume_loc, Partition};
use torloc::cli::{format_ranks, io};
use torloc::error::ErrorKind;
use torloc::lattice::Index;
use torloc::localization::{e_sigma, iota_star_image, picard_rank, ranks_table};
use torloc::polyhedra::Fan;
use torloc::Error;

/// Outcome of a call. The error codes match the exit codes of the command line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorlocStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed or invalid input, including text that is not UTF-8.
    Validation = 2,
    /// Well-formed input that is mathematically incompatible.
    Incompatible = 3,
    /// A broken internal invariant or a caught panic.
    Internal = 4,
}

/// Opaque handle to a validated fan.
pub struct TorlocFan(Fan);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

/// Runs `f`, recording any failure or panic for `torloc_last_error`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TorlocStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TorlocStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            set_last_error(format!("null argument: {name}"));
            TorlocStatus::NullArgument
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            match e.kind() {
                ErrorKind::Validation => TorlocStatus::Validation,
                ErrorKind::Incompatible => TorlocStatus::Incompatible,
                ErrorKind::Internal => TorlocStatus::Internal,
            }
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            TorlocStatus::Internal
        }
    }
}

/// # Safety
/// `p` is null or a valid nul-terminated string.
unsafe fn input<'a>(p: *const c_char, name: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Error::Validation(format!("{name} is not valid UTF-8")).into())
}

/// # Safety
/// `p` is null or a handle from `torloc_fan_from_json` that has not been freed.
unsafe fn handle<'a>(p: *const TorlocFan) -> Result<&'a Fan, Failure> {
    p.as_ref().map(|f| &f.0).ok_or(Failure::Null("fan"))
}

/// # Safety
/// `out` is null or valid for a write.
unsafe fn put<T>(out: *mut T, value: T, name: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(name));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `out` is null or valid for a write.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|_| Error::Internal("output contains a nul byte".into()))?;
    put(out, s.into_raw(), "out")
}

/// Message for the most recent failed call on this thread, or null after a
/// successful call. The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn torloc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn torloc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a fan given as JSON, `{"rank": n, "maximal_cones": [...]}`.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_fan_from_json(json: *const c_char, out: *mut *mut TorlocFan) -> TorlocStatus {
    guard(|| {
        let f = io::parse_fan(input(json, "json")?)?;
        put(out, Box::into_raw(Box::new(TorlocFan(f))), "out")
    })
}

/// Releases a fan. Null is ignored.
///
/// # Safety
/// `fan` is null or a handle from `torloc_fan_from_json` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn torloc_fan_free(fan: *mut TorlocFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Dimension of the ambient lattice.
///
/// # Safety
/// `fan` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_fan_ambient_dim(fan: *const TorlocFan, out: *mut usize) -> TorlocStatus {
    guard(|| put(out, handle(fan)?.ambient(), "out"))
}

/// Number of rays.
///
/// # Safety
/// `fan` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_fan_num_rays(fan: *const TorlocFan, out: *mut usize) -> TorlocStatus {
    guard(|| put(out, handle(fan)?.rays().len(), "out"))
}

/// Number of maximal cones.
///
/// # Safety
/// `fan` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_fan_num_maximal_cones(fan: *const TorlocFan, out: *mut usize) -> TorlocStatus {
    guard(|| put(out, handle(fan)?.maximal_cones().len(), "out"))
}

/// The fan in canonical JSON form.
///
/// # Safety
/// `fan` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_fan_to_json(fan: *const TorlocFan, out: *mut *mut c_char) -> TorlocStatus {
    guard(|| put_string(out, io::to_canonical_string(&io::fan_to_value(handle(fan)?))))
}

/// Equivariant multiplicity of maximal cone `cone` (0-based), as text such as
/// `2/((a-b)(a+b))`.
///
/// # Safety
/// `fan` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_multiplicity(
    fan: *const TorlocFan,
    cone: usize,
    out: *mut *mut c_char,
) -> TorlocStatus {
    guard(|| {
        let f = handle(fan)?;
        let sigma = f
            .maximal_cones()
            .get(cone)
            .ok_or_else(|| Error::OutOfRange(format!("cone {cone} of {}", f.maximal_cones().len())))?;
        put_string(out, e_sigma(sigma)?.to_string())
    })
}

/// Rank of the Picard group of a complete fan.
///
/// # Safety
/// `fan` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_picard_rank(fan: *const TorlocFan, out: *mut usize) -> TorlocStatus {
    guard(|| put(out, picard_rank(handle(fan)?)?, "out"))
}

/// The rank table for degrees `0..=k_max`, as aligned text.
///
/// # Safety
/// `fan` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_ranks(fan: *const TorlocFan, k_max: usize, out: *mut *mut c_char) -> TorlocStatus {
    guard(|| put_string(out, format_ranks(&ranks_table(handle(fan)?, k_max)?)))
}

/// Index of the localization image in the Minkowski weights of codimension `k`,
/// as decimal text, or `infinite`.
///
/// # Safety
/// `fan` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_image_index(fan: *const TorlocFan, k: usize, out: *mut *mut c_char) -> TorlocStatus {
    guard(|| {
        let index = match iota_star_image(handle(fan)?, k)?.index {
            Index::Finite(i) => i.to_string(),
            Index::Infinite => "infinite".into(),
        };
        put_string(out, index)
    })
}

/// Normalized mixed volume `n! V` of a polytope system `{"polytopes": [...]}`, as
/// decimal text.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_mixed_volume(json: *const c_char, out: *mut *mut c_char) -> TorlocStatus {
    guard(|| {
        let sys = io::parse_polytope_system(input(json, "json")?)?;
        put_string(out, mixed_volume_loc(&sys)?.normalized.to_string())
    })
}

/// Chern number `c_lambda` of a bundle given as JSON on `fan`; `partition` is
/// written like `111`, `21` or `2,1`.
///
/// # Safety
/// `fan` is a live handle; `bundle` and `partition` are nul-terminated strings;
/// `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn torloc_chern_number(
    fan: *const TorlocFan,
    bundle: *const c_char,
    partition: *const c_char,
    out: *mut *mut c_char,
) -> TorlocStatus {
    guard(|| {
        let f = handle(fan)?;
        let b = io::parse_bundle(input(bundle, "bundle")?, f)?;
        let lambda = Partition::parse(input(partition, "partition")?)?;
        put_string(out, chern_number(f, &b, &lambda)?.to_string())
    })
}
