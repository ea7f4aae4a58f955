//! C ABI bindings for the akblocks library.
//!
//! Blocks are exposed through the opaque handle [`AkBlock`], created by
//! [`ak_block_new`] and released by [`ak_block_free`]. Every fallible
//! function returns an [`AkStatus`] code and writes its result through an
//! out-pointer; the message of the most recent failure on the calling thread
//! is available from [`ak_last_error`]. Strings returned by the library must
//! be released with [`ak_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use akblocks::betaset::Partition;
use akblocks::blocks::{block_of, BlockDescriptor};
use akblocks::fock::decomposition_matrix;
use akblocks::multipartition::ChargedMultipartition;
use akblocks::scopes::{scopes_equivalent, scopes_report};
use akblocks::simples::count_simples;
use akblocks::Error;

/// Status codes returned by every fallible function.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AkStatus {
    /// Success.
    AkOk = 0,
    /// A required pointer argument was null.
    AkErrNull = 1,
    /// An argument could not be parsed or failed validation.
    AkErrParse = 2,
    /// A budget was exceeded.
    AkErrBudget = 3,
    /// A core-only operation received a non-core block.
    AkErrNotCore = 4,
    /// A charge was outside the required domain.
    AkErrDomain = 5,
    /// A reduction hypothesis cannot be met.
    AkErrNotApplicable = 6,
    /// An internal consistency check or arithmetic guard failed.
    AkErrInternal = 7,
    /// The library panicked; the handle arguments remain valid.
    AkErrPanic = 8,
}

/// Opaque handle to a block of an Ariki-Koike algebra.
pub struct AkBlock {
    inner: BlockDescriptor,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap_or_default());
}

fn status_of(err: &Error) -> AkStatus {
    match err {
        Error::InvalidParameter(_) | Error::RankMismatch { .. } | Error::Shape(_) => {
            AkStatus::AkErrParse
        }
        Error::BudgetExceeded { .. } => AkStatus::AkErrBudget,
        Error::NotCoreBlock(_) => AkStatus::AkErrNotCore,
        Error::ChargeOutsideDomain(_) => AkStatus::AkErrDomain,
        Error::NotApplicable(_) => AkStatus::AkErrNotApplicable,
        Error::Overflow(_) | Error::Inconsistent(_) => AkStatus::AkErrInternal,
    }
}

fn guard<F: FnOnce() -> Result<(), (AkStatus, String)>>(f: F) -> AkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AkStatus::AkOk,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside akblocks");
            AkStatus::AkErrPanic
        }
    }
}

fn lib<T>(r: akblocks::Result<T>) -> Result<T, (AkStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null_err(what: &str) -> (AkStatus, String) {
    (AkStatus::AkErrNull, format!("{what} is null"))
}

fn parse_err(msg: String) -> (AkStatus, String) {
    (AkStatus::AkErrParse, msg)
}

unsafe fn block_ref<'a>(b: *const AkBlock) -> Result<&'a BlockDescriptor, (AkStatus, String)> {
    b.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| null_err("block"))
}

fn export_string(s: String, out: *mut *mut c_char) -> Result<(), (AkStatus, String)> {
    let c = CString::new(s).map_err(|e| (AkStatus::AkErrInternal, e.to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Creates the block containing the charged multipartition given by `mp_json`
/// (a JSON array of `l` arrays of parts) with charge `charge[0..l]`.
///
/// # Safety
/// `charge` must point to `l` readable integers, `mp_json` must be a
/// NUL-terminated string, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_block_new(
    e: usize,
    l: usize,
    charge: *const i64,
    mp_json: *const c_char,
    out: *mut *mut AkBlock,
) -> AkStatus {
    guard(|| {
        if charge.is_null() && l > 0 {
            return Err(null_err("charge"));
        }
        if mp_json.is_null() {
            return Err(null_err("mp_json"));
        }
        if out.is_null() {
            return Err(null_err("out"));
        }
        let charge = if l == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(charge, l).to_vec()
        };
        let text = CStr::from_ptr(mp_json)
            .to_str()
            .map_err(|e| parse_err(e.to_string()))?;
        let parts: Vec<Vec<usize>> = serde_json::from_str(text)
            .map_err(|e| parse_err(format!("bad multipartition: {e}")))?;
        let comps = parts
            .into_iter()
            .map(|p| lib(Partition::new(p.into_iter().filter(|&x| x > 0).collect())))
            .collect::<Result<Vec<_>, _>>()?;
        let lm = lib(ChargedMultipartition::new(comps, charge, e))?;
        let inner = lib(block_of(&lm))?;
        *out = Box::into_raw(Box::new(AkBlock { inner }));
        Ok(())
    })
}

/// Releases a block handle; null is ignored.
///
/// # Safety
/// `b` must be null or a handle returned by [`ak_block_new`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn ak_block_free(b: *mut AkBlock) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// The weight of the block.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_block_weight(b: *const AkBlock, out: *mut usize) -> AkStatus {
    guard(|| {
        let b = block_ref(b)?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        *out = b.weight();
        Ok(())
    })
}

/// Whether the block is a core block.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_block_is_core(b: *const AkBlock, out: *mut bool) -> AkStatus {
    guard(|| {
        let b = block_ref(b)?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        *out = b.is_core_block();
        Ok(())
    })
}

/// Copies the moving vector into `buf[0..len]`; `written` receives its
/// length `l`. Fails with [`AkStatus::AkErrParse`] if `len < l`.
///
/// # Safety
/// `buf` must have room for `len` entries; `b` must be a live handle and
/// `written` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_block_mv(
    b: *const AkBlock,
    buf: *mut usize,
    len: usize,
    written: *mut usize,
) -> AkStatus {
    guard(|| {
        let b = block_ref(b)?;
        let written = written.as_mut().ok_or_else(|| null_err("written"))?;
        let mv = b.mv();
        *written = mv.len();
        if len < mv.len() {
            return Err(parse_err(format!(
                "buffer of {len} entries, need {}",
                mv.len()
            )));
        }
        if buf.is_null() {
            return Err(null_err("buf"));
        }
        ptr::copy_nonoverlapping(mv.as_ptr(), buf, mv.len());
        Ok(())
    })
}

/// The number of simple modules of a core block.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_block_count_simples(b: *const AkBlock, out: *mut u64) -> AkStatus {
    guard(|| {
        let b = block_ref(b)?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        lib(b.require_core())?;
        let n = lib(count_simples(b))?;
        *out = u64::try_from(n)
            .map_err(|_| (AkStatus::AkErrInternal, "count exceeds 64 bits".into()))?;
        Ok(())
    })
}

/// Whether two core blocks are Scopes equivalent.
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_blocks_scopes_equivalent(
    a: *const AkBlock,
    b: *const AkBlock,
    out: *mut bool,
) -> AkStatus {
    guard(|| {
        let a = block_ref(a)?;
        let b = block_ref(b)?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        *out = lib(scopes_equivalent(a, b))?;
        Ok(())
    })
}

/// The block summary as a JSON string; release it with [`ak_string_free`].
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_block_json(b: *const AkBlock, out: *mut *mut c_char) -> AkStatus {
    guard(|| {
        let b = block_ref(b)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        export_string(
            serde_json::to_string(&b.to_json()).expect("serializable"),
            out,
        )
    })
}

/// The Scopes data of a core block as a JSON string.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_block_scopes_json(
    b: *const AkBlock,
    out: *mut *mut c_char,
) -> AkStatus {
    guard(|| {
        let b = block_ref(b)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        lib(b.require_core())?;
        let r = lib(scopes_report(b))?;
        export_string(serde_json::to_string(&r).expect("serializable"), out)
    })
}

/// The v-decomposition matrix of the block as a JSON string, computed with
/// the given budget.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_block_decomposition_json(
    b: *const AkBlock,
    budget: usize,
    out: *mut *mut c_char,
) -> AkStatus {
    guard(|| {
        let b = block_ref(b)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let m = lib(decomposition_matrix(b, true, budget))?;
        export_string(
            serde_json::to_string(&m.to_json()).expect("serializable"),
            out,
        )
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not been
/// freed.
#[no_mangle]
pub unsafe extern "C" fn ak_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the most recent failure on this thread, or an empty
/// string. The pointer stays valid until the next failing call on the same
/// thread.
#[no_mangle]
pub extern "C" fn ak_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
