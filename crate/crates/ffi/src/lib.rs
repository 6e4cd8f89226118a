//! C interface to `kmtower`.
//!
//! Handles are opaque and owned by the caller once returned; free them with
//! the matching `*_free`. Strings returned through `char **` are freed with
//! [`km_string_free`]. Every function returns a [`KmStatus`]; on error the
//! message is available from [`km_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kmtower::cartan::{affine_gcm, classify_affine, AffineFamily, AffineType, CartanError, Gcm};
use kmtower::config::RunConfig;
use kmtower::rootsys::{enumerate_real_roots_with, EnumerateOptions, RealRootSet, RootError, RootVector};
use kmtower::suite::{exit_code, jobs, run_jobs, Check, CheckParams, Profile};
use serde::Deserialize;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ResourceCap = 4,
    /// The call completed but at least one verification check failed.
    CheckFailed = 5,
    Panic = 6,
}

pub struct KmGcm {
    inner: Gcm,
}

pub struct KmRootSet {
    inner: RealRootSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(KmStatus, String);

impl From<CartanError> for Fail {
    fn from(e: CartanError) -> Self {
        Fail(KmStatus::InvalidArgument, e.to_string())
    }
}

impl From<RootError> for Fail {
    fn from(e: RootError) -> Self {
        let code = match e {
            RootError::ResourceLimit(_) => KmStatus::ResourceCap,
            _ => KmStatus::InvalidArgument,
        };
        Fail(code, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<KmStatus, Fail>) -> KmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            KmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(KmStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(KmStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(KmStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(KmStatus::InvalidArgument, "output contains nul".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(KmStatus::NullPointer, "null handle".into()))
}

/// Message for the last error on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn km_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn km_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a GCM from its JSON file format.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_gcm_from_json(json: *const c_char, out: *mut *mut KmGcm) -> KmStatus {
    guard(|| {
        let g = Gcm::from_json(read_str(json)?)?;
        write_out(out, Box::into_raw(Box::new(KmGcm { inner: g })))?;
        Ok(KmStatus::Ok)
    })
}

/// The affine GCM of `family` (tag such as `"A2odd"`) at rank parameter `l`.
///
/// # Safety
/// `family` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_gcm_affine(family: *const c_char, l: usize, out: *mut *mut KmGcm) -> KmStatus {
    guard(|| {
        let family: AffineFamily = read_str(family)?.parse()?;
        let g = affine_gcm(AffineType::new(family, l)?)?;
        write_out(out, Box::into_raw(Box::new(KmGcm { inner: g })))?;
        Ok(KmStatus::Ok)
    })
}

/// # Safety
/// `gcm` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_gcm_size(gcm: *const KmGcm, out: *mut usize) -> KmStatus {
    guard(|| {
        write_out(out, deref(gcm)?.inner.size())?;
        Ok(KmStatus::Ok)
    })
}

/// # Safety
/// `gcm` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_gcm_entry(gcm: *const KmGcm, i: usize, j: usize, out: *mut i64) -> KmStatus {
    guard(|| {
        let g = &deref(gcm)?.inner;
        if i >= g.size() || j >= g.size() {
            return Err(Fail(KmStatus::InvalidArgument, format!("entry ({i}, {j}) out of range")));
        }
        write_out(out, g.a(i, j))?;
        Ok(KmStatus::Ok)
    })
}

/// JSON `{"family", "l", "perm"}`, or `{"family": null}` outside the families.
///
/// # Safety
/// `gcm` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_gcm_classify(gcm: *const KmGcm, out: *mut *mut c_char) -> KmStatus {
    guard(|| {
        let json = match classify_affine(&deref(gcm)?.inner) {
            Ok(c) => serde_json::json!({"family": c.ty.family.tag(), "l": c.ty.l, "perm": c.perm}),
            Err(CartanError::NotInFamilies) => serde_json::json!({"family": null}),
            Err(e) => return Err(e.into()),
        };
        write_string(out, json.to_string())?;
        Ok(KmStatus::Ok)
    })
}

/// # Safety
/// `gcm` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn km_gcm_free(gcm: *mut KmGcm) {
    if !gcm.is_null() {
        drop(Box::from_raw(gcm));
    }
}

/// Real roots of height at most `height`, capped at `max_roots` (0 selects
/// the default cap).
///
/// # Safety
/// `gcm` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_roots_enumerate(
    gcm: *const KmGcm,
    height: u32,
    max_roots: usize,
    out: *mut *mut KmRootSet,
) -> KmStatus {
    guard(|| {
        let mut opts = EnumerateOptions::default();
        if max_roots > 0 {
            opts.max_roots = max_roots;
        }
        let set = enumerate_real_roots_with(&deref(gcm)?.inner, height, opts)?;
        write_out(out, Box::into_raw(Box::new(KmRootSet { inner: set })))?;
        Ok(KmStatus::Ok)
    })
}

/// # Safety
/// `set` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_roots_len(set: *const KmRootSet, out: *mut usize) -> KmStatus {
    guard(|| {
        write_out(out, deref(set)?.inner.len())?;
        Ok(KmStatus::Ok)
    })
}

/// Whether the `len` coordinates at `coords` form a root in the set.
///
/// # Safety
/// `coords` must point to `len` readable integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_roots_contains(
    set: *const KmRootSet,
    coords: *const i64,
    len: usize,
    out: *mut bool,
) -> KmStatus {
    guard(|| {
        let set = &deref(set)?.inner;
        if coords.is_null() {
            return Err(Fail(KmStatus::NullPointer, "null coordinates".into()));
        }
        if len != set.gcm().size() {
            return Err(Fail(KmStatus::InvalidArgument, format!("expected {} coordinates", set.gcm().size())));
        }
        let v = RootVector(std::slice::from_raw_parts(coords, len).to_vec());
        write_out(out, set.contains(&v))?;
        Ok(KmStatus::Ok)
    })
}

/// The root-set JSON document.
///
/// # Safety
/// `set` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_roots_to_json(set: *const KmRootSet, out: *mut *mut c_char) -> KmStatus {
    guard(|| {
        write_string(out, deref(set)?.inner.to_json("ffi"))?;
        Ok(KmStatus::Ok)
    })
}

/// # Safety
/// `set` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn km_roots_free(set: *mut KmRootSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct VerifyParams {
    family: Option<String>,
    l: Option<usize>,
    m: Option<usize>,
    n: Option<usize>,
    height: Option<u32>,
    depth: Option<usize>,
    max_mn: Option<usize>,
    pairs: Option<usize>,
    quick: bool,
    seed: Option<u64>,
    parallelism: Option<usize>,
}

/// Runs the check named `check` (e.g. `"lemma-3.1"`, `"all"`) and writes its
/// reports as NDJSON to `out`. `params_json` may be null or a JSON object with
/// optional `family`, `l`, `m`, `n`, `height`, `depth`, `max_mn`, `pairs`,
/// `quick`, `seed` and `parallelism`. Returns `CheckFailed` (with `out` set)
/// when a report fails.
///
/// # Safety
/// `check` must be a nul-terminated string, `params_json` one or null, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn km_verify(check: *const c_char, params_json: *const c_char, out: *mut *mut c_char) -> KmStatus {
    guard(|| {
        let check: Check =
            read_str(check)?.parse().map_err(|e: kmtower::suite::SuiteError| Fail(KmStatus::InvalidArgument, e.to_string()))?;
        let p: VerifyParams = if params_json.is_null() {
            VerifyParams::default()
        } else {
            serde_json::from_str(read_str(params_json)?).map_err(|e| Fail(KmStatus::InvalidArgument, e.to_string()))?
        };
        let family = p.family.as_deref().map(str::parse::<AffineFamily>).transpose()?;
        let params = CheckParams {
            family,
            l: p.l,
            m: p.m,
            n: p.n,
            height: p.height,
            depth: p.depth,
            max_mn: p.max_mn,
            pairs: p.pairs,
            profile: if p.quick { Profile::Quick } else { Profile::Desk },
        };
        let mut cfg = RunConfig::default();
        cfg.seed = p.seed.unwrap_or(cfg.seed);
        cfg.parallelism = p.parallelism.unwrap_or(cfg.parallelism).max(1);
        let js = jobs(check, &params).map_err(|e| Fail(KmStatus::InvalidArgument, e.to_string()))?;
        let outcomes = run_jobs(&js, &cfg);
        let mut text = String::new();
        for o in &outcomes {
            text.push_str(&o.report().to_ndjson_line());
            text.push('\n');
        }
        write_string(out, text)?;
        Ok(match exit_code(&outcomes) {
            0 => KmStatus::Ok,
            2 => KmStatus::InvalidArgument,
            3 => KmStatus::ResourceCap,
            _ => KmStatus::CheckFailed,
        })
    })
}
