//! C ABI for `wmod`.
//!
//! Every fallible function returns a `WMOD_*` status code and writes results
//! through out-pointers. On failure the message is available from
//! [`wmod_last_error`] on the same thread. Modules are opaque handles that
//! must be released with [`wmod_module_free`]; strings returned by the
//! library must be released with [`wmod_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use wmod::classify::{classify, ModuleLabel, RealFormId, SymbolDomain};
use wmod::generator::GeneratorId;
use wmod::realization::{ModuleParams, RealizationKind, TruncatedModule};
use wmod::sparse::SparseVector;
use wmod::unitarity::{adjoint_defect, boundedness_profile, UnitarityVerdict};
use wmod::verify::verify_relations;
use wmod::Error;

pub const WMOD_OK: i32 = 0;
pub const WMOD_ERR_NULL: i32 = 1;
pub const WMOD_ERR_INVALID_ARGUMENT: i32 = 2;
/// The parameter `a` is a guarded (nonnegative integer) value.
pub const WMOD_ERR_GUARD: i32 = 3;
/// The truncation window is too small or a vector left it.
pub const WMOD_ERR_WINDOW: i32 = 4;
pub const WMOD_ERR_PARSE: i32 = 5;
pub const WMOD_ERR_INTERNAL: i32 = 6;
pub const WMOD_ERR_PANIC: i32 = 7;

pub const WMOD_KIND_BASE: u32 = 0;
pub const WMOD_KIND_BBL: u32 = 1;
pub const WMOD_KIND_DEFORMED: u32 = 2;
pub const WMOD_KIND_FINITE: u32 = 3;

/// A truncated realization over double-precision complex scalars.
pub struct WmodModule {
    inner: TruncatedModule<Complex64>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::GuardedParameter { .. } => WMOD_ERR_GUARD,
        Error::WindowTooSmall { .. } | Error::OutsideWindow(_) | Error::BoundaryLoss(_) => WMOD_ERR_WINDOW,
        Error::Parse(_) => WMOD_ERR_PARSE,
        _ => WMOD_ERR_INVALID_ARGUMENT,
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guarded(f: impl FnOnce() -> Result<(), (i32, String)>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WMOD_OK,
        Ok(Err((code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("panic inside wmod");
            WMOD_ERR_PANIC
        }
    }
}

fn lib(e: Error) -> (i32, String) {
    (code_of(&e), e.to_string())
}

fn null(what: &str) -> (i32, String) {
    (WMOD_ERR_NULL, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (i32, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (WMOD_ERR_PARSE, format!("{what} is not valid UTF-8")))
}

unsafe fn module_ref<'a>(m: *const WmodModule) -> Result<&'a TruncatedModule<Complex64>, (i32, String)> {
    m.as_ref().map(|m| &m.inner).ok_or_else(|| null("module"))
}

/// Builds a module. `kind` is one of the `WMOD_KIND_*` values; for
/// `WMOD_KIND_FINITE` the cutoff must equal `a`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn wmod_module_new(kind: u32, n: usize, a_re: f64, a_im: f64, cutoff: usize, out: *mut *mut WmodModule) -> i32 {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let kind = match kind {
            WMOD_KIND_BASE => RealizationKind::BaseP,
            WMOD_KIND_BBL => RealizationKind::BblX,
            WMOD_KIND_DEFORMED => RealizationKind::DeformedE,
            WMOD_KIND_FINITE => RealizationKind::Finite,
            other => return Err((WMOD_ERR_INVALID_ARGUMENT, format!("unknown kind {other}"))),
        };
        if n == 0 {
            return Err((WMOD_ERR_INVALID_ARGUMENT, "rank must be at least 1".into()));
        }
        let inner = TruncatedModule::build(kind, ModuleParams::new(n, Complex64::new(a_re, a_im), cutoff)).map_err(lib)?;
        *out = Box::into_raw(Box::new(WmodModule { inner }));
        Ok(())
    })
}

/// Releases a module. Null is ignored.
///
/// # Safety
/// `m` must come from [`wmod_module_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn wmod_module_free(m: *mut WmodModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of basis vectors in the window.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wmod_module_dimension(m: *const WmodModule, out: *mut usize) -> i32 {
    guarded(|| {
        let m = module_ref(m)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = m.dimension();
        Ok(())
    })
}

/// Writes the multi-index at window position `pos` into `out[0..n]`.
///
/// # Safety
/// `m` must be a live handle and `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn wmod_module_basis_index(m: *const WmodModule, pos: usize, out: *mut u32, len: usize) -> i32 {
    guarded(|| {
        let m = module_ref(m)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if len != m.rank() {
            return Err(lib(Error::RankMismatch { expected: m.rank(), got: len }));
        }
        if pos >= m.dimension() {
            return Err((WMOD_ERR_INVALID_ARGUMENT, format!("position {pos} outside the window")));
        }
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(m.basis().get(pos).entries());
        Ok(())
    })
}

/// Applies a generator (`"E0"`, `"F1"`, `"H0"`, `"X0"`, `"Y1"`, `"iH0"`, ...)
/// to a coordinate vector of length `dimension`. Mass pushed out of the
/// window is reported in `boundary_mass` (may be null).
///
/// # Safety
/// `m` must be a live handle; the four arrays must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn wmod_module_apply(
    m: *const WmodModule,
    generator: *const c_char,
    in_re: *const f64,
    in_im: *const f64,
    out_re: *mut f64,
    out_im: *mut f64,
    len: usize,
    boundary_mass: *mut f64,
) -> i32 {
    guarded(|| {
        let m = module_ref(m)?;
        let g: GeneratorId = str_arg(generator, "generator")?.parse().map_err(lib)?;
        if in_re.is_null() || in_im.is_null() || out_re.is_null() || out_im.is_null() {
            return Err(null("vector"));
        }
        if len != m.dimension() {
            return Err((WMOD_ERR_INVALID_ARGUMENT, format!("length {len} differs from dimension {}", m.dimension())));
        }
        let (re, im) = (std::slice::from_raw_parts(in_re, len), std::slice::from_raw_parts(in_im, len));
        let v = SparseVector::from_terms(
            (0..len).filter(|&p| re[p] != 0.0 || im[p] != 0.0).map(|p| (m.basis().get(p).clone(), Complex64::new(re[p], im[p]))),
        );
        let w = m.apply(g, &v).map_err(lib)?;
        let (ore, oim) = (std::slice::from_raw_parts_mut(out_re, len), std::slice::from_raw_parts_mut(out_im, len));
        ore.fill(0.0);
        oim.fill(0.0);
        for (k, c) in w.iter() {
            let p = m.basis().position(k).expect("image inside window");
            ore[p] = c.re;
            oim[p] = c.im;
        }
        if let Some(b) = boundary_mass.as_mut() {
            *b = w.boundary_mass();
        }
        Ok(())
    })
}

/// Largest Chevalley-Serre defect on the window; `passed` is 1 when it is
/// at most `tol`.
///
/// # Safety
/// `m` must be a live handle; out-pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn wmod_verify_relations(m: *const WmodModule, tol: f64, max_defect: *mut f64, passed: *mut i32) -> i32 {
    guarded(|| {
        let m = module_ref(m)?;
        let r = verify_relations(m, tol).map_err(lib)?;
        if let Some(d) = max_defect.as_mut() {
            *d = r.max_defect.unwrap_or(0.0);
        }
        if let Some(p) = passed.as_mut() {
            *p = r.passed() as i32;
        }
        Ok(())
    })
}

/// Largest violation of the adjointness relations; `unitary` is 1 when it
/// is at most `tol`.
///
/// # Safety
/// `m` must be a live handle; out-pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn wmod_adjoint_defect(m: *const WmodModule, tol: f64, max_defect: *mut f64, unitary: *mut i32) -> i32 {
    guarded(|| {
        let m = module_ref(m)?;
        let r = adjoint_defect(m, tol);
        if let Some(d) = max_defect.as_mut() {
            *d = r.max_defect;
        }
        if let Some(u) = unitary.as_mut() {
            *u = (r.verdict == UnitarityVerdict::Unitary) as i32;
        }
        Ok(())
    })
}

/// Fills `values[0..k]` with `b(1), …, b(k)` and reports the supremum and
/// the tail estimate (either may be null).
///
/// # Safety
/// `values` must hold `len >= k` values.
#[no_mangle]
pub unsafe extern "C" fn wmod_boundedness_profile(
    n: usize,
    a_re: f64,
    a_im: f64,
    k: usize,
    values: *mut f64,
    len: usize,
    sup: *mut f64,
    tail: *mut f64,
) -> i32 {
    guarded(|| {
        if values.is_null() {
            return Err(null("values"));
        }
        if len < k {
            return Err((WMOD_ERR_INVALID_ARGUMENT, format!("buffer of {len} values is shorter than K = {k}")));
        }
        let p = boundedness_profile(n, Complex64::new(a_re, a_im), k).map_err(lib)?;
        let out = std::slice::from_raw_parts_mut(values, k);
        for (slot, point) in out.iter_mut().zip(&p.points) {
            *slot = point.value;
        }
        if let Some(s) = sup.as_mut() {
            *s = p.sup;
        }
        if let Some(t) = tail.as_mut() {
            *t = p.tail_estimate;
        }
        Ok(())
    })
}

/// Classifies `label` for a real form (`"su"` with `p`,`q`; `"sl"` or
/// `"spr"` with `n`; `"sppq"` with `p`,`q`; pass 0 for unused sizes).
/// `domain` is `"generic"`, `"negative"`, `"positive"` or null for generic.
/// The result is a JSON object written to `out_json`, to be released with
/// [`wmod_string_free`].
///
/// # Safety
/// `form`, `label` and a non-null `domain` must be NUL-terminated strings;
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wmod_classify(
    form: *const c_char,
    p: usize,
    q: usize,
    n: usize,
    label: *const c_char,
    domain: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let opt = |v: usize| (v > 0).then_some(v);
        let form = RealFormId::from_parts(str_arg(form, "form")?, opt(p), opt(q), opt(n)).map_err(lib)?;
        let domain: SymbolDomain = if domain.is_null() { SymbolDomain::Generic } else { str_arg(domain, "domain")?.parse().map_err(lib)? };
        let label = str_arg(label, "label")?.parse::<ModuleLabel>().map_err(lib)?.with_domain(domain);
        let res = classify(form, &label).map_err(lib)?;
        let text = serde_json::to_string(&res).map_err(|e| (WMOD_ERR_INTERNAL, e.to_string()))?;
        *out_json = CString::new(text).map_err(|e| (WMOD_ERR_INTERNAL, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn wmod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wmod_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wmod_version() -> *const c_char {
    static VERSION: &[u8] = concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes();
    VERSION.as_ptr().cast()
}
