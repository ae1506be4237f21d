//! C ABI for eigenfence.
//!
//! Matrices live behind the opaque `EfMatrix` handle. Every function returns
//! an `EfStatus`; on failure a message is kept per thread and can be read with
//! `ef_last_error_message`. Strings returned through `char **` out-parameters
//! are owned by the caller and released with `ef_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use eigenfence::bounds::{bound_report, det_bound, powered_bound, tau1, tau_inf, BoundOptions, SemiNormKind};
use eigenfence::cassini::refined_obr_region;
use eigenfence::discs::{classic_discs, eigenpair_region, Axis};
use eigenfence::geometry::Region;
use eigenfence::matrix::{check_eigenpair, parse_matrix, Eigenpair, RealMatrix};
use eigenfence::render::{render_svg, Scene, BLUE, GRAY, TURQUOISE};
use eigenfence::similarity::to_row_sum_form;
use eigenfence::{oracle, refine, Error};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Dimension = 4,
    InvalidEigenpair = 5,
    Math = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Semi-norm selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfNorm {
    L1 = 0,
    LInf = 1,
}

/// Region selector for `ef_region_json`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfRegionKind {
    SecondType = 0,
    Refined = 1,
    Obr = 2,
    ClassicRows = 3,
    ClassicColumns = 4,
}

/// Layer bits for `ef_render_svg`.
pub const EF_LAYER_CLASSIC: u32 = 1;
pub const EF_LAYER_SECOND: u32 = 2;
pub const EF_LAYER_REFINED: u32 = 4;
pub const EF_LAYER_OBR: u32 = 8;

/// Opaque square matrix.
pub struct EfMatrix(RealMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(EfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EfStatus::Parse,
            Error::Dimension(_) => EfStatus::Dimension,
            Error::InvalidEigenpair { .. } | Error::AllZero | Error::MissingEigenpair => {
                EfStatus::InvalidEigenpair
            }
            _ => EfStatus::Math,
        };
        Fail(code, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(EfStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> EfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            EfStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            EfStatus::Panic
        }
    }
}

unsafe fn matrix<'a>(m: *const EfMatrix) -> Result<&'a RealMatrix, Fail> {
    m.as_ref().map(|m| &m.0).ok_or_else(|| null("matrix"))
}

unsafe fn pair(m: &RealMatrix, lambda: f64, v: *const f64, len: usize) -> Result<Eigenpair, Fail> {
    if v.is_null() {
        return Err(null("eigenvector"));
    }
    if len != m.n() {
        return Err(Fail(
            EfStatus::Dimension,
            format!("eigenvector has {len} components, matrix is {0}x{0}", m.n()),
        ));
    }
    Ok(Eigenpair::new(lambda, std::slice::from_raw_parts(v, len).to_vec())?)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Fail(EfStatus::Math, "output contained a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = value;
    Ok(())
}

fn kind(n: EfNorm) -> SemiNormKind {
    match n {
        EfNorm::L1 => SemiNormKind::L1,
        EfNorm::LInf => SemiNormKind::LInf,
    }
}

/// Copies an `n x n` row-major array into a new matrix.
#[no_mangle]
pub unsafe extern "C" fn ef_matrix_new(n: usize, data: *const f64, out: *mut *mut EfMatrix) -> EfStatus {
    guard(|| {
        if data.is_null() {
            return Err(null("data"));
        }
        let len = n.checked_mul(n).ok_or_else(|| Fail(EfStatus::InvalidArgument, "n too large".into()))?;
        let m = RealMatrix::new(n, std::slice::from_raw_parts(data, len).to_vec())?;
        put(out, Box::into_raw(Box::new(EfMatrix(m))))
    })
}

/// Parses whitespace-separated rows or a JSON problem document.
#[no_mangle]
pub unsafe extern "C" fn ef_matrix_parse(text: *const c_char, out: *mut *mut EfMatrix) -> EfStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s =
            CStr::from_ptr(text).to_str().map_err(|_| Fail(EfStatus::Parse, "text is not UTF-8".into()))?;
        let m = parse_matrix(s)?;
        put(out, Box::into_raw(Box::new(EfMatrix(m))))
    })
}

/// Releases a matrix. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ef_matrix_free(m: *mut EfMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Matrix size, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn ef_matrix_dim(m: *const EfMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.n())
}

/// Relative residual of `(lambda, v)`. Fails with `INVALID_EIGENPAIR` above `tol`.
#[no_mangle]
pub unsafe extern "C" fn ef_check_eigenpair(
    m: *const EfMatrix,
    lambda: f64,
    v: *const f64,
    len: usize,
    tol: f64,
    residual: *mut f64,
) -> EfStatus {
    guard(|| {
        let a = matrix(m)?;
        let p = pair(a, lambda, v, len)?;
        let r = check_eigenpair(a, &p, tol)?;
        put(residual, r)?;
        if r > tol {
            return Err(Error::InvalidEigenpair { residual: r, tol }.into());
        }
        Ok(())
    })
}

/// Region JSON for the eigenvalues other than `lambda`. The classic kinds
/// ignore the eigenpair and accept a null `v`.
#[no_mangle]
pub unsafe extern "C" fn ef_region_json(
    m: *const EfMatrix,
    lambda: f64,
    v: *const f64,
    len: usize,
    region: EfRegionKind,
    out: *mut *mut c_char,
) -> EfStatus {
    guard(|| {
        let a = matrix(m)?;
        let r = match region {
            EfRegionKind::ClassicRows => Region::DiscUnion(classic_discs(a, Axis::Rows)),
            EfRegionKind::ClassicColumns => Region::DiscUnion(classic_discs(a, Axis::Columns)),
            EfRegionKind::SecondType => Region::DiscUnion(eigenpair_region(a, &pair(a, lambda, v, len)?)?),
            EfRegionKind::Refined => {
                let p = pair(a, lambda, v, len)?;
                let b = to_row_sum_form(a, &p, eigenfence::DEFAULT_TOL)?.similarity.b;
                refine(&b)?.region()?
            }
            EfRegionKind::Obr => refined_obr_region(a, &pair(a, lambda, v, len)?)?,
        };
        put_string(out, serde_json::to_string(&r).expect("regions serialize"))
    })
}

/// `tau1` or `tau_inf` of the matrix itself.
#[no_mangle]
pub unsafe extern "C" fn ef_tau(m: *const EfMatrix, norm: EfNorm, out: *mut f64) -> EfStatus {
    guard(|| {
        let a = matrix(m)?;
        put(
            out,
            match norm {
                EfNorm::L1 => tau1(a),
                EfNorm::LInf => tau_inf(a),
            },
        )
    })
}

/// `tau(M^k)^(1/k)` for a constant row-sum matrix.
#[no_mangle]
pub unsafe extern "C" fn ef_powered_bound(
    m: *const EfMatrix,
    k: u32,
    norm: EfNorm,
    out: *mut f64,
) -> EfStatus {
    guard(|| {
        let a = matrix(m)?;
        put(out, powered_bound(a, k, kind(norm))?)
    })
}

/// Upper bound on `|det A|` from one eigenpair.
#[no_mangle]
pub unsafe extern "C" fn ef_det_bound(
    m: *const EfMatrix,
    lambda: f64,
    v: *const f64,
    len: usize,
    k: u32,
    norm: EfNorm,
    out: *mut f64,
) -> EfStatus {
    guard(|| {
        let a = matrix(m)?;
        let p = pair(a, lambda, v, len)?;
        put(out, det_bound(a, &p, k, kind(norm))?)
    })
}

/// Full bound report as a JSON array, powers 1 to `max_k`.
#[no_mangle]
pub unsafe extern "C" fn ef_bounds_json(
    m: *const EfMatrix,
    lambda: f64,
    v: *const f64,
    len: usize,
    max_k: u32,
    out: *mut *mut c_char,
) -> EfStatus {
    guard(|| {
        let a = matrix(m)?;
        let p = pair(a, lambda, v, len)?;
        if max_k == 0 {
            return Err(Fail(EfStatus::InvalidArgument, "max_k must be at least 1".into()));
        }
        let opts = BoundOptions { powers: (1..=max_k).collect(), det: true, ..BoundOptions::default() };
        let report = bound_report(a, &p, &opts)?;
        put_string(out, serde_json::to_string(&report).expect("reports serialize"))
    })
}

/// Oracle eigenvalues, modulus descending, into caller arrays of length
/// `cap >= n`. `count` receives `n`.
#[no_mangle]
pub unsafe extern "C" fn ef_eigenvalues(
    m: *const EfMatrix,
    seed: u64,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
    count: *mut usize,
) -> EfStatus {
    guard(|| {
        let a = matrix(m)?;
        put(count, a.n())?;
        if re.is_null() || im.is_null() {
            return Err(null("output array"));
        }
        if cap < a.n() {
            return Err(Fail(EfStatus::BufferTooSmall, format!("need room for {} values", a.n())));
        }
        for (i, z) in oracle::eigenvalues_with_seed(a, seed)?.sorted().into_iter().enumerate() {
            *re.add(i) = z.re;
            *im.add(i) = z.im;
        }
        Ok(())
    })
}

/// Oracle determinant.
#[no_mangle]
pub unsafe extern "C" fn ef_determinant(m: *const EfMatrix, out: *mut f64) -> EfStatus {
    guard(|| put(out, oracle::determinant(matrix(m)?)))
}

/// SVG of the layers selected by the `EF_LAYER_*` bits; `eigs != 0` adds
/// oracle eigenvalue markers.
#[no_mangle]
pub unsafe extern "C" fn ef_render_svg(
    m: *const EfMatrix,
    lambda: f64,
    v: *const f64,
    len: usize,
    layers: u32,
    eigs: c_int,
    out: *mut *mut c_char,
) -> EfStatus {
    guard(|| {
        let a = matrix(m)?;
        let mut scene = Scene::new();
        if layers & EF_LAYER_CLASSIC != 0 {
            scene = scene.layer(Region::DiscUnion(classic_discs(a, Axis::Columns)), GRAY, 1.0);
        }
        if layers & !EF_LAYER_CLASSIC != 0 {
            let p = pair(a, lambda, v, len)?;
            let b = to_row_sum_form(a, &p, eigenfence::DEFAULT_TOL)?.similarity.b;
            if layers & EF_LAYER_SECOND != 0 {
                scene = scene.layer(Region::DiscUnion(eigenpair_region(a, &p)?), BLUE, 0.85);
            }
            if layers & EF_LAYER_REFINED != 0 {
                scene = scene.layer(refine(&b)?.region()?, TURQUOISE, 0.85);
            }
            if layers & EF_LAYER_OBR != 0 {
                scene = scene.layer(refined_obr_region(a, &p)?, TURQUOISE, 0.85);
            }
        }
        if eigs != 0 {
            scene = scene.points(oracle::eigenvalues(a)?.sorted());
        }
        put_string(out, render_svg(&scene)?)
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ef_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ef_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
