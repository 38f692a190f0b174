// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

//! C ABI over `cheeger-core`.
//!
//! Every function returns a [`CheegerStatus`] and writes its result through
//! an out-pointer. On failure a message is kept per thread and can be read
//! with [`cheeger_last_error_message`]. Polygons are opaque handles created
//! by [`cheeger_polygon_new`] and released by [`cheeger_polygon_free`];
//! strings returned by the library are released by [`cheeger_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cheeger_core::closed_forms::hq_ball;
use cheeger_core::constants::comparison_constants;
use cheeger_core::geometry::inradius;
use cheeger_core::solver::{estimate, solve_convex_polygon, CheegerEstimate as CoreEstimate, ShapeSpec, SolverOptions};
use cheeger_core::{ConvexPolygon, Error, Exponent, Point};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheegerStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidExponent = 2,
    InvalidShape = 3,
    NotConvex = 4,
    Degenerate = 5,
    InvalidArgument = 6,
    Numerical = 7,
    InvalidUtf8 = 8,
    Json = 9,
    Panic = 10,
}

/// A validated convex polygon.
pub struct CheegerPolygon(ConvexPolygon);

/// Solver settings; see [`cheeger_solver_options_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct CheegerSolverOptions {
    pub vertex_count: usize,
    pub multistarts: usize,
    pub max_iters: usize,
    pub tol_rel: f64,
    pub seed: u64,
}

/// Comparison constants for the plane; `lower` is meaningful only when
/// `has_lower` is set (exponents above 1).
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct CheegerConstants {
    pub has_lower: bool,
    pub lower: f64,
    pub upper: f64,
}

/// Upper estimate of `h_q` and the set realizing it.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct CheegerEstimate {
    pub value: f64,
    pub perimeter: f64,
    pub area: f64,
    pub lower_bound: f64,
    pub iterations: usize,
    pub converged: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> CheegerStatus {
    match err {
        Error::InvalidExponent { .. } => CheegerStatus::InvalidExponent,
        Error::InvalidShape(_) | Error::OriginNotInterior { .. } => CheegerStatus::InvalidShape,
        Error::NotConvex(_) => CheegerStatus::NotConvex,
        Error::Degenerate(_) => CheegerStatus::Degenerate,
        Error::Precondition(_) | Error::RefineN { .. } => CheegerStatus::InvalidArgument,
        Error::Containment(_) | Error::Lp(_) => CheegerStatus::Numerical,
    }
}

type Call<T> = Result<T, (CheegerStatus, String)>;

fn core<T>(r: cheeger_core::Result<T>) -> Call<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (CheegerStatus, String) {
    (CheegerStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, stores the result through `out` and records any failure.
fn guard<T>(out: *mut T, f: impl FnOnce() -> Call<T>) -> CheegerStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return CheegerStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            unsafe { out.write(v) };
            CheegerStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CheegerStatus::Panic
        }
    }
}

unsafe fn polygon<'a>(p: *const CheegerPolygon) -> Call<&'a ConvexPolygon> {
    p.as_ref().map(|p| &p.0).ok_or_else(|| null("polygon"))
}

unsafe fn options(opts: *const CheegerSolverOptions) -> Call<SolverOptions> {
    let Some(o) = opts.as_ref() else {
        return Ok(SolverOptions::default());
    };
    let s = SolverOptions {
        vertex_count: o.vertex_count,
        multistarts: o.multistarts,
        max_iters: o.max_iters,
        tol_rel: o.tol_rel,
        rng_seed: o.seed,
    };
    core(s.validate())?;
    Ok(s)
}

fn exponent(q: f64) -> Call<Exponent> {
    core(Exponent::planar(q))
}

impl From<&CoreEstimate> for CheegerEstimate {
    fn from(e: &CoreEstimate) -> Self {
        CheegerEstimate {
            value: e.value,
            perimeter: e.perimeter,
            area: e.area,
            lower_bound: e.lower_bound,
            iterations: e.iterations,
            converged: e.converged,
        }
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cheeger_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cheeger_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn cheeger_solver_options_default() -> CheegerSolverOptions {
    let d = SolverOptions::default();
    CheegerSolverOptions {
        vertex_count: d.vertex_count,
        multistarts: d.multistarts,
        max_iters: d.max_iters,
        tol_rel: d.tol_rel,
        seed: d.rng_seed,
    }
}

/// Builds a convex polygon from `n` vertices given as interleaved
/// `x0, y0, x1, y1, ...`. Either orientation is accepted.
#[no_mangle]
pub unsafe extern "C" fn cheeger_polygon_new(xy: *const f64, n: usize, out: *mut *mut CheegerPolygon) -> CheegerStatus {
    guard(out, || {
        if xy.is_null() {
            return Err(null("vertex array"));
        }
        let coords = std::slice::from_raw_parts(xy, 2 * n);
        let pts = coords.chunks_exact(2).map(|c| Point::new(c[0], c[1])).collect();
        let poly = core(ConvexPolygon::new(pts))?;
        Ok(Box::into_raw(Box::new(CheegerPolygon(poly))))
    })
}

/// Releases a polygon; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cheeger_polygon_free(p: *mut CheegerPolygon) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of vertices kept after validation.
#[no_mangle]
pub unsafe extern "C" fn cheeger_polygon_vertex_count(p: *const CheegerPolygon, out: *mut usize) -> CheegerStatus {
    guard(out, || Ok(polygon(p)?.vertices().len()))
}

#[no_mangle]
pub unsafe extern "C" fn cheeger_polygon_area(p: *const CheegerPolygon, out: *mut f64) -> CheegerStatus {
    guard(out, || Ok(polygon(p)?.area()))
}

#[no_mangle]
pub unsafe extern "C" fn cheeger_polygon_perimeter(p: *const CheegerPolygon, out: *mut f64) -> CheegerStatus {
    guard(out, || Ok(polygon(p)?.perimeter()))
}

#[no_mangle]
pub unsafe extern "C" fn cheeger_polygon_inradius(p: *const CheegerPolygon, out: *mut f64) -> CheegerStatus {
    guard(out, || Ok(core(inradius(polygon(p)?))?.radius))
}

/// `h_q` of a planar disk of the given radius.
#[no_mangle]
pub unsafe extern "C" fn cheeger_hq_ball(q: f64, radius: f64, out: *mut f64) -> CheegerStatus {
    guard(out, || core(hq_ball(exponent(q)?, radius)))
}

#[no_mangle]
pub unsafe extern "C" fn cheeger_comparison_constants(q: f64, out: *mut CheegerConstants) -> CheegerStatus {
    guard(out, || {
        exponent(q)?;
        let c = core(comparison_constants(2, q))?;
        Ok(CheegerConstants { has_lower: c.lower.is_some(), lower: c.lower.unwrap_or(f64::NAN), upper: c.upper })
    })
}

/// Estimates `h_q` of a convex polygon. `opts` may be null for defaults.
#[no_mangle]
pub unsafe extern "C" fn cheeger_solve_polygon(
    p: *const CheegerPolygon,
    q: f64,
    opts: *const CheegerSolverOptions,
    out: *mut CheegerEstimate,
) -> CheegerStatus {
    guard(out, || {
        let est = core(solve_convex_polygon(polygon(p)?, exponent(q)?, &options(opts)?))?;
        Ok(CheegerEstimate::from(&est))
    })
}

/// Estimates `h_q` of a shape given in the JSON shape-file format and
/// returns the full estimate as a JSON string, to be released with
/// [`cheeger_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cheeger_estimate_json(
    shape_json: *const c_char,
    q: f64,
    opts: *const CheegerSolverOptions,
    out: *mut *mut c_char,
) -> CheegerStatus {
    guard(out, || {
        if shape_json.is_null() {
            return Err(null("shape string"));
        }
        let text = CStr::from_ptr(shape_json).to_str().map_err(|e| (CheegerStatus::InvalidUtf8, e.to_string()))?;
        let shape: ShapeSpec = serde_json::from_str(text).map_err(|e| (CheegerStatus::Json, e.to_string()))?;
        core(shape.validate())?;
        let est = core(estimate(&shape, exponent(q)?, &options(opts)?))?;
        let json = serde_json::to_string(&est).map_err(|e| (CheegerStatus::Json, e.to_string()))?;
        Ok(CString::new(json).map_err(|e| (CheegerStatus::Json, e.to_string()))?.into_raw())
    })
}

/// Releases a string returned by the library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cheeger_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
