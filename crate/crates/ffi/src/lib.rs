//! C ABI over `midpoly`.
//!
//! Polygons cross the boundary as opaque `MpPolygon` handles. Every fallible
//! call returns an `MpStatus`; on failure `mp_last_error` describes the most
//! recent error on the calling thread. Strings handed out by the library are
//! released with `mp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use midpoly::cli::document::PolygonDocument;
use midpoly::exact_poly::{self, PlanePoint, Polygon};
use midpoly::verify::{self, FuzzConfig, VerifyError};
use midpoly::{GeometryError, Rational};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    WrongSize = 4,
    AreaZero = 5,
    InsufficientData = 6,
    UnsupportedM = 7,
    Panic = 8,
}

/// Exact rational polygon.
pub struct MpPolygon {
    inner: Polygon,
}

/// Outcome of the hexagon colinearity check.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MpHexagonReport {
    pub all_colinear: bool,
    pub limit_on_line: bool,
    /// 1 on the line, 0 off it, -1 when `G_0` is undefined.
    pub g0_on_line: i32,
    /// Index of the first centroid off the line, or -1.
    pub first_violation: i64,
    pub undefined_centroids: usize,
}

/// Counts from a seeded hexagon campaign.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MpFuzzSummary {
    pub trials: usize,
    pub colinear_passes: usize,
    pub colinear_failures: usize,
    pub limit_off_line: usize,
    pub insufficient_data: usize,
    pub g0_off_line: usize,
    pub z_scaling_passes: usize,
    pub z_scaling_failures: usize,
    pub passed: bool,
}

/// Slope measurements for the non-colinear counterexample.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MpPropositionReport {
    pub measured_ratio: f64,
    pub expected_ratio: f64,
    pub initial_slope: f64,
    pub expected_initial_slope: f64,
    pub lines_pairwise_distinct: bool,
    pub passed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl ToString) {
    let text = CString::new(message.to_string().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

struct Fail(MpStatus, String);

impl From<GeometryError> for Fail {
    fn from(e: GeometryError) -> Self {
        let status = match e {
            GeometryError::AreaZero => MpStatus::AreaZero,
            GeometryError::WrongSize { .. } | GeometryError::EmptyPolygon => MpStatus::WrongSize,
        };
        Fail(status, e.to_string())
    }
}

impl From<VerifyError> for Fail {
    fn from(e: VerifyError) -> Self {
        let status = match e {
            VerifyError::WrongSize { .. } => MpStatus::WrongSize,
            VerifyError::InsufficientData => MpStatus::InsufficientData,
            VerifyError::UnsupportedM(_) => MpStatus::UnsupportedM,
            VerifyError::AreaZero { .. } => MpStatus::AreaZero,
            VerifyError::TooFewSteps { .. } | VerifyError::InvalidConfig(_) => MpStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(MpStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> MpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MpStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MpStatus::Panic
        }
    }
}

unsafe fn polygon<'a>(p: *const MpPolygon) -> Result<&'a Polygon, Fail> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("polygon"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn handle(p: Polygon) -> *mut MpPolygon {
    Box::into_raw(Box::new(MpPolygon { inner: p }))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a polygon document (`{"vertices": [["x", "y"], ...]}`).
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mp_polygon_from_json(json: *const c_char, out: *mut *mut MpPolygon) -> MpStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| Fail(MpStatus::Parse, e.to_string()))?;
        let p = PolygonDocument::parse(text)
            .and_then(|d| d.to_exact())
            .map_err(|e| Fail(MpStatus::Parse, e.to_string()))?;
        write(out, handle(p))
    })
}

/// Builds a polygon from `count` vertices given as interleaved `x, y`
/// rationals: `numerators[2k]/denominators[2k]` is the `x` of vertex `k`.
///
/// # Safety
/// Both arrays must hold `2 * count` elements and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mp_polygon_new(
    numerators: *const i64,
    denominators: *const i64,
    count: usize,
    out: *mut *mut MpPolygon,
) -> MpStatus {
    guard(|| {
        if numerators.is_null() || denominators.is_null() {
            return Err(null("coordinate array"));
        }
        if count == 0 {
            return Err(Fail(MpStatus::WrongSize, "a polygon needs at least one vertex".into()));
        }
        let len = count.checked_mul(2).ok_or_else(|| Fail(MpStatus::InvalidArgument, "count overflows".into()))?;
        let nums = std::slice::from_raw_parts(numerators, len);
        let dens = std::slice::from_raw_parts(denominators, len);
        let coord = |i: usize| {
            Rational::new(nums[i], dens[i])
                .ok_or_else(|| Fail(MpStatus::InvalidArgument, format!("zero denominator at index {i}")))
        };
        let vertices = (0..count)
            .map(|k| Ok(PlanePoint::new(coord(2 * k)?, coord(2 * k + 1)?)))
            .collect::<Result<Vec<_>, Fail>>()?;
        write(out, handle(Polygon::new(vertices)?))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mp_polygon_free(p: *mut MpPolygon) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mp_polygon_len(p: *const MpPolygon) -> usize {
    p.as_ref().map_or(0, |h| h.inner.len())
}

/// Applies `n` midpoint steps and returns a new handle.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mp_polygon_midpoint(p: *const MpPolygon, n: usize, out: *mut *mut MpPolygon) -> MpStatus {
    guard(|| {
        let mut q = polygon(p)?.clone();
        for _ in 0..n {
            q = exact_poly::midpoint_map(&q);
        }
        write(out, handle(q))
    })
}

/// Signed area as an exact string (`"a"` or `"a/b"`) and as a double.
/// Either output may be null.
///
/// # Safety
/// `p` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn mp_polygon_signed_area(
    p: *const MpPolygon,
    exact: *mut *mut c_char,
    approx: *mut f64,
) -> MpStatus {
    guard(|| {
        let area = exact_poly::signed_area(polygon(p)?);
        if !approx.is_null() {
            approx.write(area.to_f64());
        }
        if !exact.is_null() {
            exact.write(c_string(area.to_string()));
        }
        Ok(())
    })
}

/// Area centroid as two exact strings. Fails with `AreaZero` when undefined.
///
/// # Safety
/// `p` must be a live handle; `x` and `y` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mp_polygon_centroid(
    p: *const MpPolygon,
    x: *mut *mut c_char,
    y: *mut *mut c_char,
) -> MpStatus {
    guard(|| {
        if x.is_null() || y.is_null() {
            return Err(null("output pointer"));
        }
        let g = exact_poly::centroid(polygon(p)?)?;
        x.write(c_string(g.x.to_string()));
        y.write(c_string(g.y.to_string()));
        Ok(())
    })
}

/// Serializes the polygon as a document readable by `mp_polygon_from_json`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mp_polygon_to_json(p: *const MpPolygon, out: *mut *mut c_char) -> MpStatus {
    guard(|| {
        let text = PolygonDocument::from_polygon(polygon(p)?).to_json();
        write(out, c_string(text))
    })
}

/// Exact colinearity check of `G_1 .. G_steps` for a hexagon.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mp_verify_hexagon(p: *const MpPolygon, steps: usize, out: *mut MpHexagonReport) -> MpStatus {
    guard(|| {
        let report = verify::verify_hexagon_theorem(polygon(p)?, steps)?;
        write(
            out,
            MpHexagonReport {
                all_colinear: report.all_colinear,
                limit_on_line: report.limit_on_line,
                g0_on_line: report.g0_on_line.map_or(-1, i32::from),
                first_violation: report.first_violation.map_or(-1, |n| n as i64),
                undefined_centroids: report.undefined_count(),
            },
        )
    })
}

/// Seeded random hexagon campaign.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mp_fuzz(
    seed: u64,
    trials: usize,
    bound: i64,
    steps: usize,
    out: *mut MpFuzzSummary,
) -> MpStatus {
    guard(|| {
        let config = FuzzConfig { seed, trials, coordinate_bound: bound, steps };
        let s = verify::fuzz_hexagons(&config)?;
        write(
            out,
            MpFuzzSummary {
                trials,
                colinear_passes: s.colinear_passes,
                colinear_failures: s.colinear_failures,
                limit_off_line: s.limit_off_line,
                insufficient_data: s.insufficient_data,
                g0_off_line: s.g0_off_line,
                z_scaling_passes: s.z_scaling_passes,
                z_scaling_failures: s.z_scaling_failures,
                passed: s.passed(),
            },
        )
    })
}

/// Slope ratios of the `m`-gon counterexample (`m = 5` or `m >= 7`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mp_proposition(
    m: usize,
    steps: usize,
    tolerance: f64,
    out: *mut MpPropositionReport,
) -> MpStatus {
    guard(|| {
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Fail(MpStatus::InvalidArgument, "tolerance must be positive".into()));
        }
        let r = verify::verify_proposition(m, steps, tolerance)?;
        write(
            out,
            MpPropositionReport {
                measured_ratio: r.measured_ratio,
                expected_ratio: r.expected_ratio,
                initial_slope: r.initial_slope,
                expected_initial_slope: r.expected_initial_slope,
                lines_pairwise_distinct: r.lines_pairwise_distinct,
                passed: r.passed(),
            },
        )
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn mp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
