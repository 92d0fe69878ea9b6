//! C ABI surface over the core library.
//!
//! Complexes travel across the boundary as opaque handles created from the
//! builtin datasets or from JSON; every fallible call returns an [`HsStatus`]
//! code, with a thread-local message behind [`hs_last_error`]. Strings
//! returned to the caller must be released with [`hs_string_free`], handles
//! with [`hs_complex_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hodgesamp::datasets::{self, TwoHoleConfig};
use hodgesamp::experiment::{run_noiseless_on, ComplexSource, ExperimentConfig};
use hodgesamp::SimplicialComplex;

/// Result codes for every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The complex JSON failed to parse or validate.
    InvalidComplex = 3,
    /// A numeric argument was out of range for the complex.
    InvalidArgument = 4,
    /// Dataset generation failed (bad seed/radii combination).
    DatasetFailed = 5,
    /// The drawn system was rank-deficient and the sufficient conditions
    /// failed, so no recovery was attempted.
    RecoveryNotRun = 6,
    /// Unexpected internal failure.
    Internal = 7,
}

/// Opaque handle to a validated simplicial complex.
pub struct HsComplex {
    inner: SimplicialComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl AsRef<str>) {
    let sanitized = msg.as_ref().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn hs_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

fn into_handle(complex: SimplicialComplex) -> *mut HsComplex {
    Box::into_raw(Box::new(HsComplex { inner: complex }))
}

/// The builtin 7-node complex with two filled triangles and two holes.
#[no_mangle]
pub extern "C" fn hs_complex_small() -> *mut HsComplex {
    into_handle(datasets::small_complex())
}

/// A procedural Delaunay lattice with two holes; null on failure (see
/// [`hs_last_error`]).
#[no_mangle]
pub extern "C" fn hs_complex_two_hole(num_points: usize, seed: u64) -> *mut HsComplex {
    let cfg = TwoHoleConfig {
        num_points,
        seed,
        ..TwoHoleConfig::default()
    };
    match datasets::two_hole_complex(&cfg) {
        Ok(out) => into_handle(out.complex),
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Parses and validates a complex from its JSON encoding; null on failure.
///
/// # Safety
/// `json` must be a valid NUL-terminated C string.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_from_json(json: *const c_char) -> *mut HsComplex {
    if json.is_null() {
        set_error("json argument is null");
        return std::ptr::null_mut();
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("json argument is not valid UTF-8");
            return std::ptr::null_mut();
        }
    };
    match SimplicialComplex::from_json(text) {
        Ok(c) => into_handle(c),
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Serializes a complex to JSON. Free the returned string with
/// [`hs_string_free`].
///
/// # Safety
/// `complex` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_to_json(complex: *const HsComplex) -> *mut c_char {
    if complex.is_null() {
        set_error("complex handle is null");
        return std::ptr::null_mut();
    }
    let json = (*complex).inner.to_json();
    CString::new(json)
        .map(CString::into_raw)
        .unwrap_or(std::ptr::null_mut())
}

/// Node, edge, and triangle counts.
///
/// # Safety
/// `complex` must be a live handle; out-pointers must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_counts(
    complex: *const HsComplex,
    out_nodes: *mut usize,
    out_edges: *mut usize,
    out_triangles: *mut usize,
) -> HsStatus {
    if complex.is_null() {
        set_error("complex handle is null");
        return HsStatus::NullArgument;
    }
    let c = &(*complex).inner;
    if !out_nodes.is_null() {
        *out_nodes = c.num_nodes();
    }
    if !out_edges.is_null() {
        *out_edges = c.num_edges();
    }
    if !out_triangles.is_null() {
        *out_triangles = c.num_triangles();
    }
    HsStatus::Ok
}

/// Dimension of the harmonic space of the edge Laplacian (the number of
/// independent holes).
///
/// # Safety
/// `complex` must be a live handle; `out_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_harmonic_dim(
    complex: *const HsComplex,
    out_dim: *mut usize,
) -> HsStatus {
    if complex.is_null() || out_dim.is_null() {
        set_error("null argument");
        return HsStatus::NullArgument;
    }
    *out_dim = datasets::betti1(&(*complex).inner);
    HsStatus::Ok
}

/// Runs one noiseless synthesis/observation/recovery cycle.
///
/// Writes the relative reconstruction errors of the node, triangle, and
/// harmonic signals into `out_rel_err[0..3]`, and the assembled system's
/// numerical rank and column count into the rank out-pointers (when
/// non-null). Returns [`HsStatus::RecoveryNotRun`] when the system stayed
/// rank-deficient and the sufficient conditions failed.
///
/// # Safety
/// `complex` must be a live handle; `out_rel_err` must point to at least
/// three writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hs_recover_noiseless(
    complex: *const HsComplex,
    w0: usize,
    w2: usize,
    r1: usize,
    p_shifts: usize,
    sample_size: usize,
    seed: u64,
    spectral_scaling: bool,
    out_rel_err: *mut f64,
    out_rank: *mut usize,
    out_full_rank: *mut usize,
) -> HsStatus {
    if complex.is_null() || out_rel_err.is_null() {
        set_error("null argument");
        return HsStatus::NullArgument;
    }
    let c = (*complex).inner.clone();
    let cfg = ExperimentConfig {
        source: ComplexSource::Small, // unused: the handle's complex is passed directly
        w0,
        w2,
        r1,
        p_shifts,
        sample_sizes: vec![sample_size],
        seed,
        spectral_scaling,
        ..ExperimentConfig::default()
    };
    let report = match catch_unwind(AssertUnwindSafe(|| run_noiseless_on(c, &cfg))) {
        Ok(Ok(report)) => report,
        Ok(Err(e)) => {
            set_error(e.to_string());
            return HsStatus::InvalidArgument;
        }
        Err(_) => {
            set_error("internal panic");
            return HsStatus::Internal;
        }
    };
    if !out_rank.is_null() {
        *out_rank = report.rank.rank;
    }
    if !out_full_rank.is_null() {
        *out_full_rank = report.rank.full_rank;
    }
    match &report.recovery {
        Some(errs) => {
            *out_rel_err = errs.x0;
            *out_rel_err.add(1) = errs.x2;
            *out_rel_err.add(2) = errs.r1;
            HsStatus::Ok
        }
        None => {
            set_error(format!(
                "system rank {}/{} with sufficient conditions unmet",
                report.rank.rank, report.rank.full_rank
            ));
            HsStatus::RecoveryNotRun
        }
    }
}

/// Evaluates the perfect-recovery conditions; writes the verdict into
/// `out_feasible`.
///
/// # Safety
/// `complex` must be a live handle; `out_feasible` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_check_feasibility(
    complex: *const HsComplex,
    w0: usize,
    w2: usize,
    r1: usize,
    p_shifts: usize,
    sample_size: usize,
    seed: u64,
    out_feasible: *mut bool,
) -> HsStatus {
    if complex.is_null() || out_feasible.is_null() {
        set_error("null argument");
        return HsStatus::NullArgument;
    }
    let c = (*complex).inner.clone();
    let cfg = ExperimentConfig {
        w0,
        w2,
        r1,
        p_shifts,
        sample_sizes: vec![sample_size],
        seed,
        ..ExperimentConfig::default()
    };
    match catch_unwind(AssertUnwindSafe(|| run_noiseless_on(c, &cfg))) {
        Ok(Ok(report)) => {
            *out_feasible = report.feasibility.overall;
            HsStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            HsStatus::InvalidArgument
        }
        Err(_) => {
            set_error("internal panic");
            HsStatus::Internal
        }
    }
}

/// Releases a complex handle. Null is ignored.
///
/// # Safety
/// `complex` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_free(complex: *mut HsComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn small_complex_counts_and_harmonics() {
        let h = hs_complex_small();
        assert!(!h.is_null());
        let (mut n0, mut n1, mut n2, mut holes) = (0usize, 0usize, 0usize, 0usize);
        unsafe {
            assert_eq!(
                hs_complex_counts(h, &mut n0, &mut n1, &mut n2),
                HsStatus::Ok
            );
            assert_eq!(hs_complex_harmonic_dim(h, &mut holes), HsStatus::Ok);
            hs_complex_free(h);
        }
        assert_eq!((n0, n1, n2, holes), (7, 10, 2, 2));
    }

    #[test]
    fn two_hole_construction_and_failure() {
        let h = hs_complex_two_hole(80, 2);
        assert!(!h.is_null());
        let mut holes = 0usize;
        unsafe {
            assert_eq!(hs_complex_harmonic_dim(h, &mut holes), HsStatus::Ok);
            hs_complex_free(h);
        }
        assert_eq!(holes, 2);

        // Seed 3 at this density merges a cavity into the hull.
        let bad = hs_complex_two_hole(80, 3);
        assert!(bad.is_null());
        unsafe {
            let msg = CStr::from_ptr(hs_last_error()).to_str().unwrap();
            assert!(msg.contains("holes"), "unexpected message: {msg}");
        }
    }

    #[test]
    fn json_round_trip_through_the_boundary() {
        let h = hs_complex_small();
        unsafe {
            let json = hs_complex_to_json(h);
            assert!(!json.is_null());
            let back = hs_complex_from_json(json);
            assert!(!back.is_null());
            let (mut n0, mut n1, mut n2) = (0, 0, 0);
            hs_complex_counts(back, &mut n0, &mut n1, &mut n2);
            assert_eq!((n0, n1, n2), (7, 10, 2));
            hs_string_free(json);
            hs_complex_free(back);
            hs_complex_free(h);
        }
    }

    #[test]
    fn invalid_json_sets_error() {
        let bad =
            CString::new("{\"num_nodes\": 3, \"edges\": [[0,1],[0,2]], \"triangles\": [[0,1,2]]}")
                .unwrap();
        unsafe {
            let h = hs_complex_from_json(bad.as_ptr());
            assert!(h.is_null());
            let msg = CStr::from_ptr(hs_last_error()).to_str().unwrap();
            assert!(msg.contains("edge"), "unexpected message: {msg}");
        }
    }

    #[test]
    fn noiseless_recovery_over_the_boundary() {
        let h = hs_complex_small();
        let mut errs = [f64::NAN; 3];
        let (mut rank, mut full) = (0usize, 0usize);
        unsafe {
            let status = hs_recover_noiseless(
                h,
                4,
                1,
                2,
                6,
                2,
                7,
                false,
                errs.as_mut_ptr(),
                &mut rank,
                &mut full,
            );
            assert_eq!(status, HsStatus::Ok);
            hs_complex_free(h);
        }
        assert_eq!((rank, full), (7, 7));
        for e in errs {
            assert!(e <= 1e-6, "relative error {e}");
        }
    }

    #[test]
    fn feasibility_over_the_boundary() {
        let h = hs_complex_small();
        let mut feasible = false;
        unsafe {
            assert_eq!(
                hs_check_feasibility(h, 4, 1, 2, 6, 2, 7, &mut feasible),
                HsStatus::Ok
            );
            assert!(feasible);
            assert_eq!(
                hs_check_feasibility(h, 4, 1, 2, 3, 2, 7, &mut feasible),
                HsStatus::Ok
            );
            assert!(!feasible);
            hs_complex_free(h);
        }
    }

    #[test]
    fn null_arguments_are_rejected() {
        let mut n = 0usize;
        unsafe {
            assert_eq!(
                hs_complex_counts(std::ptr::null(), &mut n, &mut n, &mut n),
                HsStatus::NullArgument
            );
            assert!(hs_complex_from_json(std::ptr::null()).is_null());
            hs_complex_free(std::ptr::null_mut());
            hs_string_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn bad_bandwidth_reports_invalid_argument() {
        let h = hs_complex_small();
        let mut errs = [0.0; 3];
        unsafe {
            let status = hs_recover_noiseless(
                h,
                99,
                1,
                2,
                6,
                2,
                7,
                false,
                errs.as_mut_ptr(),
                std::ptr::null_mut(),
                std::ptr::null_mut(),
            );
            // The distinctness cap truncates w0 to what exists, so an
            // oversized harmonic bandwidth is the reliable failure.
            assert_eq!(status, HsStatus::Ok);
            let status = hs_recover_noiseless(
                h,
                4,
                1,
                99,
                6,
                2,
                7,
                false,
                errs.as_mut_ptr(),
                std::ptr::null_mut(),
                std::ptr::null_mut(),
            );
            assert_eq!(status, HsStatus::InvalidArgument);
            hs_complex_free(h);
        }
    }
}
