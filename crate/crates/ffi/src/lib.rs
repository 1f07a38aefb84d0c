//! C ABI for `disco-top`.
//!
//! Every fallible call returns a [`DtStatus`]; on failure the message is
//! available from [`dt_last_error`] on the same thread until the next call.
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `_free` function. Array outputs use a caller buffer of
//! `capacity` entries; the required length is always written to `*len`, and
//! `DT_STATUS_BUFFER_TOO_SMALL` is returned if it does not fit.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use disco_top::bounds::{c_constant, r_constant};
use disco_top::complex::{chain_complex, deleted_join2, deleted_product, simplex_skeleton, text, SimplicialComplex};
use disco_top::experiment::{run_experiment, ExperimentConfig};
use disco_top::homology::betti_numbers;
use disco_top::metric::{ngon_sample, FiniteMetricSample, MetricKind};
use disco_top::moduli::{alpha_hat, alpha_r_hat, delta_hat, CodomainMetric, ConfigSample, SampledFunction};
use disco_top::report::{emit_report, Format};
use disco_top::vietoris_rips::{vr_complex, Convention, VRThreshold};
use disco_top::witnesses::{self, Witness};
use disco_top::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DtStatus {
    Ok = 0,
    InvalidArgument = 1,
    MalformedComplex = 2,
    NotInjective = 3,
    InvalidConfiguration = 4,
    NotAlmostRInjective = 5,
    ConstructionFailed = 6,
    InapplicableTheorem = 7,
    Parse = 8,
    Io = 9,
    NullPointer = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

impl From<&Error> for DtStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidArgument(_) => DtStatus::InvalidArgument,
            Error::MalformedComplex(_) => DtStatus::MalformedComplex,
            Error::NotInjective { .. } => DtStatus::NotInjective,
            Error::InvalidConfiguration(_) => DtStatus::InvalidConfiguration,
            Error::NotAlmostRInjective { .. } => DtStatus::NotAlmostRInjective,
            Error::ConstructionFailed(_) => DtStatus::ConstructionFailed,
            Error::InapplicableTheorem { .. } => DtStatus::InapplicableTheorem,
            Error::Parse { .. } => DtStatus::Parse,
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => DtStatus::Io,
        }
    }
}

/// Opaque simplicial complex.
pub struct DtComplex {
    inner: SimplicialComplex,
}

/// Opaque sampled function, optionally carrying the witness it came from.
pub struct DtFunction {
    inner: SampledFunction,
    witness_passed: Option<bool>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(DtStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(DtStatus::from(&e), e.to_string())
    }
}

type FfiResult = Result<(), Fail>;

fn null(what: &str) -> Fail {
    Fail(DtStatus::NullPointer, format!("null pointer: {what}"))
}

fn guard(body: impl FnOnce() -> FfiResult) -> DtStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DtStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DtStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn in_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_array(values: &[usize], buf: *mut usize, capacity: usize, len: *mut usize) -> FfiResult {
    *out_ref(len, "len")? = values.len();
    if values.len() > capacity {
        return Err(Fail(DtStatus::BufferTooSmall, format!("need {} entries, have {capacity}", values.len())));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dt_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// The `d`-skeleton of the `n`-simplex.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn dt_complex_skeleton(n: usize, d: usize, out: *mut *mut DtComplex) -> DtStatus {
    guard(|| {
        let slot = out_ref(out, "out")?;
        let inner = simplex_skeleton(n, d)?;
        *slot = Box::into_raw(Box::new(DtComplex { inner }));
        Ok(())
    })
}

/// Parses a simplicial complex in the `# disco-top complex v1` text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dt_complex_parse(text: *const c_char, out: *mut *mut DtComplex) -> DtStatus {
    guard(|| {
        let slot = out_ref(out, "out")?;
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Fail(DtStatus::InvalidArgument, "text is not UTF-8".into()))?;
        let inner = text::parse_simplicial(s)?;
        *slot = Box::into_raw(Box::new(DtComplex { inner }));
        Ok(())
    })
}

/// The 2-fold deleted join of `k`.
///
/// # Safety
/// `k` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dt_complex_deleted_join(k: *const DtComplex, out: *mut *mut DtComplex) -> DtStatus {
    guard(|| {
        let k = in_ref(k, "k")?;
        let slot = out_ref(out, "out")?;
        let inner = deleted_join2(&k.inner)?;
        *slot = Box::into_raw(Box::new(DtComplex { inner }));
        Ok(())
    })
}

/// Face counts by dimension.
///
/// # Safety
/// `k` must be a live handle; `buf` must hold `capacity` entries; `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dt_complex_f_vector(k: *const DtComplex, buf: *mut usize, capacity: usize, len: *mut usize) -> DtStatus {
    guard(|| {
        let k = in_ref(k, "k")?;
        write_array(&k.inner.f_vector(), buf, capacity, len)
    })
}

/// Betti numbers over GF(2).
///
/// # Safety
/// As for [`dt_complex_f_vector`].
#[no_mangle]
pub unsafe extern "C" fn dt_complex_betti(k: *const DtComplex, buf: *mut usize, capacity: usize, len: *mut usize) -> DtStatus {
    guard(|| {
        let k = in_ref(k, "k")?;
        let b = betti_numbers(&chain_complex(&k.inner)?)?;
        write_array(b.as_slice(), buf, capacity, len)
    })
}

/// Betti numbers over GF(2) of the `r`-fold deleted product of `k`.
///
/// # Safety
/// As for [`dt_complex_f_vector`].
#[no_mangle]
pub unsafe extern "C" fn dt_deleted_product_betti(
    k: *const DtComplex,
    r: usize,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> DtStatus {
    guard(|| {
        let k = in_ref(k, "k")?;
        let p = deleted_product(&k.inner, r)?;
        let b = betti_numbers(&chain_complex(&p)?)?;
        write_array(b.as_slice(), buf, capacity, len)
    })
}

/// Releases a complex; null is ignored.
///
/// # Safety
/// `k` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dt_complex_free(k: *mut DtComplex) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// Betti numbers of the Vietoris–Rips complex of the regular `n`-gon on the
/// unit circle (geodesic metric) at threshold `t`; `strict` nonzero selects `diam < t`.
///
/// # Safety
/// As for [`dt_complex_f_vector`].
#[no_mangle]
pub unsafe extern "C" fn dt_vr_ngon_betti(
    n: usize,
    t: f64,
    strict: c_int,
    max_dim: usize,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> DtStatus {
    guard(|| {
        let conv = if strict != 0 { Convention::Strict } else { Convention::Weak };
        let vr = vr_complex(&ngon_sample(n)?, VRThreshold::new(t, conv)?, max_dim)?;
        let b = betti_numbers(&chain_complex(&vr)?)?;
        write_array(b.as_slice(), buf, capacity, len)
    })
}

/// `r_n`, the vertex angle of the regular simplex inscribed in `S^n`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dt_r_constant(n: usize, out: *mut f64) -> DtStatus {
    guard(|| {
        *out_ref(out, "out")? = r_constant(n);
        Ok(())
    })
}

/// Best known lower bound for `c_{n,k}`; `*exact` is NaN when no exact value is known.
///
/// # Safety
/// `lower` and `exact` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dt_c_constant(n: usize, k: usize, lower: *mut f64, exact: *mut f64) -> DtStatus {
    guard(|| {
        let lo = out_ref(lower, "lower")?;
        let ex = out_ref(exact, "exact")?;
        let c = c_constant(n, k)?;
        *lo = c.best_lower();
        *ex = c.exact.unwrap_or(f64::NAN);
        Ok(())
    })
}

/// A function on a Euclidean point sample. `points` is `count × point_dim`
/// and `values` is `count × value_dim`, both row-major.
///
/// # Safety
/// Arrays must hold the stated number of doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dt_function_new(
    points: *const f64,
    count: usize,
    point_dim: usize,
    values: *const f64,
    value_dim: usize,
    resolution: f64,
    out: *mut *mut DtFunction,
) -> DtStatus {
    guard(|| {
        let slot = out_ref(out, "out")?;
        if count == 0 || point_dim == 0 || value_dim == 0 {
            return Err(Fail(DtStatus::InvalidArgument, "count and dimensions must be positive".into()));
        }
        if points.is_null() {
            return Err(null("points"));
        }
        if values.is_null() {
            return Err(null("values"));
        }
        let pts = std::slice::from_raw_parts(points, count * point_dim);
        let vals = std::slice::from_raw_parts(values, count * value_dim);
        let domain = FiniteMetricSample::from_points(pts.chunks(point_dim).map(<[f64]>::to_vec).collect(), MetricKind::Euclidean)?;
        let inner = SampledFunction::new(domain, vals.chunks(value_dim).map(<[f64]>::to_vec).collect(), resolution)?;
        *slot = Box::into_raw(Box::new(DtFunction { inner, witness_passed: None }));
        Ok(())
    })
}

fn emit_witness(w: disco_top::Result<Witness>, out: *mut *mut DtFunction) -> FfiResult {
    let slot = unsafe { out_ref(out, "out")? };
    let w = w?;
    *slot = Box::into_raw(Box::new(DtFunction { inner: w.function, witness_passed: Some(w.verification.passed) }));
    Ok(())
}

/// Digit-interleaving injection of the unit square into the line.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dt_witness_digit_interleave(bits: u32, grid: usize, out: *mut *mut DtFunction) -> DtStatus {
    guard(|| emit_witness(witnesses::digit_interleave(bits, grid), out))
}

/// Almost-injective drawing of `K_5` in the plane with crossings removed by jumps.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dt_witness_k5_jump(offset: f64, grid: usize, out: *mut *mut DtFunction) -> DtStatus {
    guard(|| emit_witness(witnesses::k5_jump_drawing(offset, grid), out))
}

/// Almost 2-injective map of the 2-simplex to the line with one jump point.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dt_witness_tverberg_one_point(grid: usize, out: *mut *mut DtFunction) -> DtStatus {
    guard(|| emit_witness(witnesses::tverberg_one_point(grid), out))
}

/// Injective step function on `[0, 1]`; `monotone` nonzero selects the monotone one.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dt_witness_step(monotone: c_int, grid: usize, out: *mut *mut DtFunction) -> DtStatus {
    guard(|| emit_witness(witnesses::step_witnesses(monotone != 0, grid), out))
}

/// Number of sample points.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dt_function_len(f: *const DtFunction, out: *mut usize) -> DtStatus {
    guard(|| {
        let f = in_ref(f, "f")?;
        *out_ref(out, "out")? = f.inner.len();
        Ok(())
    })
}

/// Witness self-check: 1 passed, 0 failed, -1 for functions not built as witnesses.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dt_function_verified(f: *const DtFunction, out: *mut c_int) -> DtStatus {
    guard(|| {
        let f = in_ref(f, "f")?;
        *out_ref(out, "out")? = match f.witness_passed {
            Some(true) => 1,
            Some(false) => 0,
            None => -1,
        };
        Ok(())
    })
}

/// `δ̂_ρ` with the Euclidean codomain metric.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dt_function_delta(f: *const DtFunction, rho: f64, out: *mut f64) -> DtStatus {
    guard(|| {
        let f = in_ref(f, "f")?;
        let slot = out_ref(out, "out")?;
        *slot = delta_hat(&f.inner, rho, CodomainMetric::Euclidean)?.value;
        Ok(())
    })
}

/// `α̂_ρ` over pairs at distance at least `sep`.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dt_function_alpha(f: *const DtFunction, rho: f64, sep: f64, out: *mut f64) -> DtStatus {
    guard(|| {
        let f = in_ref(f, "f")?;
        let slot = out_ref(out, "out")?;
        *slot = alpha_hat(&f.inner, rho, sep)?.value;
        Ok(())
    })
}

/// `α̂^{(r)}_ρ` over the `r`-fold deleted product of the carrier faces.
/// Requires a function with carriers (any witness on a complex).
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dt_function_alpha_r(f: *const DtFunction, r: usize, rho: f64, out: *mut f64) -> DtStatus {
    guard(|| {
        let f = in_ref(f, "f")?;
        let slot = out_ref(out, "out")?;
        let configs = ConfigSample::deleted_product(&f.inner, r)?;
        *slot = alpha_r_hat(&f.inner, &configs, rho)?.value;
        Ok(())
    })
}

/// Releases a function; null is ignored.
///
/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dt_function_free(f: *mut DtFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Runs an experiment from a JSON config and returns the JSON report in
/// `*report` (free with [`dt_string_free`]). `*passed` is 1 when every
/// mandatory check passed.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `report` and `passed` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dt_experiment_run(config_json: *const c_char, report: *mut *mut c_char, passed: *mut c_int) -> DtStatus {
    guard(|| {
        let rslot = out_ref(report, "report")?;
        let pslot = out_ref(passed, "passed")?;
        if config_json.is_null() {
            return Err(null("config_json"));
        }
        let s = CStr::from_ptr(config_json)
            .to_str()
            .map_err(|_| Fail(DtStatus::InvalidArgument, "config is not UTF-8".into()))?;
        let cfg = ExperimentConfig::from_json(s)?;
        let rep = run_experiment(&cfg)?;
        let bytes = emit_report(&rep, Format::Json)?;
        let c = CString::new(bytes).map_err(|_| Fail(DtStatus::Io, "report contains NUL".into()))?;
        *rslot = c.into_raw();
        *pslot = c_int::from(rep.passed());
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
