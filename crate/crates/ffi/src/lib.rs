//! C ABI over `radfact`.
//!
//! Every fallible entry point returns a [`RadfactStatus`] and writes results
//! through out-pointers. On failure the message is available from
//! [`radfact_last_error`] on the same thread. Strings returned by the library
//! are owned by the caller and released with [`radfact_string_free`]; handles
//! are released with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use radfact::cli::{self, Command, Job};
use radfact::desc::{ideal_to_json, parse_ring};
use radfact::quadring::{sp_factor, QuadElement, QuadIdeal, QuadRing};
use radfact::sspengine::decide_ssp_with;
use radfact::{Error, FinRing, Limits};
use serde_json::{json, Value};

/// Result codes shared by all entry points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadfactStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Resource = 3,
    Disagreement = 4,
    Panic = 5,
}

/// Resource bounds. A zero field keeps the library default.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct RadfactLimits {
    pub max_order: u64,
    pub max_ideals: u64,
    pub max_norm: u64,
}

/// Opaque finite ring.
pub struct RadfactRing {
    ring: FinRing,
    limits: Limits,
}

/// Opaque quadratic order.
pub struct RadfactQuadRing {
    ring: QuadRing,
}

/// Opaque ideal of a quadratic order.
pub struct RadfactQuadIdeal {
    ideal: QuadIdeal,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> RadfactStatus {
    match e.exit_code() {
        3 => RadfactStatus::Resource,
        _ => RadfactStatus::InvalidInput,
    }
}

struct Fail(RadfactStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(RadfactStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RadfactStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RadfactStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("panic: {msg}"));
            RadfactStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(RadfactStatus::InvalidInput, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, v: T) {
    if !out.is_null() {
        *out = v;
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn limits_of(l: *const RadfactLimits) -> Limits {
    let l = if l.is_null() { RadfactLimits::default() } else { unsafe { *l } };
    let nz = |v: u64| (v != 0).then_some(v);
    cli::limits_from(
        nz(l.max_order).map(|v| v as usize),
        nz(l.max_ideals).map(|v| v as usize),
        nz(l.max_norm).map(u128::from),
    )
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn radfact_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failure on this thread, or null. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn radfact_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn radfact_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a CLI command (`factor`, `decide-ssp`, `spectrum`, `ideals`,
/// `sf-chain`, `census`) on `input` and returns its JSON report. The report
/// is produced for failures too; `exit_code` receives the CLI exit status.
///
/// # Safety
/// String arguments must be NUL-terminated. `limits` may be null.
#[no_mangle]
pub unsafe extern "C" fn radfact_run(
    command: *const c_char,
    input: *const c_char,
    limits: *const RadfactLimits,
    report: *mut *mut c_char,
    exit_code: *mut i32,
) -> RadfactStatus {
    guard(|| {
        if report.is_null() {
            return Err(null("report"));
        }
        let command: Command = read_str(command, "command")?.parse()?;
        let text = read_str(input, "input")?;
        let outcome = match Job::from_text(command, text, limits_of(limits)) {
            Ok(job) => cli::run(&job),
            Err(e) => cli::failure(&e),
        };
        *report = to_c_string(outcome.render());
        write_out(exit_code, outcome.exit_code);
        match outcome.exit_code {
            0 => Ok(()),
            cli::EXIT_DISAGREEMENT => Err(Fail(RadfactStatus::Disagreement, "decision routes disagree".into())),
            code => {
                let msg = outcome.report["error"]["message"].as_str().unwrap_or("failed").to_string();
                Err(Fail(if code == 3 { RadfactStatus::Resource } else { RadfactStatus::InvalidInput }, msg))
            }
        }
    })
}

/// Builds a finite ring from a JSON description.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable. `limits` may be null.
#[no_mangle]
pub unsafe extern "C" fn radfact_ring_from_json(
    json: *const c_char,
    limits: *const RadfactLimits,
    out: *mut *mut RadfactRing,
) -> RadfactStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let v = cli::parse_json(read_str(json, "json")?)?;
        let limits = limits_of(limits);
        let ring = parse_ring(&v, &limits)?;
        *out = Box::into_raw(Box::new(RadfactRing { ring, limits }));
        Ok(())
    })
}

/// # Safety
/// `ring` must come from [`radfact_ring_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn radfact_ring_free(ring: *mut RadfactRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `ring` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn radfact_ring_order(ring: *const RadfactRing) -> u64 {
    ring.as_ref().map_or(0, |r| r.ring.order() as u64)
}

/// Number of ideals.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn radfact_ring_ideal_count(ring: *const RadfactRing, out: *mut u64) -> RadfactStatus {
    guard(|| {
        let r = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = r.ring.all_ideals_with(&r.limits)?.len() as u64;
        Ok(())
    })
}

/// Decides whether every ideal is a product of radical ideals. `report`, when
/// non-null, receives a JSON object with the witness and the factorizations.
///
/// # Safety
/// `ring` must be a live handle; `is_ssp` must be writable; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn radfact_ring_decide_ssp(
    ring: *const RadfactRing,
    is_ssp: *mut bool,
    report: *mut *mut c_char,
) -> RadfactStatus {
    guard(|| {
        let r = ring.as_ref().ok_or_else(|| null("ring"))?;
        if is_ssp.is_null() {
            return Err(null("is_ssp"));
        }
        let v = decide_ssp_with(&r.ring, &r.limits)?;
        *is_ssp = v.is_ssp;
        if !report.is_null() {
            let factorizations: Vec<Value> = v
                .factorizations
                .iter()
                .map(|(i, f)| {
                    json!({
                        "ideal": ideal_to_json(i),
                        "factors": f.as_ref().map(|fs| fs.iter().map(ideal_to_json).collect::<Vec<_>>()),
                    })
                })
                .collect();
            let body = json!({
                "is_ssp": v.is_ssp,
                "witness": v.witness.as_ref().map(ideal_to_json),
                "radical_closure_size": v.closure.len(),
                "factorizations": factorizations,
            });
            *report = to_c_string(body.to_string());
        }
        Ok(())
    })
}

/// Creates the ring of integers of Q(sqrt(d)) for squarefree `d` other than 0 and 1.
///
/// # Safety
/// `out` must be writable. `limits` may be null.
#[no_mangle]
pub unsafe extern "C" fn radfact_quad_ring_new(
    d: i64,
    limits: *const RadfactLimits,
    out: *mut *mut RadfactQuadRing,
) -> RadfactStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let ring = QuadRing::with_limits(d, &limits_of(limits))?;
        *out = Box::into_raw(Box::new(RadfactQuadRing { ring }));
        Ok(())
    })
}

/// # Safety
/// `ring` must come from [`radfact_quad_ring_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn radfact_quad_ring_free(ring: *mut RadfactQuadRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Ideal generated by `x[k] + y[k]*w` for `k < n`, where `w` is the standard
/// integral basis element.
///
/// # Safety
/// `x` and `y` must point to `n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn radfact_quad_ideal_from_gens(
    ring: *const RadfactQuadRing,
    x: *const i64,
    y: *const i64,
    n: usize,
    out: *mut *mut RadfactQuadIdeal,
) -> RadfactStatus {
    guard(|| {
        let q = ring.as_ref().ok_or_else(|| null("ring"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if n > 0 && (x.is_null() || y.is_null()) {
            return Err(null("generator array"));
        }
        let gens: Vec<QuadElement> = (0..n)
            .map(|k| QuadElement::new(i128::from(*x.add(k)), i128::from(*y.add(k))))
            .collect();
        let ideal = q.ring.ideal_from_gens(&gens)?;
        *out = Box::into_raw(Box::new(RadfactQuadIdeal { ideal }));
        Ok(())
    })
}

/// # Safety
/// `ideal` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn radfact_quad_ideal_free(ideal: *mut RadfactQuadIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Writes the Hermite basis `(a, 0), (b, c)` to `out[0..3]`.
///
/// # Safety
/// `ideal` must be a live handle; `out` must point to three writable values.
#[no_mangle]
pub unsafe extern "C" fn radfact_quad_ideal_hnf(ideal: *const RadfactQuadIdeal, out: *mut i64) -> RadfactStatus {
    guard(|| {
        let i = ideal.as_ref().ok_or_else(|| null("ideal"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        for (k, v) in i.ideal.hnf().into_iter().enumerate() {
            *out.add(k) = i64::try_from(v).map_err(|_| Error::Overflow("hnf entry"))?;
        }
        Ok(())
    })
}

/// Index of the ideal in the order.
///
/// # Safety
/// `ideal` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn radfact_quad_ideal_norm(ideal: *const RadfactQuadIdeal, out: *mut u64) -> RadfactStatus {
    guard(|| {
        let i = ideal.as_ref().ok_or_else(|| null("ideal"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = u64::try_from(i.ideal.norm()).map_err(|_| Error::Overflow("norm"))?;
        Ok(())
    })
}

/// Prime factorization and ascending radical chain of a proper nonzero ideal,
/// as a JSON object with `factors` and `chain`.
///
/// # Safety
/// Handles must be live and belong together; `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn radfact_quad_factor(
    ring: *const RadfactQuadRing,
    ideal: *const RadfactQuadIdeal,
    report: *mut *mut c_char,
) -> RadfactStatus {
    guard(|| {
        let q = ring.as_ref().ok_or_else(|| null("ring"))?;
        let i = ideal.as_ref().ok_or_else(|| null("ideal"))?;
        if report.is_null() {
            return Err(null("report"));
        }
        if i.ideal.d() != q.ring.d() {
            return Err(Error::invalid("ideal belongs to a different order").into());
        }
        let factors = q.ring.factor_ideal(&i.ideal)?;
        let chain = sp_factor(&q.ring, &i.ideal)?;
        let body = json!({
            "factors": factors.factors.iter().map(|(p, e)| json!({"prime": p, "exponent": e})).collect::<Vec<_>>(),
            "chain": chain.links,
        });
        *report = to_c_string(body.to_string());
        Ok(())
    })
}
