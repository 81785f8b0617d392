//! C ABI for the `fitt` engine.
//!
//! Every function returns a `FittStatus`. On failure the message is
//! available from `fitt_last_error` on the same thread. Handles are
//! opaque and must be released with their `_free` function; strings
//! returned through out-parameters must be released with
//! `fitt_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fitt::groebner::Ideal;
use fitt::polyring::{BaseOrder, CoefficientField, MonomialOrder, Ring};
use fitt::rees::ReesParams;
use fitt::verify::{self, FittingIndexPolicy};
use fitt::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FittStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    RingMismatch = 5,
    Arithmetic = 6,
    Panic = 7,
}

/// A polynomial ring: coefficient field and ordered variable names.
pub struct FittRing {
    ring: Ring,
}

/// A finitely generated ideal of a `FittRing`.
pub struct FittIdeal {
    ideal: Ideal,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(FittStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::UnknownVariable(_) => FittStatus::Parse,
            Error::InvalidField(_) | Error::InvalidRing(_) | Error::Validation(_) => FittStatus::Validation,
            Error::RingMismatch => FittStatus::RingMismatch,
            Error::DivisionByZero | Error::ExponentOverflow | Error::NonInvertibleDenominator(_) => FittStatus::Arithmetic,
        };
        Failure(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> FfiResult<()>) -> FittStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FittStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {message}"));
            FittStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(FittStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(FittStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|_| Failure(FittStatus::Validation, "string contains nul".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_ideal(out: *mut *mut FittIdeal, ideal: Ideal) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(FittIdeal { ideal })));
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fitt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fitt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fitt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a ring. `field` is `p=<prime>` or `rationals`; `vars` is a
/// comma-separated list of variable names, largest first.
///
/// # Safety
/// String arguments must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fitt_ring_new(field: *const c_char, vars: *const c_char, out: *mut *mut FittRing) -> FittStatus {
    guard(|| {
        let field: CoefficientField = text(field, "field")?.parse()?;
        let names: Vec<&str> = text(vars, "vars")?.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
        let ring = Ring::new(field, names)?;
        write_out(out, Box::into_raw(Box::new(FittRing { ring })))
    })
}

/// # Safety
/// `ring` must come from `fitt_ring_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fitt_ring_free(ring: *mut FittRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Creates an ideal from generators separated by `,`, `;` or newlines.
/// An empty string gives the zero ideal.
///
/// # Safety
/// `ring` must be a live handle; `gens` nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fitt_ideal_new(ring: *const FittRing, gens: *const c_char, out: *mut *mut FittIdeal) -> FittStatus {
    guard(|| {
        let ring = &handle(ring, "ring")?.ring;
        let gens = text(gens, "gens")?;
        let ideal = if gens.trim().is_empty() { Ideal::zero(ring) } else { Ideal::parse(ring, gens)? };
        write_ideal(out, ideal)
    })
}

/// # Safety
/// `ideal` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fitt_ideal_free(ideal: *mut FittIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

fn parse_order(ring: &Ring, order: &str) -> FfiResult<MonomialOrder> {
    match order {
        "" | "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        other => {
            let vars = other
                .strip_prefix("elim:")
                .ok_or_else(|| Failure(FittStatus::Validation, format!("unknown order {other:?}")))?;
            let mut block = Vec::new();
            for v in vars.split(',').map(str::trim) {
                block.push(ring.var_index(v).ok_or_else(|| Failure::from(Error::UnknownVariable(v.into())))?);
            }
            block.sort_unstable();
            block.dedup();
            Ok(MonomialOrder::Block { block, inner: BaseOrder::GrevLex })
        }
    }
}

/// The reduced Groebner basis under `order` (`grevlex`, `lex` or
/// `elim:<vars>`; null means grevlex), as a new ideal handle whose
/// generators are the basis elements.
///
/// # Safety
/// `ideal` must be a live handle; `order` null or nul-terminated; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn fitt_ideal_groebner(ideal: *const FittIdeal, order: *const c_char, out: *mut *mut FittIdeal) -> FittStatus {
    guard(|| {
        let ideal = &handle(ideal, "ideal")?.ideal;
        let order = if order.is_null() { "" } else { text(order, "order")? };
        let order = parse_order(ideal.ring(), order)?;
        let basis = ideal.groebner_basis(&order).to_vec();
        write_ideal(out, Ideal::new(ideal.ring(), basis)?)
    })
}

/// Membership of the polynomial `poly` in `ideal`.
///
/// # Safety
/// `ideal` must be a live handle; `poly` nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fitt_ideal_contains(ideal: *const FittIdeal, poly: *const c_char, out: *mut bool) -> FittStatus {
    guard(|| {
        let ideal = &handle(ideal, "ideal")?.ideal;
        let f = ideal.ring().parse(text(poly, "poly")?)?;
        write_out(out, ideal.contains(&f))
    })
}

/// Equality of two ideals of the same ring.
///
/// # Safety
/// Both handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fitt_ideal_equal(a: *const FittIdeal, b: *const FittIdeal, out: *mut bool) -> FittStatus {
    guard(|| {
        let (a, b) = (&handle(a, "a")?.ideal, &handle(b, "b")?.ideal);
        if a.ring() != b.ring() {
            return Err(Error::RingMismatch.into());
        }
        write_out(out, a.equals(b))
    })
}

/// The saturation `(I : g^∞)`.
///
/// # Safety
/// `ideal` must be a live handle; `g` nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fitt_ideal_saturate(ideal: *const FittIdeal, g: *const c_char, out: *mut *mut FittIdeal) -> FittStatus {
    guard(|| {
        let ideal = &handle(ideal, "ideal")?.ideal;
        let g = ideal.ring().parse(text(g, "g")?)?;
        write_ideal(out, ideal.saturate(&g)?)
    })
}

/// The intersection of two ideals of the same ring.
///
/// # Safety
/// Both handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fitt_ideal_intersect(a: *const FittIdeal, b: *const FittIdeal, out: *mut *mut FittIdeal) -> FittStatus {
    guard(|| {
        let (a, b) = (&handle(a, "a")?.ideal, &handle(b, "b")?.ideal);
        write_ideal(out, a.intersect(b)?)
    })
}

/// Generators as text, `(g1, g2, ...)`.
///
/// # Safety
/// `ideal` must be a live handle; `out` writable. Free the result with
/// `fitt_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fitt_ideal_to_string(ideal: *const FittIdeal, out: *mut *mut c_char) -> FittStatus {
    guard(|| {
        let ideal = &handle(ideal, "ideal")?.ideal;
        write_string(out, ideal.to_string())
    })
}

/// `Fitt_index` of the Kähler differentials of `P / relations`, as an
/// ideal of `P` containing the relations.
///
/// # Safety
/// `relations` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fitt_kaehler_fitting(relations: *const FittIdeal, index: i64, out: *mut *mut FittIdeal) -> FittStatus {
    guard(|| {
        let relations = &handle(relations, "relations")?.ideal;
        let algebra = fitt::fitmod::PresentedAlgebra::new(relations.clone());
        write_ideal(out, fitt::kaehler::kaehler_fitting(&algebra, index))
    })
}

/// Runs every check on one parameter tuple (`p=2 n=3 s=1 l=2 v=2,2,1`)
/// and writes the JSON report. `policy` is `paper`, `corrected` (the
/// default when null) or an integer index. With `no_timing` all chart
/// timings are reported as 0. Invalid parameters are a validation error.
///
/// # Safety
/// `params` nul-terminated; `policy` null or nul-terminated; `out`
/// writable. Free the result with `fitt_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fitt_verify_tuple_json(
    params: *const c_char,
    policy: *const c_char,
    no_timing: bool,
    out: *mut *mut c_char,
) -> FittStatus {
    guard(|| {
        let params: ReesParams = text(params, "params")?.parse()?;
        let policy: FittingIndexPolicy =
            if policy.is_null() { FittingIndexPolicy::default() } else { text(policy, "policy")?.parse()? };
        let mut report = verify::verify_tuple(&params, policy);
        if no_timing {
            report.strip_timing();
        }
        write_string(out, report.to_json())
    })
}

/// The non-normality probe for the prime `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fitt_check_nonnormal(p: u64, out: *mut bool) -> FittStatus {
    guard(|| {
        let report = verify::check_nonnormal(p)?;
        write_out(out, report.non_normal())
    })
}
