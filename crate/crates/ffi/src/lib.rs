//! C ABI over the folium engine.
//!
//! Values cross the boundary as opaque handles owned by the caller and released with the
//! matching `_free` function. Every fallible call returns a [`FoliumStatus`]; on failure the
//! message is available from [`folium_last_error`] on the same thread. Returned strings are
//! released with [`folium_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use folium::catalog::{dimension_formula, named_form, verify_paper_report, CatalogError};
use folium::exactalg::Polynomial;
use folium::forms::OneForm;
use folium::ideals::{GroebnerBudget, Ideal, IdealError, VarietyRelation};
use folium::integrals::{is_first_integral, RationalPair};
use folium::textio::{parse_ideal, parse_one_form, parse_polynomial, serialize_report, ReportFormat, TextError};
use folium::torus::{fixing_lattice, limit_point, Direction, WeightVector};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoliumStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    UnknownKey = 5,
    /// A Gröbner computation exceeded its budget.
    Inconclusive = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoliumRelation {
    Equal = 0,
    LeftInRight = 1,
    RightInLeft = 2,
    Incomparable = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoliumDirection {
    ToZero = 0,
    ToInfinity = 1,
}

pub struct FoliumPolynomial(Polynomial);
pub struct FoliumForm(OneForm);
pub struct FoliumIdeal(Ideal);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(FoliumStatus, String);

impl From<TextError> for Failure {
    fn from(e: TextError) -> Self {
        match e {
            TextError::Ideal(i) => i.into(),
            e => Failure(FoliumStatus::ParseError, e.to_string()),
        }
    }
}

impl From<folium::textio::ParseError> for Failure {
    fn from(e: folium::textio::ParseError) -> Self {
        Failure(FoliumStatus::ParseError, e.to_string())
    }
}

impl From<IdealError> for Failure {
    fn from(e: IdealError) -> Self {
        let status = match e {
            IdealError::Inconclusive { .. } => FoliumStatus::Inconclusive,
            _ => FoliumStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownKey(_) => Failure(FoliumStatus::UnknownKey, e.to_string()),
            CatalogError::Ideal(i) => i.into(),
            e => Failure(FoliumStatus::InvalidArgument, e.to_string()),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure(FoliumStatus::InvalidArgument, e.to_string())
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Run `body`, translating failures and panics into a status and the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FoliumStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FoliumStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            FoliumStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(FoliumStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(FoliumStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(FoliumStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(FoliumStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(invalid)?;
    put(out, c.into_raw())
}

fn ambient(nvars: u32) -> Option<usize> {
    (nvars != 0).then_some(nvars as usize)
}

fn budget(max_pairs: u64, max_reductions: u64) -> GroebnerBudget {
    let mut b = GroebnerBudget::default();
    if max_pairs != 0 {
        b.max_pairs = usize::try_from(max_pairs).unwrap_or(usize::MAX);
    }
    if max_reductions != 0 {
        b.max_reductions = max_reductions;
    }
    b
}

/// Message for the most recent failure on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn folium_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn folium_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn folium_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a polynomial. `nvars = 0` infers the ambient from the highest variable used.
#[no_mangle]
pub unsafe extern "C" fn folium_polynomial_parse(source: *const c_char, nvars: u32, out: *mut *mut FoliumPolynomial) -> FoliumStatus {
    guard(|| {
        let p = parse_polynomial(text(source)?, ambient(nvars))?;
        put(out, Box::into_raw(Box::new(FoliumPolynomial(p))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn folium_polynomial_free(p: *mut FoliumPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn folium_polynomial_to_string(p: *const FoliumPolynomial, out: *mut *mut c_char) -> FoliumStatus {
    guard(|| put_string(out, handle(p)?.0.to_string()))
}

/// Parse a 1-form. `nvars = 0` infers the ambient.
#[no_mangle]
pub unsafe extern "C" fn folium_form_parse(source: *const c_char, nvars: u32, out: *mut *mut FoliumForm) -> FoliumStatus {
    guard(|| {
        let w = parse_one_form(text(source)?, ambient(nvars))?;
        put(out, Box::into_raw(Box::new(FoliumForm(w))))
    })
}

/// A catalog form by key, e.g. `omega` or `nu2`.
#[no_mangle]
pub unsafe extern "C" fn folium_form_named(key: *const c_char, out: *mut *mut FoliumForm) -> FoliumStatus {
    guard(|| {
        let w = named_form(text(key)?)?.form;
        put(out, Box::into_raw(Box::new(FoliumForm(w))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn folium_form_free(w: *mut FoliumForm) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

#[no_mangle]
pub unsafe extern "C" fn folium_form_to_string(w: *const FoliumForm, out: *mut *mut c_char) -> FoliumStatus {
    guard(|| put_string(out, handle(w)?.0.to_string()))
}

/// Foliation degree (or -1 when the form is not projective) and integrability.
#[no_mangle]
pub unsafe extern "C" fn folium_form_check(w: *const FoliumForm, foliation_degree: *mut i64, integrable: *mut bool) -> FoliumStatus {
    guard(|| {
        let w = &handle(w)?.0;
        put(foliation_degree, w.check_projective().foliation_degree.map_or(-1, i64::from))?;
        put(integrable, w.is_integrable())
    })
}

#[no_mangle]
pub unsafe extern "C" fn folium_form_radial_contraction(w: *const FoliumForm, out: *mut *mut FoliumPolynomial) -> FoliumStatus {
    guard(|| {
        let r = handle(w)?.0.radial_contraction();
        put(out, Box::into_raw(Box::new(FoliumPolynomial(r))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn folium_form_singular_ideal(w: *const FoliumForm, out: *mut *mut FoliumIdeal) -> FoliumStatus {
    guard(|| {
        let i = handle(w)?.0.singular_ideal();
        put(out, Box::into_raw(Box::new(FoliumIdeal(i))))
    })
}

/// Limit of the orbit under the subgroup with exponents `weights[0..len]`.
#[no_mangle]
pub unsafe extern "C" fn folium_form_limit(
    w: *const FoliumForm,
    weights: *const i64,
    len: usize,
    direction: FoliumDirection,
    out: *mut *mut FoliumForm,
) -> FoliumStatus {
    guard(|| {
        let w = &handle(w)?.0;
        if weights.is_null() {
            return Err(Failure(FoliumStatus::NullPointer, "null weights".into()));
        }
        let n = WeightVector::new(std::slice::from_raw_parts(weights, len).to_vec()).map_err(invalid)?;
        let dir = match direction {
            FoliumDirection::ToZero => Direction::ToZero,
            FoliumDirection::ToInfinity => Direction::ToInfinity,
        };
        let lim = limit_point(w, &n, dir).map_err(invalid)?;
        put(out, Box::into_raw(Box::new(FoliumForm(lim))))
    })
}

/// Basis of the fixing lattice, one vector per line.
#[no_mangle]
pub unsafe extern "C" fn folium_form_fixing_lattice(w: *const FoliumForm, out: *mut *mut c_char) -> FoliumStatus {
    guard(|| {
        let basis = fixing_lattice(&handle(w)?.0).map_err(invalid)?;
        put_string(out, basis.iter().map(|b| format!("{b}\n")).collect())
    })
}

/// Whether `num / den` is a first integral of the form.
#[no_mangle]
pub unsafe extern "C" fn folium_form_first_integral(
    w: *const FoliumForm,
    num: *const FoliumPolynomial,
    den: *const FoliumPolynomial,
    holds: *mut bool,
) -> FoliumStatus {
    guard(|| {
        let w = &handle(w)?.0;
        let n = handle(num)?.0.with_nvars(w.nvars()).map_err(invalid)?;
        let d = handle(den)?.0.with_nvars(w.nvars()).map_err(invalid)?;
        let pair = RationalPair::new(n, d).map_err(invalid)?;
        put(holds, is_first_integral(w, &pair).map_err(invalid)?.holds)
    })
}

/// Parse an ideal, `ideal(...)` or a product of them.
#[no_mangle]
pub unsafe extern "C" fn folium_ideal_parse(source: *const c_char, nvars: u32, out: *mut *mut FoliumIdeal) -> FoliumStatus {
    guard(|| {
        let i = parse_ideal(text(source)?, ambient(nvars))?;
        put(out, Box::into_raw(Box::new(FoliumIdeal(i))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn folium_ideal_free(i: *mut FoliumIdeal) {
    if !i.is_null() {
        drop(Box::from_raw(i));
    }
}

#[no_mangle]
pub unsafe extern "C" fn folium_ideal_to_string(i: *const FoliumIdeal, out: *mut *mut c_char) -> FoliumStatus {
    guard(|| put_string(out, handle(i)?.0.to_string()))
}

/// Compare zero sets. Zero budget entries mean the defaults.
#[no_mangle]
pub unsafe extern "C" fn folium_ideal_variety_compare(
    left: *const FoliumIdeal,
    right: *const FoliumIdeal,
    max_pairs: u64,
    max_reductions: u64,
    relation: *mut FoliumRelation,
) -> FoliumStatus {
    guard(|| {
        let c = handle(left)?.0.variety_compare(&handle(right)?.0, budget(max_pairs, max_reductions))?;
        let r = match c.relation {
            VarietyRelation::Equal => FoliumRelation::Equal,
            VarietyRelation::LeftInRight => FoliumRelation::LeftInRight,
            VarietyRelation::RightInLeft => FoliumRelation::RightInLeft,
            VarietyRelation::Incomparable => FoliumRelation::Incomparable,
        };
        put(relation, r)
    })
}

/// Decimal value of the dimension formula at `s`.
#[no_mangle]
pub unsafe extern "C" fn folium_dimension_formula(s: u32, out: *mut *mut c_char) -> FoliumStatus {
    guard(|| put_string(out, dimension_formula(u64::from(s)).to_string()))
}

/// The full claim ledger as JSON (`json = true`) or an aligned text table.
#[no_mangle]
pub unsafe extern "C" fn folium_verify_paper(json: bool, max_pairs: u64, max_reductions: u64, out: *mut *mut c_char) -> FoliumStatus {
    guard(|| {
        let records = verify_paper_report(budget(max_pairs, max_reductions));
        let format = if json { ReportFormat::Json } else { ReportFormat::Text };
        put_string(out, serialize_report(&records, format, false))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(s: *mut c_char) -> String {
        let out = CStr::from_ptr(s).to_str().unwrap().to_string();
        folium_string_free(s);
        out
    }

    #[test]
    fn parse_print_and_free() {
        unsafe {
            let mut p = ptr::null_mut();
            assert_eq!(folium_polynomial_parse(c("z1z3^2 + z2^3").as_ptr(), 0, &mut p), FoliumStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(folium_polynomial_to_string(p, &mut s), FoliumStatus::Ok);
            assert_eq!(take(s), "z2^3 + z1*z3^2");
            folium_polynomial_free(p);
        }
    }

    #[test]
    fn errors_set_last_error() {
        unsafe {
            let mut p = ptr::null_mut();
            assert_eq!(folium_polynomial_parse(c("z1 +").as_ptr(), 0, &mut p), FoliumStatus::ParseError);
            assert!(p.is_null());
            let msg = CStr::from_ptr(folium_last_error()).to_str().unwrap();
            assert!(msg.contains("column"), "{msg}");
            assert_eq!(folium_polynomial_parse(ptr::null(), 0, &mut p), FoliumStatus::NullPointer);
            let mut w = ptr::null_mut();
            assert_eq!(folium_form_named(c("nope").as_ptr(), &mut w), FoliumStatus::UnknownKey);
            assert_eq!(folium_form_to_string(ptr::null(), &mut ptr::null_mut()), FoliumStatus::NullPointer);
            assert_eq!(folium_polynomial_parse(c("1").as_ptr(), 0, &mut p), FoliumStatus::Ok);
            assert!(folium_last_error().is_null());
            folium_polynomial_free(p);
        }
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        unsafe {
            let mut w = ptr::null_mut();
            assert_eq!(folium_form_named(c("omega").as_ptr(), &mut w), FoliumStatus::Ok);
            let mut sing = ptr::null_mut();
            assert_eq!(folium_form_singular_ideal(w, &mut sing), FoliumStatus::Ok);
            let mut rel = FoliumRelation::Incomparable;
            assert_eq!(folium_ideal_variety_compare(sing, sing, 0, 2, &mut rel), FoliumStatus::Inconclusive);
            folium_ideal_free(sing);
            folium_form_free(w);
        }
    }
}
