//! C ABI for the matrix-fibring library.
//!
//! Every public function here is callable from C through the generated
//! `include/matfib.h` header. The conventions are:
//!
//! - Matrices travel as opaque `MatfibMatrix*` handles created by
//!   [`matfib_matrix_builtin`] or [`matfib_matrix_from_spec`] and released
//!   with [`matfib_matrix_free`].
//! - Fallible calls return a [`MatfibStatus`] code; results are written
//!   through out-pointers only when the status is `Ok`.
//! - Returned strings are NUL-terminated heap copies the caller releases
//!   with [`matfib_string_free`]; the one exception is [`matfib_version`],
//!   which is static and must not be freed.
//! - On any non-`Ok` status a human-readable message is stored in a
//!   thread-local slot; fetch it with [`matfib_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use matfib::parse::{parse_formula, parse_sequent, parse_spec, SpecFile};
use matfib::render::render_matrix;
use matfib::{catalog, count_admissible_pairs, fibre, Matrix};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatfibStatus {
    /// The call succeeded and every out-parameter is written.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A spec, formula, or sequent failed to parse.
    ParseError = 3,
    /// Inputs were well-formed but do not fit together (unknown builtin
    /// name, mismatched matrices, invalid pair).
    InvalidInput = 4,
    /// Evaluation rejected the inputs (unknown connective or value).
    EvalError = 5,
    /// The library panicked; treat affected handles as poisoned.
    InternalError = 6,
}

/// Opaque handle to a finite logical matrix (a component or a fibring).
pub struct MatfibMatrix {
    inner: Matrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn remember_error(message: String) {
    let scrubbed = message.replace('\0', "?");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(scrubbed).expect("NUL bytes scrubbed"));
    });
}

fn fail(status: MatfibStatus, message: impl ToString) -> MatfibStatus {
    remember_error(message.to_string());
    status
}

fn status_of(error: &matfib::Error) -> MatfibStatus {
    match error {
        matfib::Error::Parse(_) => MatfibStatus::ParseError,
        matfib::Error::InvalidMatrix(_)
        | matfib::Error::InvalidPair(_)
        | matfib::Error::Unsupported(_) => MatfibStatus::InvalidInput,
        matfib::Error::Eval(_) => MatfibStatus::EvalError,
    }
}

/// Runs a call body, turning panics into [`MatfibStatus::InternalError`]
/// instead of unwinding across the C boundary.
fn guard(body: impl FnOnce() -> MatfibStatus) -> MatfibStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(MatfibStatus::InternalError, "internal panic"),
    }
}

/// Heap-allocates a NUL-terminated copy of `text` for the C caller.
fn export_string(text: String) -> *mut c_char {
    let c = CString::new(text).unwrap_or_else(|error| {
        let bytes: Vec<u8> = error.into_vec().into_iter().filter(|&b| b != 0).collect();
        CString::new(bytes).expect("NUL bytes removed")
    });
    c.into_raw()
}

/// Borrows a UTF-8 `&str` from a C string argument.
///
/// # Safety
/// `text` must be null or point to a NUL-terminated string.
unsafe fn import_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, MatfibStatus> {
    if text.is_null() {
        return Err(fail(MatfibStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(MatfibStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// Borrows the matrix behind a handle argument.
///
/// # Safety
/// `matrix` must be null or a live handle from this library.
unsafe fn import_matrix<'a>(matrix: *const MatfibMatrix) -> Result<&'a Matrix, MatfibStatus> {
    if matrix.is_null() {
        return Err(fail(MatfibStatus::NullPointer, "matrix handle is null"));
    }
    Ok(&(*matrix).inner)
}

fn export_matrix(out: *mut *mut MatfibMatrix, matrix: Matrix) -> MatfibStatus {
    let handle = Box::into_raw(Box::new(MatfibMatrix { inner: matrix }));
    unsafe { *out = handle };
    MatfibStatus::Ok
}

/// The library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn matfib_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a matrix from a builtin name (e.g. "CPLand", "P1", "P^2").
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn matfib_matrix_builtin(
    name: *const c_char,
    out: *mut *mut MatfibMatrix,
) -> MatfibStatus {
    guard(|| {
        if out.is_null() {
            return fail(MatfibStatus::NullPointer, "out is null");
        }
        let name = match import_str(name, "name") {
            Ok(name) => name,
            Err(status) => return status,
        };
        match catalog::builtin(name) {
            Some(matrix) => export_matrix(out, matrix),
            None => fail(
                MatfibStatus::InvalidInput,
                format!("{name} is not a builtin matrix"),
            ),
        }
    })
}

/// Creates a matrix from spec text: either a single matrix block, or two
/// matrix blocks and a pair block, in which case the constructed fibred
/// matrix is returned.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn matfib_matrix_from_spec(
    text: *const c_char,
    out: *mut *mut MatfibMatrix,
) -> MatfibStatus {
    guard(|| {
        if out.is_null() {
            return fail(MatfibStatus::NullPointer, "out is null");
        }
        let text = match import_str(text, "spec text") {
            Ok(text) => text,
            Err(status) => return status,
        };
        let matrix = match parse_spec(text) {
            Ok(SpecFile::Single(m)) => m,
            Ok(SpecFile::Fibred { m1, m2, pair }) => match fibre(&m1, &m2, &pair) {
                Ok(fibred) => fibred.matrix().clone(),
                Err(error) => return fail(status_of(&error), error),
            },
            Err(error) => return fail(status_of(&error), error),
        };
        export_matrix(out, matrix)
    })
}

/// Releases a matrix handle. Null is ignored.
///
/// # Safety
/// `matrix` must be null or a live handle from this library; the handle
/// must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn matfib_matrix_free(matrix: *mut MatfibMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// The matrix's name as a fresh string, or null on a null handle.
///
/// # Safety
/// `matrix` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn matfib_matrix_name(matrix: *const MatfibMatrix) -> *mut c_char {
    match import_matrix(matrix) {
        Ok(m) => export_string(m.name().to_string()),
        Err(_) => ptr::null_mut(),
    }
}

/// The number of truth values, or 0 on a null handle.
///
/// # Safety
/// `matrix` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn matfib_matrix_value_count(matrix: *const MatfibMatrix) -> usize {
    match import_matrix(matrix) {
        Ok(m) => m.value_count(),
        Err(_) => 0,
    }
}

/// Renders the matrix (carrier, designated values, tables) as a fresh
/// string, or null on a null handle.
///
/// # Safety
/// `matrix` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn matfib_matrix_render(matrix: *const MatfibMatrix) -> *mut c_char {
    match catch_unwind(AssertUnwindSafe(|| match import_matrix(matrix) {
        Ok(m) => export_string(render_matrix(m)),
        Err(_) => ptr::null_mut(),
    })) {
        Ok(rendered) => rendered,
        Err(_) => {
            remember_error("internal panic".to_string());
            ptr::null_mut()
        }
    }
}

/// Decides the sequent "premise, premise |- conclusion" (the premise list
/// may be empty) in the matrix by exhaustive valuation.
///
/// Writes the verdict to `out_holds`. When the sequent is refuted and
/// `out_witness` is non-null, also writes a refuting valuation rendered as
/// "var=value, ..." (release with [`matfib_string_free`]); on a holding
/// sequent a non-null `out_witness` is set to null.
///
/// # Safety
/// `matrix` must be a live handle from this library, `sequent` a
/// NUL-terminated string, `out_holds` a writable pointer; `out_witness`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn matfib_entails(
    matrix: *const MatfibMatrix,
    sequent: *const c_char,
    out_holds: *mut bool,
    out_witness: *mut *mut c_char,
) -> MatfibStatus {
    guard(|| {
        let m = match import_matrix(matrix) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let text = match import_str(sequent, "sequent") {
            Ok(text) => text,
            Err(status) => return status,
        };
        if out_holds.is_null() {
            return fail(MatfibStatus::NullPointer, "out_holds is null");
        }
        let (premises, conclusion) = match parse_sequent(text, m.signature()) {
            Ok(parsed) => parsed,
            Err(error) => return fail(status_of(&error), error),
        };
        let verdict = match m.entails(&premises, &conclusion) {
            Ok(verdict) => verdict,
            Err(error) => return fail(status_of(&error), error),
        };
        match verdict.counterexample() {
            None => {
                *out_holds = true;
                if !out_witness.is_null() {
                    *out_witness = ptr::null_mut();
                }
            }
            Some(witness) => {
                *out_holds = false;
                if !out_witness.is_null() {
                    *out_witness = export_string(witness.to_string());
                }
            }
        }
        MatfibStatus::Ok
    })
}

/// Decides whether the formula is a tautology of the matrix. Out-parameter
/// conventions match [`matfib_entails`].
///
/// # Safety
/// `matrix` must be a live handle from this library, `formula` a
/// NUL-terminated string, `out_holds` a writable pointer; `out_witness`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn matfib_is_tautology(
    matrix: *const MatfibMatrix,
    formula: *const c_char,
    out_holds: *mut bool,
    out_witness: *mut *mut c_char,
) -> MatfibStatus {
    guard(|| {
        let m = match import_matrix(matrix) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let text = match import_str(formula, "formula") {
            Ok(text) => text,
            Err(status) => return status,
        };
        if out_holds.is_null() {
            return fail(MatfibStatus::NullPointer, "out_holds is null");
        }
        let formula = match parse_formula(text, m.signature()) {
            Ok(formula) => formula,
            Err(error) => return fail(status_of(&error), error),
        };
        let verdict = match m.entails(&[], &formula) {
            Ok(verdict) => verdict,
            Err(error) => return fail(status_of(&error), error),
        };
        match verdict.counterexample() {
            None => {
                *out_holds = true;
                if !out_witness.is_null() {
                    *out_witness = ptr::null_mut();
                }
            }
            Some(witness) => {
                *out_holds = false;
                if !out_witness.is_null() {
                    *out_witness = export_string(witness.to_string());
                }
            }
        }
        MatfibStatus::Ok
    })
}

/// Counts the fibring pairs between the two matrices under which
/// designation is preserved in both directions.
///
/// # Safety
/// `m1` and `m2` must be live handles from this library and `out_count`
/// a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn matfib_admissible_pair_count(
    m1: *const MatfibMatrix,
    m2: *const MatfibMatrix,
    out_count: *mut u64,
) -> MatfibStatus {
    guard(|| {
        let first = match import_matrix(m1) {
            Ok(m) => m,
            Err(status) => return status,
        };
        let second = match import_matrix(m2) {
            Ok(m) => m,
            Err(status) => return status,
        };
        if out_count.is_null() {
            return fail(MatfibStatus::NullPointer, "out_count is null");
        }
        *out_count = count_admissible_pairs(first, second) as u64;
        MatfibStatus::Ok
    })
}

/// The message of the most recent error on this thread as a fresh string,
/// or null when no error has occurred. Release with [`matfib_string_free`].
#[no_mangle]
pub extern "C" fn matfib_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(message) => export_string(message.to_string_lossy().into_owned()),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `text` must be null or a string returned by this library; it must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn matfib_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
