//! C ABI for the crossover certification toolkit.
//!
//! Opaque handles + integer status codes; strings returned by this library
//! are heap-allocated and must be released with [`crossover_string_free`].
//! The generated header lands in `include/crossover.h` at build time.

use std::ffi::{c_char, c_double, c_int, CStr, CString};
use std::fs::File;
use std::io::{BufReader, BufWriter};

use crossover_core::certifier::{certify, ErrorBudgets, Verdict, DEFAULT_MACHINE_BUDGET};
use crossover_core::error::Error;
use crossover_core::explicit_sum::{evaluate_H, zero_accuracy_bound};
use crossover_core::remainder::{LehmanParams, Mode};
use crossover_core::report::CertifyReport;
use crossover_core::zero_table::ZeroTable;

/// Status codes returned by every fallible function.
#[repr(C)]
pub enum CrossoverStatus {
    /// Success; for certification: a certificate was issued.
    Ok = 0,
    /// Certification ran to completion with a non-positive margin.
    Rejected = 1,
    /// Invalid input: arguments, table data, failed hypotheses.
    Invalid = 2,
    /// Internal inconsistency (recheck or oracle failure).
    Internal = 3,
    /// Filesystem error.
    Io = 4,
    /// A required pointer was null or a string was not UTF-8.
    NullPointer = 5,
}

/// Opaque validated zero table.
pub struct CrossoverTable(ZeroTable);

fn status_of(err: &Error) -> CrossoverStatus {
    match err {
        Error::Io(_) => CrossoverStatus::Io,
        Error::Recheck(_) | Error::OracleViolation(_) => CrossoverStatus::Internal,
        _ => CrossoverStatus::Invalid,
    }
}

/// # Safety
/// `path` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to receive the handle.
unsafe fn load_table(
    path: *const c_char,
    out: *mut *mut CrossoverTable,
    loader: impl FnOnce(&str) -> Result<ZeroTable, Error>,
) -> c_int {
    if path.is_null() || out.is_null() {
        return CrossoverStatus::NullPointer as c_int;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return CrossoverStatus::NullPointer as c_int;
    };
    match loader(path) {
        Ok(table) => {
            *out = Box::into_raw(Box::new(CrossoverTable(table)));
            CrossoverStatus::Ok as c_int
        }
        Err(e) => status_of(&e) as c_int,
    }
}

/// Parses a text table of ordinates from `path` with per-ordinate accuracy
/// `epsilon`, returning an owned handle through `out`.
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crossover_table_parse_file(
    path: *const c_char,
    epsilon: c_double,
    out: *mut *mut CrossoverTable,
) -> c_int {
    load_table(path, out, |p| {
        ZeroTable::parse(BufReader::new(File::open(p)?), epsilon)
    })
}

/// Reads a binary cache written by `crossover_table_write_cache` (or the CLI).
///
/// # Safety
/// `path` must be NUL-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crossover_table_read_cache(
    path: *const c_char,
    out: *mut *mut CrossoverTable,
) -> c_int {
    load_table(path, out, |p| {
        ZeroTable::read_cache(BufReader::new(File::open(p)?))
    })
}

/// Writes the binary cache for `table` to `path`.
///
/// # Safety
/// `table` must be a live handle from this library; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn crossover_table_write_cache(
    table: *const CrossoverTable,
    path: *const c_char,
) -> c_int {
    if table.is_null() || path.is_null() {
        return CrossoverStatus::NullPointer as c_int;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return CrossoverStatus::NullPointer as c_int;
    };
    let run = || -> Result<(), Error> {
        let mut sink = BufWriter::new(File::create(path)?);
        (*table).0.write_cache(&mut sink)?;
        Ok(())
    };
    match run() {
        Ok(()) => CrossoverStatus::Ok as c_int,
        Err(e) => status_of(&e) as c_int,
    }
}

/// Releases a table handle. Null is a no-op.
///
/// # Safety
/// `table` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn crossover_table_free(table: *mut CrossoverTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of ordinates; 0 for null.
///
/// # Safety
/// `table` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn crossover_table_count(table: *const CrossoverTable) -> u64 {
    if table.is_null() {
        0
    } else {
        (*table).0.count() as u64
    }
}

/// Largest ordinate; NaN for null.
///
/// # Safety
/// `table` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn crossover_table_gamma_max(table: *const CrossoverTable) -> c_double {
    if table.is_null() {
        f64::NAN
    } else {
        (*table).0.gamma_max()
    }
}

/// Cached compensated sum of 1/gamma; NaN for null.
///
/// # Safety
/// `table` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn crossover_table_reciprocal_sum(table: *const CrossoverTable) -> c_double {
    if table.is_null() {
        f64::NAN
    } else {
        (*table).0.reciprocal_sum()
    }
}

/// Declared per-ordinate accuracy; NaN for null.
///
/// # Safety
/// `table` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn crossover_table_epsilon(table: *const CrossoverTable) -> c_double {
    if table.is_null() {
        f64::NAN
    } else {
        (*table).0.epsilon()
    }
}

/// Evaluates `H(T, alpha, omega)`; writes the value and the zero-accuracy
/// bound through the out pointers.
///
/// # Safety
/// `table` must be live; out pointers must be valid for writes when non-null.
#[no_mangle]
pub unsafe extern "C" fn crossover_evaluate_h(
    table: *const CrossoverTable,
    alpha: c_double,
    omega: c_double,
    t_height: c_double,
    out_h: *mut c_double,
    out_zero_accuracy: *mut c_double,
) -> c_int {
    if table.is_null() {
        return CrossoverStatus::NullPointer as c_int;
    }
    match evaluate_H(&(*table).0, alpha, omega, t_height) {
        Ok(r) => {
            if !out_h.is_null() {
                *out_h = r.h_value;
            }
            if !out_zero_accuracy.is_null() {
                *out_zero_accuracy = r.zero_accuracy_bound;
            }
            CrossoverStatus::Ok as c_int
        }
        Err(e) => status_of(&e) as c_int,
    }
}

/// Runs the full certification and returns the JSON report through
/// `out_json` (owned by the caller; free with [`crossover_string_free`]).
///
/// `mode`: 0 = original, 1 = refined, 2 = rh. Negative `zero_accuracy`
/// derives the budget from the table's epsilon; negative `machine` selects
/// the default budget. Returns `Ok` for a certificate, `Rejected` for a
/// completed run with non-positive margin (the JSON is present either way).
///
/// # Safety
/// `table` must be live; `out_json` must be valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn crossover_certify_json(
    table: *const CrossoverTable,
    omega: c_double,
    eta: c_double,
    alpha: c_double,
    a_height: c_double,
    t_height: c_double,
    mode: c_int,
    zero_accuracy: c_double,
    machine: c_double,
    out_json: *mut *mut c_char,
) -> c_int {
    if table.is_null() || out_json.is_null() {
        return CrossoverStatus::NullPointer as c_int;
    }
    let table = &(*table).0;
    let run = || -> Result<Verdict, Error> {
        let mode = match mode {
            0 => Mode::Original,
            1 => Mode::Refined,
            2 => Mode::Rh,
            other => {
                return Err(Error::Argument(format!(
                    "mode must be 0 (original), 1 (refined) or 2 (rh), got {other}"
                )))
            }
        };
        let params = LehmanParams::new(omega, eta, alpha, a_height, t_height, mode)?;
        let za = if zero_accuracy < 0.0 {
            zero_accuracy_bound(table, alpha, omega)?
        } else {
            zero_accuracy
        };
        let machine = if machine < 0.0 {
            DEFAULT_MACHINE_BUDGET
        } else {
            machine
        };
        certify(table, &params, &ErrorBudgets::new(za, machine)?)
    };
    match run() {
        Ok(verdict) => {
            let report = CertifyReport::from_verdict(&verdict, true);
            let json = serde_json::to_string(&report).unwrap_or_default();
            match CString::new(json) {
                Ok(s) => {
                    *out_json = s.into_raw();
                    match verdict {
                        Verdict::Certified(_) => CrossoverStatus::Ok as c_int,
                        Verdict::Rejected(_) => CrossoverStatus::Rejected as c_int,
                    }
                }
                Err(_) => CrossoverStatus::Internal as c_int,
            }
        }
        Err(e) => status_of(&e) as c_int,
    }
}

/// Frees a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn crossover_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
