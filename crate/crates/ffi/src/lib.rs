//! C ABI over the switchform core.
//!
//! Models and solutions are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`SfStatus`]; on failure the message is available from
//! [`sf_last_error_message`] on the same thread. Strings handed out by the
//! library are NUL-terminated UTF-8 and must be released with
//! [`sf_string_free`]. Rationals cross the boundary as `"p/q"` text.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use switchform::formulations::{attach_objective, dwell_grid_factor};
use switchform::instance::Instance;
use switchform::ratlp::{export_lp, lp_fix_and_check, lp_solve, parse_lp, LpModel, LpResult};
use switchform::rational::{format_rational, parse_rational};
use switchform::stepfn::StepFunction;
use switchform::{Error, Rational};

/// Result code of every fallible call. The input, capability and
/// verification codes match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    InvalidInput = 2,
    CapabilityExceeded = 3,
    VerificationFailed = 4,
    NullPointer = 5,
    Internal = 6,
}

/// Outcome of an LP solve.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfLpStatus {
    Optimal = 0,
    Infeasible = 1,
    Unbounded = 2,
}

/// Opaque exact-rational LP model.
pub struct SfModel {
    model: LpModel,
}

/// Opaque LP solve result.
pub struct SfSolution {
    names: Vec<String>,
    result: LpResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Core(e.into())
    }
}

fn status_of(e: &Error) -> SfStatus {
    match e.exit_code() {
        3 => SfStatus::CapabilityExceeded,
        4 => SfStatus::VerificationFailed,
        _ => SfStatus::InvalidInput,
    }
}

/// Run `body`, translating errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SfStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            SfStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            let status = status_of(&e);
            set_error(e.to_string());
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            SfStatus::Internal
        }
    }
}

unsafe fn input_str<'a>(ptr: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| Failure::Core(Error::Malformed(format!("{what} is not valid UTF-8"))))
}

unsafe fn input_ref<'a, T>(ptr: *const T, what: &'static str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or(Failure::Null(what))
}

fn check_out<T>(out: *mut T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::Null(what))
    } else {
        Ok(())
    }
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " ")).unwrap_or_default().into_raw()
}

unsafe fn emit_model(out: *mut *mut SfModel, model: LpModel) {
    *out = Box::into_raw(Box::new(SfModel { model }));
}

/// Build the LP for an instance document (`{"kind": ...}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_model_from_instance_json(json: *const c_char, out: *mut *mut SfModel) -> SfStatus {
    guard(|| {
        check_out(out, "out")?;
        let text = input_str(json, "json")?;
        let model = Instance::from_json(text)?.build()?;
        emit_model(out, model);
        Ok(())
    })
}

/// Parse a model from LP text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_model_from_lp_text(text: *const c_char, out: *mut *mut SfModel) -> SfStatus {
    guard(|| {
        check_out(out, "out")?;
        let model = parse_lp(input_str(text, "text")?)?;
        emit_model(out, model);
        Ok(())
    })
}

/// Render a model as LP text. Release the result with [`sf_string_free`].
///
/// # Safety
/// `model` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_model_to_lp_text(model: *const SfModel, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        check_out(out, "out")?;
        let m = input_ref(model, "model")?;
        *out = into_c_string(export_lp(&m.model));
        Ok(())
    })
}

/// Number of variables and rows of a model.
///
/// # Safety
/// `model` must come from this library; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sf_model_size(model: *const SfModel, vars: *mut usize, rows: *mut usize) -> SfStatus {
    guard(|| {
        check_out(vars, "vars")?;
        check_out(rows, "rows")?;
        let m = input_ref(model, "model")?;
        *vars = m.model.num_vars();
        *rows = m.model.num_rows();
        Ok(())
    })
}

/// New model with the step-function objective (`{"T","N","values"}`)
/// priced onto its controls. The input model is left unchanged.
///
/// # Safety
/// `model` must come from this library, `json` must be a NUL-terminated
/// string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_model_attach_objective_json(
    model: *const SfModel,
    json: *const c_char,
    out: *mut *mut SfModel,
) -> SfStatus {
    guard(|| {
        check_out(out, "out")?;
        let m = input_ref(model, "model")?;
        let c: StepFunction = serde_json::from_str(input_str(json, "json")?)?;
        emit_model(out, attach_objective(&m.model, &c)?);
        Ok(())
    })
}

/// Minimise the model's objective exactly.
///
/// # Safety
/// `model` must come from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_model_solve(model: *const SfModel, out: *mut *mut SfSolution) -> SfStatus {
    guard(|| {
        check_out(out, "out")?;
        let m = input_ref(model, "model")?;
        let result = lp_solve(&m.model)?;
        let names = m.model.vars.iter().map(|v| v.name.clone()).collect();
        *out = Box::into_raw(Box::new(SfSolution { names, result }));
        Ok(())
    })
}

/// Whether the variables named in `assignment_json` (an object mapping
/// names to `"p/q"` strings) extend to a feasible point of the model.
///
/// # Safety
/// `model` must come from this library, `assignment_json` must be a
/// NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_model_fix_and_check(
    model: *const SfModel,
    assignment_json: *const c_char,
    out: *mut bool,
) -> SfStatus {
    guard(|| {
        check_out(out, "out")?;
        let m = input_ref(model, "model")?;
        let raw: BTreeMap<String, String> = serde_json::from_str(input_str(assignment_json, "assignment_json")?)?;
        let fixed: Vec<(&str, Rational)> =
            raw.iter().map(|(k, v)| Ok((k.as_str(), parse_rational(v)?))).collect::<Result<_, Error>>()?;
        *out = lp_fix_and_check(&m.model, &fixed)?;
        Ok(())
    })
}

/// # Safety
/// `solution` must come from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_solution_status(solution: *const SfSolution, out: *mut SfLpStatus) -> SfStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = match input_ref(solution, "solution")?.result {
            LpResult::Optimal { .. } => SfLpStatus::Optimal,
            LpResult::Infeasible => SfLpStatus::Infeasible,
            LpResult::Unbounded => SfLpStatus::Unbounded,
        };
        Ok(())
    })
}

/// Optimal value as `"p/q"`. Fails with `InvalidInput` when the solve did
/// not end optimal. Release the result with [`sf_string_free`].
///
/// # Safety
/// `solution` must come from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_solution_value(solution: *const SfSolution, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        check_out(out, "out")?;
        let s = input_ref(solution, "solution")?;
        let value = s.result.value().ok_or_else(|| Error::Domain(format!("LP is {}", s.result.status_label())))?;
        *out = into_c_string(format_rational(value));
        Ok(())
    })
}

/// Optimal point as a JSON object mapping variable names to `"p/q"`.
/// Release the result with [`sf_string_free`].
///
/// # Safety
/// `solution` must come from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_solution_point_json(solution: *const SfSolution, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        check_out(out, "out")?;
        let s = input_ref(solution, "solution")?;
        let point = s.result.point().ok_or_else(|| Error::Domain(format!("LP is {}", s.result.status_label())))?;
        let map: serde_json::Map<String, serde_json::Value> =
            s.names.iter().zip(point).map(|(n, v)| (n.clone(), format_rational(v).into())).collect();
        *out = into_c_string(serde_json::Value::Object(map).to_string());
        Ok(())
    })
}

/// Least number of cells a grid needs per horizon for the dwell times
/// `up` and `down` (given as `"p/q"`) to be whole cell counts.
///
/// # Safety
/// The three inputs must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_dwell_grid_factor(
    up: *const c_char,
    down: *const c_char,
    horizon: *const c_char,
    out: *mut usize,
) -> SfStatus {
    guard(|| {
        check_out(out, "out")?;
        let up = parse_rational(input_str(up, "up")?).map_err(Error::from)?;
        let down = parse_rational(input_str(down, "down")?).map_err(Error::from)?;
        let horizon = parse_rational(input_str(horizon, "horizon")?).map_err(Error::from)?;
        *out = dwell_grid_factor(&up, &down, &horizon)?;
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null if the last
/// call succeeded. Valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn sf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `text` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// # Safety
/// `model` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sf_model_free(model: *mut SfModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// `solution` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sf_solution_free(solution: *mut SfSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}
