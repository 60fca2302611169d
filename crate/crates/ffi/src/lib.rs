//! C ABI over the `ncat` library.
//!
//! Objects cross the boundary as opaque handles that the caller frees with the
//! matching `*_free` function. Every fallible call returns an [`NcatStatus`];
//! on failure, [`ncat_last_error`] describes the most recent error on the
//! calling thread. Strings returned by the library are freed with
//! [`ncat_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ncat::functors::{check_functor_laws, FunctorTarget, IndEnv};
use ncat::morse::cell::{x_cells, x_composable_pairs};
use ncat::morse::{validate_flow_data, FlowData};
use ncat::torus::torus_flow_data;
use ncat::{CellError, WCell};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidCell = 4,
    NotComposable = 5,
    NoSuchCell = 6,
    InvalidArgument = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcatFunctor {
    G = 0,
    F = 1,
}

/// Resolved flow data.
pub struct NcatFlowData(FlowData);

/// A cell of `W`.
pub struct NcatWCell(WCell);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: NcatStatus, message: impl Into<String>) -> NcatStatus {
    let msg = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
    status
}

fn cell_status(e: &CellError) -> NcatStatus {
    let status = match e {
        CellError::NotComposable { .. } => NcatStatus::NotComposable,
        CellError::NoSource | CellError::NoIdentity { .. } => NcatStatus::NoSuchCell,
        CellError::ConstraintViolation { .. } => NcatStatus::InvalidCell,
        CellError::InvalidArguments(_) | CellError::LevelMismatch { .. } => {
            NcatStatus::InvalidArgument
        }
    };
    fail(status, e.to_string())
}

unsafe fn write_out<T>(out: *mut T, value: T) -> NcatStatus {
    if out.is_null() {
        return fail(NcatStatus::NullPointer, "output pointer is null");
    }
    *out = value;
    NcatStatus::Ok
}

/// Message for the last failed call on this thread, empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ncat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn ncat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a NUL-terminated JSON flow-data document.
#[no_mangle]
pub unsafe extern "C" fn ncat_flow_data_parse(
    json: *const c_char,
    out: *mut *mut NcatFlowData,
) -> NcatStatus {
    if json.is_null() || out.is_null() {
        return fail(NcatStatus::NullPointer, "null argument");
    }
    *out = ptr::null_mut();
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(e) => return fail(NcatStatus::InvalidUtf8, e.to_string()),
    };
    match FlowData::parse(text) {
        Ok(fd) => {
            *out = Box::into_raw(Box::new(NcatFlowData(fd)));
            NcatStatus::Ok
        }
        Err(e) => fail(NcatStatus::ParseError, e.to_string()),
    }
}

/// The built-in torus flow data.
#[no_mangle]
pub extern "C" fn ncat_flow_data_torus() -> *mut NcatFlowData {
    Box::into_raw(Box::new(NcatFlowData(torus_flow_data())))
}

#[no_mangle]
pub unsafe extern "C" fn ncat_flow_data_free(fd: *mut NcatFlowData) {
    if !fd.is_null() {
        drop(Box::from_raw(fd));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ncat_flow_data_max_level(
    fd: *const NcatFlowData,
    out: *mut usize,
) -> NcatStatus {
    let Some(fd) = fd.as_ref() else {
        return fail(NcatStatus::NullPointer, "flow data is null");
    };
    write_out(out, fd.0.max_level())
}

/// Runs the consistency checks; `*passed` is set to whether all passed.
#[no_mangle]
pub unsafe extern "C" fn ncat_flow_data_validate(
    fd: *const NcatFlowData,
    passed: *mut bool,
) -> NcatStatus {
    let Some(fd) = fd.as_ref() else {
        return fail(NcatStatus::NullPointer, "flow data is null");
    };
    write_out(passed, validate_flow_data(&fd.0).passed())
}

/// The validation report as text.
#[no_mangle]
pub unsafe extern "C" fn ncat_flow_data_validation_report(fd: *const NcatFlowData) -> *mut c_char {
    let Some(fd) = fd.as_ref() else {
        fail(NcatStatus::NullPointer, "flow data is null");
        return ptr::null_mut();
    };
    to_c_string(validate_flow_data(&fd.0).to_string())
}

/// Number of generated cells of X at `level`.
#[no_mangle]
pub unsafe extern "C" fn ncat_x_cell_count(
    fd: *const NcatFlowData,
    level: usize,
    out: *mut usize,
) -> NcatStatus {
    let Some(fd) = fd.as_ref() else {
        return fail(NcatStatus::NullPointer, "flow data is null");
    };
    write_out(out, x_cells(&fd.0, level).len())
}

/// Number of pairs in `X(level) ×_p X(level)`.
#[no_mangle]
pub unsafe extern "C" fn ncat_x_composable_pair_count(
    fd: *const NcatFlowData,
    level: usize,
    p: usize,
    out: *mut usize,
) -> NcatStatus {
    let Some(fd) = fd.as_ref() else {
        return fail(NcatStatus::NullPointer, "flow data is null");
    };
    if p >= level {
        return fail(
            NcatStatus::InvalidArgument,
            format!("p = {p} must be below level {level}"),
        );
    }
    write_out(out, x_composable_pairs(&fd.0, level, p).len())
}

/// Checks the laws of `G` or `F` up to `level`.
#[no_mangle]
pub unsafe extern "C" fn ncat_functor_laws(
    fd: *const NcatFlowData,
    functor: NcatFunctor,
    level: usize,
    passed: *mut bool,
) -> NcatStatus {
    let Some(fd) = fd.as_ref() else {
        return fail(NcatStatus::NullPointer, "flow data is null");
    };
    let target = match functor {
        NcatFunctor::G => FunctorTarget::G,
        NcatFunctor::F => FunctorTarget::F,
    };
    let env = IndEnv::from_flow_data(&fd.0);
    write_out(
        passed,
        check_functor_laws(&fd.0, &env, level, target).passed(),
    )
}

/// Builds a level-`level` cell of `W` from its head and the `level` source
/// and target indices, listed from the top level down.
#[no_mangle]
pub unsafe extern "C" fn ncat_w_cell_new(
    head: u32,
    sources: *const u32,
    targets: *const u32,
    level: usize,
    out: *mut *mut NcatWCell,
) -> NcatStatus {
    if out.is_null() || (level > 0 && (sources.is_null() || targets.is_null())) {
        return fail(NcatStatus::NullPointer, "null argument");
    }
    *out = ptr::null_mut();
    let spine = if level == 0 {
        Vec::new()
    } else {
        let s = std::slice::from_raw_parts(sources, level);
        let t = std::slice::from_raw_parts(targets, level);
        s.iter().copied().zip(t.iter().copied()).collect()
    };
    match WCell::new(head, spine) {
        Ok(c) => {
            *out = Box::into_raw(Box::new(NcatWCell(c)));
            NcatStatus::Ok
        }
        Err(e) => cell_status(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn ncat_w_cell_free(cell: *mut NcatWCell) {
    if !cell.is_null() {
        drop(Box::from_raw(cell));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ncat_w_cell_level(cell: *const NcatWCell) -> usize {
    cell.as_ref().map_or(0, |c| c.0.level())
}

#[no_mangle]
pub unsafe extern "C" fn ncat_w_cell_head(cell: *const NcatWCell) -> u32 {
    cell.as_ref().map_or(0, |c| c.0.head())
}

unsafe fn unary(
    cell: *const NcatWCell,
    out: *mut *mut NcatWCell,
    op: impl FnOnce(&WCell) -> Result<WCell, CellError>,
) -> NcatStatus {
    let Some(cell) = cell.as_ref() else {
        return fail(NcatStatus::NullPointer, "cell is null");
    };
    if out.is_null() {
        return fail(NcatStatus::NullPointer, "output pointer is null");
    }
    *out = ptr::null_mut();
    match op(&cell.0) {
        Ok(c) => {
            *out = Box::into_raw(Box::new(NcatWCell(c)));
            NcatStatus::Ok
        }
        Err(e) => cell_status(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn ncat_w_cell_source(
    cell: *const NcatWCell,
    out: *mut *mut NcatWCell,
) -> NcatStatus {
    unary(cell, out, WCell::source)
}

#[no_mangle]
pub unsafe extern "C" fn ncat_w_cell_target(
    cell: *const NcatWCell,
    out: *mut *mut NcatWCell,
) -> NcatStatus {
    unary(cell, out, WCell::target)
}

#[no_mangle]
pub unsafe extern "C" fn ncat_w_cell_identity(
    cell: *const NcatWCell,
    out: *mut *mut NcatWCell,
) -> NcatStatus {
    unary(cell, out, |c| Ok(c.identity()))
}

/// `c ∘_p a`.
#[no_mangle]
pub unsafe extern "C" fn ncat_w_cell_compose(
    p: usize,
    c: *const NcatWCell,
    a: *const NcatWCell,
    out: *mut *mut NcatWCell,
) -> NcatStatus {
    let Some(a) = a.as_ref() else {
        return fail(NcatStatus::NullPointer, "cell is null");
    };
    unary(c, out, |c| c.compose_after(p, &a.0))
}

#[no_mangle]
pub unsafe extern "C" fn ncat_w_cell_equal(x: *const NcatWCell, y: *const NcatWCell) -> bool {
    match (x.as_ref(), y.as_ref()) {
        (Some(x), Some(y)) => x.0 == y.0,
        _ => false,
    }
}

/// Text form such as `(0, [1 2 ; 0 0])`; free with [`ncat_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ncat_w_cell_render(cell: *const NcatWCell) -> *mut c_char {
    match cell.as_ref() {
        Some(c) => to_c_string(c.0.to_string()),
        None => {
            fail(NcatStatus::NullPointer, "cell is null");
            ptr::null_mut()
        }
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}
