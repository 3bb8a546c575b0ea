//! C ABI for the braidtrace library.
//!
//! The engine is an opaque handle created per Coxeter type. Every function
//! returns a status code (`BT_OK`, `BT_VALIDATION`, `BT_INTERNAL`,
//! `BT_ARGUMENT`); on failure a thread-local message is retrievable via
//! [`bt_last_error`]. Results are returned as heap-allocated JSON strings
//! (the same schema as `braidtrace --format json`) which the caller must
//! release with [`bt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use braidtrace::coxeter::{BraidWord, CoxeterSystem, CoxeterType};
use braidtrace::exactmath::ATRat;
use braidtrace::traces::TraceEngine;
use braidtrace::Error;
use serde_json::{Map, Value};

/// Success.
pub const BT_OK: i32 = 0;
/// Invalid input (unknown type, malformed braid, size guards).
pub const BT_VALIDATION: i32 = 2;
/// Broken internal invariant, or a panic caught at the boundary.
pub const BT_INTERNAL: i32 = 3;
/// Null pointer or malformed C string argument.
pub const BT_ARGUMENT: i32 = 4;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(err: &Error) -> i32 {
    match err {
        Error::Validation(_) => BT_VALIDATION,
        Error::Internal(_) => BT_INTERNAL,
    }
}

/// An opaque computation engine for one Coxeter type.
///
/// The trace engine borrows the Coxeter system; the system lives in a box
/// whose address is stable for the lifetime of the handle, so the borrow is
/// safely extended to `'static` inside the (private) struct.
pub struct BtEngine {
    // field order matters: the engine must drop before the system it borrows
    eng: TraceEngine<'static>,
    _sys: Box<CoxeterSystem>,
}

/// Last error message for the calling thread; valid until the next failing
/// call. Never null.
#[no_mangle]
pub extern "C" fn bt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, i32> {
    if p.is_null() {
        set_error("null string argument");
        return Err(BT_ARGUMENT);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        BT_ARGUMENT
    })
}

/// Create an engine for `type_name` (e.g. "A3", "I2(8)", "BC2", "G2").
/// `data_dir` may be null; it points extra data tables (Fourier matrices
/// for I2(m) beyond the built-ins). On success writes the handle to `out`.
///
/// # Safety
/// `type_name` must be a valid C string, `data_dir` null or a valid C
/// string, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_engine_new(
    type_name: *const c_char,
    data_dir: *const c_char,
    out: *mut *mut BtEngine,
) -> i32 {
    if out.is_null() {
        set_error("null output pointer");
        return BT_ARGUMENT;
    }
    let ty = match read_str(type_name) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let dir: Option<PathBuf> = if data_dir.is_null() {
        None
    } else {
        match read_str(data_dir) {
            Ok(s) => Some(PathBuf::from(s)),
            Err(c) => return c,
        }
    };
    let result = catch_unwind(AssertUnwindSafe(|| -> braidtrace::Result<*mut BtEngine> {
        let sys = Box::new(CoxeterSystem::new(CoxeterType::parse(ty)?)?);
        // extend the borrow to 'static: the box gives the system a stable
        // address owned by the same handle
        let sys_ref: &'static CoxeterSystem = &*(&*sys as *const CoxeterSystem);
        let eng = TraceEngine::new(sys_ref, dir.as_deref())?;
        Ok(Box::into_raw(Box::new(BtEngine { eng, _sys: sys })))
    }));
    match result {
        Ok(Ok(handle)) => {
            *out = handle;
            BT_OK
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            code_of(&e)
        }
        Err(_) => {
            set_error("panic while constructing engine");
            BT_INTERNAL
        }
    }
}

/// Release an engine handle. Null is ignored.
///
/// # Safety
/// `engine` must be null or a pointer returned by [`bt_engine_new`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn bt_engine_free(engine: *mut BtEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Release a string returned by any `bt_*` computation. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not been
/// freed.
#[no_mangle]
pub unsafe extern "C" fn bt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn run_braid_op(
    engine: *const BtEngine,
    braid: *const c_char,
    out: *mut *mut c_char,
    op: impl Fn(&TraceEngine, &BraidWord) -> braidtrace::Result<Value>,
) -> i32 {
    if engine.is_null() || out.is_null() {
        set_error("null engine or output pointer");
        return BT_ARGUMENT;
    }
    let word = match read_str(braid) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let eng = &(*engine).eng;
    let result = catch_unwind(AssertUnwindSafe(|| -> braidtrace::Result<Value> {
        let beta = BraidWord::parse(word, eng.sys.rank())?;
        op(eng, &beta)
    }));
    match result {
        Ok(Ok(v)) => {
            let text = serde_json::to_string(&v).unwrap();
            *out = CString::new(text).unwrap().into_raw();
            BT_OK
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            code_of(&e)
        }
        Err(_) => {
            set_error("panic during computation");
            BT_INTERNAL
        }
    }
}

fn char_map(eng: &TraceEngine, coeffs: impl Iterator<Item = String>) -> Value {
    let mut map = Map::new();
    for (lab, c) in eng.table.labels().iter().zip(coeffs) {
        if c != "0" {
            map.insert(lab.to_string(), Value::String(c));
        }
    }
    Value::Object(map)
}

fn at_value(f: &ATRat) -> Value {
    let poly_map = |p: &braidtrace::exactmath::ATLaurent| -> Value {
        let mut map = Map::new();
        for ((a, t), c) in p.terms() {
            let key = if t % 2 == 0 {
                format!("a{a} q{}", t / 2)
            } else {
                format!("a{a} q{t}/2")
            };
            let v = if c.denom() == &1.into() {
                i64::try_from(c.numer().clone())
                    .map(Value::from)
                    .unwrap_or_else(|_| Value::String(c.to_string()))
            } else {
                Value::String(c.to_string())
            };
            map.insert(key, v);
        }
        Value::Object(map)
    };
    match f.to_polynomial() {
        Some(p) => poly_map(&p),
        None => {
            let mut map = Map::new();
            map.insert("num".into(), poly_map(f.numerator()));
            map.insert("den".into(), poly_map(f.denominator()));
            Value::Object(map)
        }
    }
}

/// Virtual-character-valued Hecke trace of `braid`; writes a JSON object
/// mapping character labels to Laurent-polynomial strings in q^(1/2).
///
/// # Safety
/// `engine` must be a live handle, `braid` a valid C string, `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_trace(
    engine: *const BtEngine,
    braid: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    run_braid_op(engine, braid, out, |eng, beta| {
        let tr = eng.rw_trace(beta)?;
        Ok(char_map(eng, tr.iter().map(|c| c.to_string_q())))
    })
}

/// Normalized trace of `braid`; JSON object mapping character labels to
/// rational-function strings.
///
/// # Safety
/// Same contract as [`bt_trace`].
#[no_mangle]
pub unsafe extern "C" fn bt_trace0(
    engine: *const BtEngine,
    braid: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    run_braid_op(engine, braid, out, |eng, beta| {
        let tr = eng.rw_trace0(beta)?;
        Ok(char_map(eng, tr.iter().map(|c| c.to_string_q())))
    })
}

/// Markov trace of `braid`; JSON object of monomial keys "a{i} q{j}", or
/// {"num": ..., "den": ...} when not polynomial.
///
/// # Safety
/// Same contract as [`bt_trace`].
#[no_mangle]
pub unsafe extern "C" fn bt_markov(
    engine: *const BtEngine,
    braid: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    run_braid_op(engine, braid, out, |eng, beta| {
        Ok(at_value(&eng.markov_trace(beta)?))
    })
}

/// HOMFLY series of the closure of `braid` (type A engines only); same
/// schema as [`bt_markov`].
///
/// # Safety
/// Same contract as [`bt_trace`].
#[no_mangle]
pub unsafe extern "C" fn bt_homfly(
    engine: *const BtEngine,
    braid: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    run_braid_op(engine, braid, out, |eng, beta| {
        Ok(at_value(&eng.homfly(beta)?))
    })
}

/// Writhe of a braid word, without constructing an engine. Returns
/// `BT_VALIDATION` for malformed words (rank is taken from `type_name`).
///
/// # Safety
/// `type_name` and `braid` must be valid C strings, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_writhe(
    type_name: *const c_char,
    braid: *const c_char,
    out: *mut i64,
) -> i32 {
    if out.is_null() {
        set_error("null output pointer");
        return BT_ARGUMENT;
    }
    let (ty, word) = match (read_str(type_name), read_str(braid)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(c), _) | (_, Err(c)) => return c,
    };
    let parsed = CoxeterType::parse(ty).and_then(|t| BraidWord::parse(word, t.rank()));
    match parsed {
        Ok(beta) => {
            *out = beta.writhe();
            BT_OK
        }
        Err(e) => {
            set_error(&e.to_string());
            code_of(&e)
        }
    }
}
