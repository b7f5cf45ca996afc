//! C interface to `qflow`.
//!
//! Objects are opaque handles created by `*_parse` or `*_classify` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`QflowStatus`]; on failure [`qflow_last_error`] describes the problem.
//! Strings returned through out-parameters are owned by the caller and must be
//! released with [`qflow_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use qflow::channel::{interactive_capacity_pure_bob, min_entropy_capacity, parse_channel_file, ChannelFile};
use qflow::classifier::{classify_capacity, trim, CapacityReport, ClassifyConfig, Verdict};
use qflow::nfa::{parse_nfa, OrderedNfa};
use qflow::reduction::build_observer_nfa;
use qflow::transducer::{leakage_bruteforce, parse_transducer, Sdfst};
use qflow::width::exact_width_with_budget;
use qflow::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QflowStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    Budget = 5,
    Inconsistent = 6,
    Internal = 7,
}

/// A parsed transducer.
pub struct QflowTransducer(Sdfst);

/// An automaton over ordered letters.
pub struct QflowNfa(OrderedNfa);

/// The result of classifying a transducer.
pub struct QflowReport(CapacityReport);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QflowVerdict {
    /// Set when leakage grows linearly.
    pub linear: bool,
    /// The `k` of `k log n` growth; zero when `linear` is set.
    pub order: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QflowStatus {
    match e {
        Error::Parse { .. } => QflowStatus::Parse,
        Error::BudgetExceeded { .. } => QflowStatus::Budget,
        Error::ClassificationInconsistent { .. } | Error::WitnessRejected(_) => QflowStatus::Inconsistent,
        Error::Io(_) => QflowStatus::Internal,
        _ => QflowStatus::Invalid,
    }
}

struct Failure(QflowStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(QflowStatus::NullPointer, format!("`{what}` is null"))
}

/// Runs `body`, recording any failure or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> QflowStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => QflowStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QflowStatus::Internal
        }
    }
}

unsafe fn text<'a>(src: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if src.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(src)
        .to_str()
        .map_err(|e| Failure(QflowStatus::InvalidUtf8, format!("`{what}` is not UTF-8: {e}")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(QflowStatus::Internal, "string contains NUL".into()))?;
    write(out, c.into_raw(), "out")
}

/// The message of the last failed call on this thread, or null. The pointer stays
/// valid until the next `qflow_*` call on the same thread.
#[no_mangle]
pub extern "C" fn qflow_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qflow_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflow_transducer_parse(src: *const c_char, out: *mut *mut QflowTransducer) -> QflowStatus {
    guard(|| {
        let t = parse_transducer(text(src, "src")?)?;
        write(out, Box::into_raw(Box::new(QflowTransducer(t))), "out")
    })
}

/// # Safety
/// `t` must be null or a handle from [`qflow_transducer_parse`] that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qflow_transducer_free(t: *mut QflowTransducer) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// The trimmed observer automaton of `t`.
///
/// # Safety
/// `t` must be a live transducer handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflow_transducer_observer_nfa(t: *const QflowTransducer, out: *mut *mut QflowNfa) -> QflowStatus {
    guard(|| {
        let t = borrow(t, "t")?;
        let a = trim(&build_observer_nfa(&t.0)?);
        write(out, Box::into_raw(Box::new(QflowNfa(a))), "out")
    })
}

/// Largest number of distinct length-`k` observations one Bob strategy admits.
///
/// # Safety
/// `t` must be a live transducer handle; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflow_transducer_leakage_bruteforce(
    t: *const QflowTransducer,
    k: usize,
    strategy_cap: usize,
    count: *mut usize,
) -> QflowStatus {
    guard(|| {
        let t = borrow(t, "t")?;
        let result = leakage_bruteforce(&t.0, k, strategy_cap)?;
        write(count, result.count, "count")
    })
}

/// Classifies `t`. `budget_seconds` bounds how far the fit check extends.
///
/// # Safety
/// `t` must be a live transducer handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflow_transducer_classify(
    t: *const QflowTransducer,
    table_max: usize,
    budget_states: usize,
    budget_seconds: f64,
    out: *mut *mut QflowReport,
) -> QflowStatus {
    guard(|| {
        let t = borrow(t, "t")?;
        if !(budget_seconds > 0.0 && budget_seconds.is_finite()) {
            return Err(Failure(QflowStatus::Invalid, "budget_seconds must be positive".into()));
        }
        let cfg = ClassifyConfig {
            table_max,
            budget_states,
            budget_time: Duration::from_secs_f64(budget_seconds),
            ..ClassifyConfig::default()
        };
        let report = classify_capacity(&t.0, &cfg)?;
        write(out, Box::into_raw(Box::new(QflowReport(report))), "out")
    })
}

/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflow_nfa_parse(src: *const c_char, out: *mut *mut QflowNfa) -> QflowStatus {
    guard(|| {
        let a = parse_nfa(text(src, "src")?)?;
        write(out, Box::into_raw(Box::new(QflowNfa(a))), "out")
    })
}

/// # Safety
/// `a` must be null or a live automaton handle.
#[no_mangle]
pub unsafe extern "C" fn qflow_nfa_free(a: *mut QflowNfa) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// The text form of `a`, which [`qflow_nfa_parse`] reads back unchanged.
///
/// # Safety
/// `a` must be a live automaton handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflow_nfa_to_text(a: *const QflowNfa, out: *mut *mut c_char) -> QflowStatus {
    guard(|| write_string(out, borrow(a, "a")?.0.to_text()))
}

/// The width of the length-`n` slice as a decimal string.
///
/// # Safety
/// `a` must be a live automaton handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflow_nfa_width(
    a: *const QflowNfa,
    n: usize,
    budget_states: usize,
    out: *mut *mut c_char,
) -> QflowStatus {
    guard(|| {
        let w = exact_width_with_budget(&borrow(a, "a")?.0, n, budget_states)?;
        write_string(out, w.to_string())
    })
}

/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn qflow_report_free(r: *mut QflowReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflow_report_verdict(r: *const QflowReport, out: *mut QflowVerdict) -> QflowStatus {
    guard(|| {
        let v = match borrow(r, "r")?.0.verdict {
            Verdict::Linear => QflowVerdict { linear: true, order: 0 },
            Verdict::Logarithmic(k) => QflowVerdict { linear: false, order: k },
        };
        write(out, v, "out")
    })
}

/// The report as `key: value` records.
///
/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflow_report_to_records(r: *const QflowReport, out: *mut *mut c_char) -> QflowStatus {
    guard(|| write_string(out, borrow(r, "r")?.0.to_records()))
}

/// Min-entropy capacity in bits of a channel, interactive channel or joint
/// distribution given in text form.
///
/// # Safety
/// `src` must be a NUL-terminated string; `bits` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qflow_channel_capacity(src: *const c_char, bits: *mut f64) -> QflowStatus {
    guard(|| {
        let value = match parse_channel_file(text(src, "src")?)? {
            ChannelFile::Channel { channel, .. } => min_entropy_capacity(&channel),
            ChannelFile::Interactive(ch) => interactive_capacity_pure_bob(&ch).bits(),
            ChannelFile::Joint(joint) => min_entropy_capacity(&joint.induced_pair().1),
        };
        write(bits, value, "bits")
    })
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn qflow_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
