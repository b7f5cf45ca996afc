use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qflow_ffi::*;

const RELAY: &str = include_str!("../../core/corpus/relay.t");
const INTERRUPT: &str = include_str!("../../core/corpus/interrupt.t");

fn last_error() -> String {
    let p = qflow_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    qflow_string_free(s);
    out
}

unsafe fn transducer(src: &str) -> *mut QflowTransducer {
    let c = CString::new(src).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(qflow_transducer_parse(c.as_ptr(), &mut t), QflowStatus::Ok);
    t
}

#[test]
fn classify_relay_and_interrupt() {
    unsafe {
        for (src, expected) in [
            (RELAY, QflowVerdict { linear: true, order: 0 }),
            (INTERRUPT, QflowVerdict { linear: false, order: 2 }),
        ] {
            let t = transducer(src);
            let mut r = ptr::null_mut();
            assert_eq!(qflow_transducer_classify(t, 12, 100_000, 30.0, &mut r), QflowStatus::Ok);
            let mut v = QflowVerdict { linear: false, order: 99 };
            assert_eq!(qflow_report_verdict(r, &mut v), QflowStatus::Ok);
            assert_eq!(v, expected);
            let mut records = ptr::null_mut();
            assert_eq!(qflow_report_to_records(r, &mut records), QflowStatus::Ok);
            assert!(take(records).starts_with("format: 1\nkind: capacity\n"));
            qflow_report_free(r);
            qflow_transducer_free(t);
        }
    }
}

#[test]
fn observer_width_and_bruteforce_agree() {
    unsafe {
        let t = transducer(INTERRUPT);
        let mut a = ptr::null_mut();
        assert_eq!(qflow_transducer_observer_nfa(t, &mut a), QflowStatus::Ok);
        for k in 1..=3 {
            let mut w = ptr::null_mut();
            assert_eq!(qflow_nfa_width(a, 2 * k, 10_000, &mut w), QflowStatus::Ok);
            let mut count = 0usize;
            assert_eq!(qflow_transducer_leakage_bruteforce(t, k, 1 << 16, &mut count), QflowStatus::Ok);
            assert_eq!(take(w), count.to_string());
        }

        let mut text = ptr::null_mut();
        assert_eq!(qflow_nfa_to_text(a, &mut text), QflowStatus::Ok);
        let text = take(text);
        let c = CString::new(text.clone()).unwrap();
        let mut b = ptr::null_mut();
        assert_eq!(qflow_nfa_parse(c.as_ptr(), &mut b), QflowStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(qflow_nfa_to_text(b, &mut again), QflowStatus::Ok);
        assert_eq!(take(again), text);

        qflow_nfa_free(b);
        qflow_nfa_free(a);
        qflow_transducer_free(t);
    }
}

#[test]
fn errors_are_reported_with_status_and_message() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(qflow_transducer_parse(ptr::null(), &mut t), QflowStatus::NullPointer);
        assert!(last_error().contains("src"));

        let bad = CString::new("transducer\nstates: q0\n").unwrap();
        assert_eq!(qflow_transducer_parse(bad.as_ptr(), &mut t), QflowStatus::Parse);
        assert!(t.is_null());
        assert!(!last_error().is_empty());

        let invalid = [0xffu8, 0];
        assert_eq!(qflow_nfa_parse(invalid.as_ptr().cast(), &mut ptr::null_mut()), QflowStatus::InvalidUtf8);

        let relay = transducer(RELAY);
        let mut a = ptr::null_mut();
        assert_eq!(qflow_transducer_observer_nfa(relay, &mut a), QflowStatus::Ok);
        let mut w = ptr::null_mut();
        assert_eq!(qflow_nfa_width(a, 10, 1, &mut w), QflowStatus::Budget);
        assert!(w.is_null());
        assert_eq!(qflow_nfa_width(a, 10, 1000, ptr::null_mut()), QflowStatus::NullPointer);
        assert!(qflow_last_error().is_null() || !last_error().is_empty());

        let mut r = ptr::null_mut();
        assert_eq!(qflow_transducer_classify(relay, 10, 1000, -1.0, &mut r), QflowStatus::Invalid);

        let mut w = ptr::null_mut();
        assert_eq!(qflow_nfa_width(a, 4, 1000, &mut w), QflowStatus::Ok);
        assert!(qflow_last_error().is_null());
        qflow_string_free(w);

        qflow_nfa_free(a);
        qflow_transducer_free(relay);
        qflow_transducer_free(ptr::null_mut());
        qflow_string_free(ptr::null_mut());
    }
}

#[test]
fn channel_capacity_in_bits() {
    let identity = CString::new("channel\ninputs: a b\noutputs: x y\nrow a: 1 0\nrow b: 0 1\n").unwrap();
    let mut bits = 0.0;
    assert_eq!(unsafe { qflow_channel_capacity(identity.as_ptr(), &mut bits) }, QflowStatus::Ok);
    assert!((bits - 1.0).abs() < 1e-12);
    let bad = CString::new("channel\ninputs: a\noutputs: x y\nrow a: 1/2 1/3\n").unwrap();
    assert_ne!(unsafe { qflow_channel_capacity(bad.as_ptr(), &mut bits) }, QflowStatus::Ok);
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(qflow_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
