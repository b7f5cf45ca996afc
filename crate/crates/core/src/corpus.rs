//! Example systems bundled with the crate.

use crate::transducer::{parse_transducer, Sdfst};

pub const RELAY: &str = include_str!("../corpus/relay.t");
pub const INTERRUPT: &str = include_str!("../corpus/interrupt.t");
pub const CONSTANT: &str = include_str!("../corpus/constant.t");
pub const ONESHOT: &str = include_str!("../corpus/oneshot.t");
pub const SWITCH: &str = include_str!("../corpus/switch.t");
pub const PARITY: &str = include_str!("../corpus/parity.t");
pub const EMPTY_NFA: &str = include_str!("../corpus/empty.nfa");

/// Every bundled transducer by file stem.
pub const TRANSDUCERS: &[(&str, &str)] = &[
    ("relay", RELAY),
    ("interrupt", INTERRUPT),
    ("constant", CONSTANT),
    ("oneshot", ONESHOT),
    ("switch", SWITCH),
    ("parity", PARITY),
];

fn load(src: &str) -> Sdfst {
    parse_transducer(src).expect("bundled transducer parses")
}

pub fn relay() -> Sdfst {
    load(RELAY)
}

pub fn interrupt() -> Sdfst {
    load(INTERRUPT)
}

pub fn transducers() -> Vec<(&'static str, Sdfst)> {
    TRANSDUCERS.iter().map(|&(name, src)| (name, load(src))).collect()
}
