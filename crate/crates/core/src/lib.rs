//! Quantitative information flow for deterministic interactive transducers.
//!
//! The pipeline goes from a transducer to Bob's observer automaton, from there to
//! the antichain width of each length slice, and finally to a growth verdict:
//! logarithmic flow of some order `k`, or linear flow.

pub mod channel;
pub mod classifier;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod nfa;
pub mod random;
pub mod reduction;
pub mod transducer;
pub mod width;

mod text;

pub use error::{Error, Result};
