//! Growth classification: exponential antichains or polynomial of some order,
//! and the resulting logarithmic or linear verdict for a transducer.

mod fit;
mod graph;
mod order;
mod report;
mod witness;

pub use fit::{envelope, fit_check, FitReport};
pub use graph::{components, trim, Components};
pub use order::{polynomial_order, Gadget};
pub use report::{CapacityReport, Timings, Verdict};
pub use witness::{find_exponential_witness, ExponentialWitness};

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::nfa::OrderedNfa;
use crate::reduction::build_observer_nfa;
use crate::transducer::Sdfst;
use crate::width::{WidthEngine, DEFAULT_STATE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthClass {
    Exponential(ExponentialWitness),
    Polynomial { order: usize, chain: Vec<Gadget> },
}

impl GrowthClass {
    pub fn order(&self) -> Option<usize> {
        match self {
            GrowthClass::Exponential(_) => None,
            GrowthClass::Polynomial { order, .. } => Some(*order),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyConfig {
    /// Largest length shown in the width table.
    pub table_max: usize,
    /// Largest length the fit gate may use; it always reaches at least [`MIN_FIT_LENGTH`].
    pub fit_max: usize,
    pub budget_states: usize,
    /// Time after which the fit gate stops adding lengths beyond the minimum.
    pub budget_time: Duration,
}

pub const MIN_FIT_LENGTH: usize = 24;

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            table_max: 20,
            fit_max: 256,
            budget_states: DEFAULT_STATE_BUDGET,
            budget_time: Duration::from_secs(30),
        }
    }
}

/// Growth class of a trim automaton, with exponential verdicts machine-checked.
pub fn classify_growth(a: &OrderedNfa, config: &ClassifyConfig) -> Result<(GrowthClass, Option<FitReport>)> {
    if let Some(w) = find_exponential_witness(a) {
        w.verify(a)?;
        let pump = (0..=4).take_while(|&m| w.pumped_length(m) <= 64).last().unwrap_or(0);
        if !w.pumping_holds(a, pump, config.budget_states)? {
            return Err(Error::WitnessRejected("pumped words do not reach the claimed width".into()));
        }
        return Ok((GrowthClass::Exponential(w), None));
    }
    let (order, chain) = polynomial_order(a)?;
    let widths = fit_widths(a, config)?;
    let fit = fit_check(&widths, order);
    if !fit.passed {
        return Err(Error::ClassificationInconsistent {
            gadget_order: order,
            fit: fit.summary(),
        });
    }
    Ok((GrowthClass::Polynomial { order, chain }, Some(fit)))
}

fn fit_widths(a: &OrderedNfa, config: &ClassifyConfig) -> Result<Vec<BigUint>> {
    let start = Instant::now();
    let mut engine = WidthEngine::new(a, config.budget_states);
    let limit = config.fit_max.max(MIN_FIT_LENGTH);
    let mut widths = Vec::new();
    for n in 0..=limit {
        if n > MIN_FIT_LENGTH && n % 8 == 1 && start.elapsed() > config.budget_time {
            break;
        }
        widths.push(engine.width(n)?);
    }
    Ok(widths)
}

/// Runs the whole pipeline on a transducer.
pub fn classify_capacity(t: &Sdfst, config: &ClassifyConfig) -> Result<CapacityReport> {
    let total = Instant::now();
    let clock = Instant::now();
    let observer = build_observer_nfa(t)?;
    let trimmed = trim(&observer);
    let reduce = clock.elapsed();

    let clock = Instant::now();
    let (growth, fit) = classify_growth(&trimmed, config)?;
    let classify = clock.elapsed();

    let clock = Instant::now();
    let mut engine = WidthEngine::new(&trimmed, config.budget_states);
    let widths = (1..=config.table_max / 2)
        .map(|k| Ok((2 * k, engine.width(2 * k)?)))
        .collect::<Result<Vec<_>>>()?;
    let table = clock.elapsed();

    let verdict = match &growth {
        GrowthClass::Exponential(_) => Verdict::Linear,
        GrowthClass::Polynomial { order, .. } => Verdict::Logarithmic(*order),
    };
    Ok(CapacityReport {
        verdict,
        growth,
        widths,
        fit,
        observer_states: observer.state_count(),
        trimmed,
        timings: Timings {
            reduce,
            classify,
            table,
            total: total.elapsed(),
        },
    })
}
