use std::fmt::Write as _;
use std::time::Duration;

use num_bigint::BigUint;

use super::{FitReport, GrowthClass};
use crate::exact::log2_biguint;
use crate::nfa::OrderedNfa;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Leakage after `n` steps grows like `k log n`; `k = 0` is bounded flow.
    Logarithmic(usize),
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Timings {
    pub reduce: Duration,
    pub classify: Duration,
    pub table: Duration,
    pub total: Duration,
}

#[derive(Debug, Clone)]
pub struct CapacityReport {
    pub verdict: Verdict,
    pub growth: GrowthClass,
    /// `(n, w(L_n))` for even `n`.
    pub widths: Vec<(usize, BigUint)>,
    pub fit: Option<FitReport>,
    pub observer_states: usize,
    /// The trimmed observer automaton that witnesses and gadgets refer to.
    pub trimmed: OrderedNfa,
    pub timings: Timings,
}

fn ms(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1000.0)
}

impl CapacityReport {
    pub fn to_text(&self) -> String {
        let a = &self.trimmed;
        let mut s = String::new();
        match self.verdict {
            Verdict::Linear => s.push_str("verdict: linear flow\n"),
            Verdict::Logarithmic(0) => s.push_str("verdict: logarithmic flow, k = 0 (bounded)\n"),
            Verdict::Logarithmic(k) => {
                let _ = writeln!(s, "verdict: logarithmic flow, k = {k} (leakage ~ {k} log n)");
            }
        }
        match &self.growth {
            GrowthClass::Exponential(w) => {
                let _ = writeln!(s, "antichain witness at {}", w.describe(a));
            }
            GrowthClass::Polynomial { chain, .. } => {
                for g in chain {
                    let _ = writeln!(s, "gadget at {}", g.describe(a));
                }
            }
        }
        if let Some(fit) = &self.fit {
            let verdict = if fit.passed { "passed" } else { "failed" };
            let _ = writeln!(s, "fit check {verdict}: {}", fit.summary());
        }
        let _ = writeln!(
            s,
            "observer automaton: {} states, {} after trimming",
            self.observer_states,
            a.state_count()
        );
        s.push_str("   n  width  bits\n");
        for (n, w) in &self.widths {
            let _ = writeln!(s, "{n:>4}  {w}  {:.4}", log2_biguint(w));
        }
        s
    }

    /// Line-delimited `key: value` records.
    pub fn to_records(&self) -> String {
        let a = &self.trimmed;
        let mut s = String::from("format: 1\nkind: capacity\n");
        match self.verdict {
            Verdict::Linear => s.push_str("verdict: linear\n"),
            Verdict::Logarithmic(k) => {
                let _ = writeln!(s, "verdict: logarithmic\norder: {k}");
            }
        }
        match &self.growth {
            GrowthClass::Exponential(w) => {
                let _ = writeln!(s, "witness_state: {}", a.states()[w.state]);
                let _ = writeln!(s, "witness_u: {}", a.describe_word(&w.u));
                let _ = writeln!(s, "witness_v: {}", a.describe_word(&w.v));
                let _ = writeln!(s, "witness_prefix: {}", a.describe_word(&w.prefix));
                let _ = writeln!(s, "witness_suffix: {}", a.describe_word(&w.suffix));
            }
            GrowthClass::Polynomial { chain, .. } => {
                for g in chain {
                    let _ = writeln!(
                        s,
                        "gadget: {} | {} | {} | {}",
                        a.states()[g.state],
                        a.describe_word(&g.stay),
                        a.describe_word(&g.leave),
                        a.states()[g.exit]
                    );
                }
            }
        }
        for (n, w) in &self.widths {
            let _ = writeln!(s, "width: {n} {w}");
        }
        if let Some(fit) = &self.fit {
            let _ = writeln!(s, "fit_n_max: {}", fit.n_max);
            for (n, w) in &fit.points {
                let _ = writeln!(s, "fit_point: {n} {w}");
            }
            let _ = writeln!(s, "fit: {}", if fit.passed { "pass" } else { "fail" });
        }
        let _ = writeln!(s, "observer_states: {}", self.observer_states);
        let _ = writeln!(s, "trimmed_states: {}", a.state_count());
        let t = &self.timings;
        let _ = writeln!(s, "elapsed_ms_reduce: {}", ms(t.reduce));
        let _ = writeln!(s, "elapsed_ms_classify: {}", ms(t.classify));
        let _ = writeln!(s, "elapsed_ms_table: {}", ms(t.table));
        let _ = writeln!(s, "elapsed_ms_total: {}", ms(t.total));
        s
    }
}
