//! Synchronised deterministic finite-state transducers with a two-party interface.
//!
//! Each step reads a pair `(a, a')` of Alice and Bob inputs and emits a pair
//! `(b, b')` of Alice and Bob outputs. A run of length `k` belongs to the language
//! iff the state reached after `k` steps is accepting.

mod format;
mod leakage;
mod strategy;

pub use format::parse_transducer;
pub use leakage::{induced_channel, leakage_bruteforce, realizable_observation_set, BruteForceLeakage, InducedChannel};
pub use strategy::{count_strategies, enumerate_strategies, Side, Strategy};

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// One entry of the transition table: the successor and both outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub next: usize,
    pub alice_out: usize,
    pub bob_out: usize,
}

/// One synchronous step of a full trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub alice_in: usize,
    pub bob_in: usize,
    pub alice_out: usize,
    pub bob_out: usize,
}

/// Bob's view of a trace: `(input, output)` pairs over his own alphabets.
pub type Observation = Vec<(usize, usize)>;

/// A transition as written down, before totality has been checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub alice_in: usize,
    pub bob_in: usize,
    pub to: usize,
    /// `None` is an empty (epsilon) output, which synchronised transducers forbid.
    pub output: Option<(usize, usize)>,
}

/// An unchecked transducer description; [`validate`](Self::validate) turns it into an [`Sdfst`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransducerDescription {
    pub states: Vec<String>,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub alice_in: Vec<String>,
    pub bob_in: Vec<String>,
    pub alice_out: Vec<String>,
    pub bob_out: Vec<String>,
    pub transitions: Vec<Transition>,
}

impl TransducerDescription {
    /// Checks totality, index ranges and non-empty outputs. The first violation is reported.
    pub fn validate(&self) -> Result<Sdfst> {
        let invalid = |m: String| Err(Error::InvalidTransducer(m));
        let nq = self.states.len();
        if nq == 0 {
            return invalid("no states".into());
        }
        if self.initial >= nq {
            return invalid(format!("initial state index {} is not a state", self.initial));
        }
        for alphabet in [&self.alice_in, &self.bob_in, &self.alice_out, &self.bob_out] {
            if alphabet.is_empty() {
                return invalid("every alphabet needs at least one letter".into());
            }
        }
        let mut accepting = vec![false; nq];
        for &f in &self.accepting {
            if f >= nq {
                return invalid(format!("accepting state index {f} is not a state"));
            }
            accepting[f] = true;
        }
        let (na, nb) = (self.alice_in.len(), self.bob_in.len());
        let mut cells: Vec<Option<Cell>> = vec![None; nq * na * nb];
        for tr in &self.transitions {
            if tr.from >= nq || tr.to >= nq {
                return invalid(format!(
                    "transition {} -> {} refers to a dangling state",
                    tr.from, tr.to
                ));
            }
            if tr.alice_in >= na || tr.bob_in >= nb {
                return invalid(format!("transition from `{}` uses an unknown input", self.states[tr.from]));
            }
            let Some((ao, bo)) = tr.output else {
                return invalid(format!(
                    "empty output at {}",
                    self.cell_name(tr.from, tr.alice_in, tr.bob_in)
                ));
            };
            if ao >= self.alice_out.len() || bo >= self.bob_out.len() {
                return invalid(format!(
                    "unknown output letter at {}",
                    self.cell_name(tr.from, tr.alice_in, tr.bob_in)
                ));
            }
            let slot = &mut cells[(tr.from * na + tr.alice_in) * nb + tr.bob_in];
            if slot.is_some() {
                return invalid(format!(
                    "duplicate transition for {}",
                    self.cell_name(tr.from, tr.alice_in, tr.bob_in)
                ));
            }
            *slot = Some(Cell {
                next: tr.to,
                alice_out: ao,
                bob_out: bo,
            });
        }
        let cells = cells
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    let (q, a, b) = (i / (na * nb), (i / nb) % na, i % nb);
                    Error::InvalidTransducer(format!("missing transition for {}", self.cell_name(q, a, b)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Sdfst {
            states: self.states.clone(),
            initial: self.initial,
            accepting,
            alice_in: self.alice_in.clone(),
            bob_in: self.bob_in.clone(),
            alice_out: self.alice_out.clone(),
            bob_out: self.bob_out.clone(),
            cells,
        })
    }

    fn cell_name(&self, q: usize, a: usize, b: usize) -> String {
        format!(
            "delta({}, ({}, {}))",
            self.states.get(q).map_or("?", |s| s.as_str()),
            self.alice_in.get(a).map_or("?", |s| s.as_str()),
            self.bob_in.get(b).map_or("?", |s| s.as_str())
        )
    }
}

/// A validated synchronised deterministic transducer. Transition and output
/// functions are total by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sdfst {
    states: Vec<String>,
    initial: usize,
    accepting: Vec<bool>,
    alice_in: Vec<String>,
    bob_in: Vec<String>,
    alice_out: Vec<String>,
    bob_out: Vec<String>,
    cells: Vec<Cell>,
}

impl Sdfst {
    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn all_accepting(&self) -> bool {
        self.accepting.iter().all(|&f| f)
    }

    pub fn alice_in(&self) -> &[String] {
        &self.alice_in
    }

    pub fn bob_in(&self) -> &[String] {
        &self.bob_in
    }

    pub fn alice_out(&self) -> &[String] {
        &self.alice_out
    }

    pub fn bob_out(&self) -> &[String] {
        &self.bob_out
    }

    pub fn cell(&self, q: usize, alice_in: usize, bob_in: usize) -> Cell {
        self.cells[(q * self.alice_in.len() + alice_in) * self.bob_in.len() + bob_in]
    }

    /// Re-checks the structural invariants.
    pub fn validate(&self) -> Result<()> {
        self.to_description().validate().map(|_| ())
    }

    pub fn to_description(&self) -> TransducerDescription {
        let mut transitions = Vec::with_capacity(self.cells.len());
        for q in 0..self.states.len() {
            for a in 0..self.alice_in.len() {
                for b in 0..self.bob_in.len() {
                    let c = self.cell(q, a, b);
                    transitions.push(Transition {
                        from: q,
                        alice_in: a,
                        bob_in: b,
                        to: c.next,
                        output: Some((c.alice_out, c.bob_out)),
                    });
                }
            }
        }
        TransducerDescription {
            states: self.states.clone(),
            initial: self.initial,
            accepting: (0..self.states.len()).filter(|&q| self.accepting[q]).collect(),
            alice_in: self.alice_in.clone(),
            bob_in: self.bob_in.clone(),
            alice_out: self.alice_out.clone(),
            bob_out: self.bob_out.clone(),
            transitions,
        }
    }

    /// The state reached after the inputs of `trace`, provided every recorded
    /// output matches the output function.
    pub fn follow(&self, trace: &[Step]) -> Option<usize> {
        let mut q = self.initial;
        for s in trace {
            if s.alice_in >= self.alice_in.len() || s.bob_in >= self.bob_in.len() {
                return None;
            }
            let c = self.cell(q, s.alice_in, s.bob_in);
            if c.alice_out != s.alice_out || c.bob_out != s.bob_out {
                return None;
            }
            q = c.next;
        }
        Some(q)
    }

    /// Membership of a full trace in the transducer's language.
    pub fn accepts(&self, trace: &[Step]) -> bool {
        self.follow(trace).is_some_and(|q| self.accepting[q])
    }

    pub fn is_observation(&self, obs: &[(usize, usize)]) -> bool {
        obs.iter().all(|&(i, o)| i < self.bob_in.len() && o < self.bob_out.len())
    }

    /// States reachable after Bob sees `obs`, ranging over every Alice input sequence.
    pub fn bob_states_after(&self, obs: &[(usize, usize)]) -> BTreeSet<usize> {
        let mut current = BTreeSet::from([self.initial]);
        for &(bi, bo) in obs {
            let mut next = BTreeSet::new();
            for &q in &current {
                for a in 0..self.alice_in.len() {
                    let c = self.cell(q, a, bi);
                    if c.bob_out == bo {
                        next.insert(c.next);
                    }
                }
            }
            if next.is_empty() {
                return next;
            }
            current = next;
        }
        current
    }

    /// Whether `obs` is the Bob projection of some trace in the language.
    pub fn in_bob_projection(&self, obs: &[(usize, usize)]) -> bool {
        self.is_observation(obs) && self.bob_states_after(obs).iter().any(|&q| self.accepting[q])
    }

    /// The projection of the length-`k` language onto Bob's alphabets, enumerated directly.
    pub fn bob_language(&self, k: usize) -> BTreeSet<Observation> {
        let mut out = BTreeSet::new();
        let mut prefix = Vec::with_capacity(k);
        self.extend_bob_words(BTreeSet::from([self.initial]), k, &mut prefix, &mut out);
        out
    }

    fn extend_bob_words(
        &self,
        states: BTreeSet<usize>,
        remaining: usize,
        prefix: &mut Observation,
        out: &mut BTreeSet<Observation>,
    ) {
        if remaining == 0 {
            if states.iter().any(|&q| self.accepting[q]) {
                out.insert(prefix.clone());
            }
            return;
        }
        for bi in 0..self.bob_in.len() {
            for bo in 0..self.bob_out.len() {
                let next: BTreeSet<usize> = states
                    .iter()
                    .flat_map(|&q| (0..self.alice_in.len()).map(move |a| (q, a)))
                    .map(|(q, a)| self.cell(q, a, bi))
                    .filter(|c| c.bob_out == bo)
                    .map(|c| c.next)
                    .collect();
                if !next.is_empty() {
                    prefix.push((bi, bo));
                    self.extend_bob_words(next, remaining - 1, prefix, out);
                    prefix.pop();
                }
            }
        }
    }

    /// The same system with Bob's input letters declared in a different order.
    /// `order[i]` is the old index of the letter that becomes index `i`.
    pub fn with_bob_input_order(&self, order: &[usize]) -> Result<Sdfst> {
        let nb = self.bob_in.len();
        let mut seen = vec![false; nb];
        if order.len() != nb || order.iter().any(|&i| i >= nb || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidTransducer("not a permutation of Bob's inputs".into()));
        }
        let mut new_index = vec![0; nb];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut d = self.to_description();
        d.bob_in = order.iter().map(|&i| self.bob_in[i].clone()).collect();
        for tr in &mut d.transitions {
            tr.bob_in = new_index[tr.bob_in];
        }
        d.validate()
    }

    pub fn describe_observation(&self, obs: &[(usize, usize)]) -> String {
        let mut s = String::new();
        for (i, &(bi, bo)) in obs.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "({},{})", self.bob_in[bi], self.bob_out[bo]);
        }
        s
    }

    pub fn describe_trace(&self, trace: &[Step]) -> String {
        let mut s = String::new();
        for (i, st) in trace.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(
                s,
                "(({},{}),({},{}))",
                self.alice_in[st.alice_in], self.bob_in[st.bob_in], self.alice_out[st.alice_out], self.bob_out[st.bob_out]
            );
        }
        s
    }
}

pub fn alice_view(trace: &[Step]) -> Vec<(usize, usize)> {
    trace.iter().map(|s| (s.alice_in, s.alice_out)).collect()
}

pub fn bob_view(trace: &[Step]) -> Observation {
    trace.iter().map(|s| (s.bob_in, s.bob_out)).collect()
}

/// Plays both strategies against the transducer for `k` steps.
pub fn run(t: &Sdfst, alice: &Strategy, bob: &Strategy, k: usize) -> Result<Vec<Step>> {
    for s in [alice, bob] {
        if s.horizon() < k {
            return Err(Error::HorizonTooSmall {
                horizon: s.horizon(),
                needed: k,
            });
        }
    }
    if alice.side() != Side::Alice || bob.side() != Side::Bob {
        return Err(Error::InvalidTransducer("strategies are assigned to the wrong sides".into()));
    }
    let mut q = t.initial;
    let mut alice_hist = Vec::with_capacity(k);
    let mut bob_hist = Vec::with_capacity(k);
    let mut trace = Vec::with_capacity(k);
    for _ in 0..k {
        let a = alice.choose(&alice_hist)?;
        let b = bob.choose(&bob_hist)?;
        if a >= t.alice_in.len() || b >= t.bob_in.len() {
            return Err(Error::UnknownLetter(a.max(b)));
        }
        let c = t.cell(q, a, b);
        alice_hist.push((a, c.alice_out));
        bob_hist.push((b, c.bob_out));
        trace.push(Step {
            alice_in: a,
            bob_in: b,
            alice_out: c.alice_out,
            bob_out: c.bob_out,
        });
        q = c.next;
    }
    Ok(trace)
}

/// Whether `trace` is in the language and every input agrees with the strategies
/// on the corresponding projected history.
pub fn consistent(trace: &[Step], t: &Sdfst, alice: &Strategy, bob: &Strategy) -> bool {
    if !t.accepts(trace) {
        return false;
    }
    (0..trace.len()).all(|i| {
        let (past, step) = (&trace[..i], trace[i]);
        alice.choose(&alice_view(past)).ok() == Some(step.alice_in)
            && bob.choose(&bob_view(past)).ok() == Some(step.bob_in)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn corpus_transducers_validate() {
        for (name, t) in [("relay", corpus::relay()), ("interrupt", corpus::interrupt())] {
            t.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn missing_cell_is_named() {
        let mut d = corpus::relay().to_description();
        d.transitions.retain(|tr| !(tr.from == 0 && tr.alice_in == 0 && tr.bob_in == 0));
        let err = d.validate().unwrap_err();
        assert_eq!(
            err,
            Error::InvalidTransducer("missing transition for delta(q0, (a, a))".into())
        );
    }

    #[test]
    fn empty_output_and_dangling_state_are_rejected() {
        let mut d = corpus::relay().to_description();
        d.transitions[1].output = None;
        assert!(matches!(d.validate(), Err(Error::InvalidTransducer(m)) if m.starts_with("empty output")));
        let mut d = corpus::relay().to_description();
        d.transitions[0].to = 7;
        assert!(matches!(d.validate(), Err(Error::InvalidTransducer(m)) if m.contains("dangling")));
    }

    #[test]
    fn relay_run_with_constant_strategies() {
        let t = corpus::relay();
        let a = Strategy::constant(Side::Alice, 0, 2);
        let b = Strategy::constant(Side::Bob, 0, 2);
        let trace = run(&t, &a, &b, 2).unwrap();
        assert_eq!(t.describe_trace(&trace), "((a,a),(a',a')) ((a,a),(a',a'))");
        assert!(consistent(&trace, &t, &a, &b));
    }

    #[test]
    fn interrupt_first_step_reports_success_to_bob() {
        let t = corpus::interrupt();
        let a = Strategy::constant(Side::Alice, 1, 1); // b
        let b = Strategy::constant(Side::Bob, 0, 1); // a'
        let trace = run(&t, &a, &b, 1).unwrap();
        assert_eq!(t.describe_observation(&bob_view(&trace)), "(a',a)");
    }

    #[test]
    fn horizon_is_enforced() {
        let t = corpus::relay();
        let a = Strategy::constant(Side::Alice, 0, 1);
        let b = Strategy::constant(Side::Bob, 0, 3);
        assert_eq!(
            run(&t, &a, &b, 2),
            Err(Error::HorizonTooSmall { horizon: 1, needed: 2 })
        );
    }

    #[test]
    fn deviating_trace_is_inconsistent() {
        let t = corpus::relay();
        let a = Strategy::constant(Side::Alice, 0, 2);
        let b = Strategy::constant(Side::Bob, 0, 2);
        let mut trace = run(&t, &a, &b, 2).unwrap();
        trace[0].alice_in = 1;
        trace[0].bob_out = 1; // keep it in the language
        assert!(t.accepts(&trace));
        assert!(!consistent(&trace, &t, &a, &b));
    }

    #[test]
    fn bob_projection_matches_language() {
        let t = corpus::interrupt();
        let lang = t.bob_language(3);
        for obs in &lang {
            assert!(t.in_bob_projection(obs));
        }
        // Bob sees success at step one only if Alice has not started.
        assert!(!t.in_bob_projection(&[(1, 0)]));
    }

    #[test]
    fn reordering_bob_inputs_round_trips() {
        let t = corpus::interrupt();
        let swapped = t.with_bob_input_order(&[1, 0]).unwrap();
        assert_eq!(swapped.bob_in(), ["b'", "a'"]);
        assert_eq!(swapped.with_bob_input_order(&[1, 0]).unwrap(), t);
        assert!(t.with_bob_input_order(&[0, 0]).is_err());
    }
}
