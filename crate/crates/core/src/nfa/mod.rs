//! Nondeterministic automata over a partially ordered alphabet.

mod format;

pub use format::parse_nfa;

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::width::LetterPoset;

/// An NFA whose alphabet carries a strict partial order. The first
/// [`input_count`](Self::input_count) letters are the input letters, the rest
/// output letters; the split only matters for display and for the observer shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedNfa {
    states: Vec<String>,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    inputs: usize,
    poset: LetterPoset,
    delta: Vec<Vec<Vec<usize>>>,
}

impl OrderedNfa {
    /// An automaton over `inputs` (linearly ordered as listed) and `outputs`
    /// (incomparable to everything). Transitions are `(from, letter, to)`.
    pub fn new(
        states: Vec<String>,
        initial: Vec<usize>,
        accepting: Vec<usize>,
        inputs: Vec<String>,
        outputs: Vec<String>,
        transitions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n_inputs = inputs.len();
        let poset = LetterPoset::observer(inputs, outputs)?;
        Self::with_poset(states, initial, accepting, poset, n_inputs, transitions)
    }

    pub fn with_poset(
        states: Vec<String>,
        initial: Vec<usize>,
        accepting: Vec<usize>,
        poset: LetterPoset,
        inputs: usize,
        transitions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let nq = states.len();
        let mut seen = HashSet::new();
        if let Some(dup) = states.iter().find(|s| !seen.insert(s.as_str())) {
            return Err(Error::InvalidAutomaton(format!("state `{dup}` appears twice")));
        }
        if inputs > poset.len() {
            return Err(Error::InvalidAutomaton("more input letters than letters".into()));
        }
        let in_range = |q: &usize| *q < nq;
        if !initial.iter().all(in_range) || !accepting.iter().all(in_range) {
            return Err(Error::InvalidAutomaton("initial or accepting state out of range".into()));
        }
        let mut delta = vec![vec![Vec::new(); poset.len()]; nq];
        for &(from, x, to) in transitions {
            if from >= nq || to >= nq {
                return Err(Error::InvalidAutomaton(format!("transition {from} -> {to} refers to a dangling state")));
            }
            if x >= poset.len() {
                return Err(Error::UnknownLetter(x));
            }
            delta[from][x].push(to);
        }
        for row in &mut delta {
            for targets in row {
                targets.sort_unstable();
                targets.dedup();
            }
        }
        let mut initial = initial;
        initial.sort_unstable();
        initial.dedup();
        let mut acc = vec![false; nq];
        for q in accepting {
            acc[q] = true;
        }
        Ok(OrderedNfa {
            states,
            initial,
            accepting: acc,
            inputs,
            poset,
            delta,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&q| self.accepting[q]).collect()
    }

    pub fn letters(&self) -> &[String] {
        self.poset.letters()
    }

    pub fn letter_count(&self) -> usize {
        self.poset.len()
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn input_letters(&self) -> &[String] {
        &self.poset.letters()[..self.inputs]
    }

    pub fn output_letters(&self) -> &[String] {
        &self.poset.letters()[self.inputs..]
    }

    pub fn poset(&self) -> &LetterPoset {
        &self.poset
    }

    /// Whether the order is the one [`new`](Self::new) builds for this input/output split.
    pub fn has_observer_order(&self) -> bool {
        LetterPoset::observer(self.input_letters().to_vec(), self.output_letters().to_vec())
            .is_ok_and(|p| p == self.poset)
    }

    pub fn successors(&self, q: usize, x: usize) -> &[usize] {
        &self.delta[q][x]
    }

    /// All transitions in canonical `(from, letter, to)` order.
    pub fn transitions(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (q, row) in self.delta.iter().enumerate() {
            for (x, targets) in row.iter().enumerate() {
                out.extend(targets.iter().map(|&t| (q, x, t)));
            }
        }
        out
    }

    /// The sorted set of states reachable from `set` by one `x` step.
    pub fn post(&self, set: &[usize], x: usize) -> Vec<usize> {
        let mut next: Vec<usize> = set.iter().flat_map(|&q| self.delta[q][x].iter().copied()).collect();
        next.sort_unstable();
        next.dedup();
        next
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        if word.iter().any(|&x| x >= self.letter_count()) {
            return false;
        }
        let end = word.iter().fold(self.initial.clone(), |s, &x| self.post(&s, x));
        end.iter().any(|&q| self.accepting[q])
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue: VecDeque<usize> = self.initial.iter().copied().collect();
        for &q in &self.initial {
            seen[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for targets in &self.delta[q] {
                for &t in targets {
                    if !std::mem::replace(&mut seen[t], true) {
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut rev = vec![Vec::new(); n];
        for (q, x, t) in self.transitions() {
            let _ = x;
            rev[t].push(q);
        }
        let mut seen = self.accepting.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if !std::mem::replace(&mut seen[p], true) {
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// The sub-automaton on `keep`, with states renumbered in their original order.
    pub fn restrict(&self, keep: &[bool]) -> OrderedNfa {
        let mut new_index = vec![usize::MAX; self.state_count()];
        let mut states = Vec::new();
        for q in 0..self.state_count() {
            if keep[q] {
                new_index[q] = states.len();
                states.push(self.states[q].clone());
            }
        }
        let map = |q: usize| (new_index[q] != usize::MAX).then_some(new_index[q]);
        let transitions: Vec<_> = self
            .transitions()
            .into_iter()
            .filter_map(|(q, x, t)| Some((map(q)?, x, map(t)?)))
            .collect();
        let initial = self.initial.iter().filter_map(|&q| map(q)).collect();
        let accepting = self.accepting_states().into_iter().filter_map(map).collect();
        OrderedNfa::with_poset(states, initial, accepting, self.poset.clone(), self.inputs, &transitions)
            .expect("restriction of a valid automaton is valid")
    }

    /// The same automaton with its input letters reordered: `order[i]` is the old
    /// index of the letter that becomes input `i`. Requires the observer order.
    pub fn with_input_order(&self, order: &[usize]) -> Result<OrderedNfa> {
        let s = self.inputs;
        if !self.has_observer_order() {
            return Err(Error::InvalidPoset("input reordering needs a linear input order".into()));
        }
        if order.len() != s || order.iter().collect::<BTreeSet<_>>().len() != s || order.iter().any(|&i| i >= s) {
            return Err(Error::InvalidAutomaton("not a permutation of the input letters".into()));
        }
        let mut new_index: Vec<usize> = (0..self.letter_count()).collect();
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let inputs = order.iter().map(|&i| self.letters()[i].clone()).collect();
        let transitions: Vec<_> = self
            .transitions()
            .into_iter()
            .map(|(q, x, t)| (q, new_index[x], t))
            .collect();
        OrderedNfa::new(
            self.states.clone(),
            self.initial.clone(),
            self.accepting_states(),
            inputs,
            self.output_letters().to_vec(),
            &transitions,
        )
    }

    /// Renders a word with letters separated by spaces.
    pub fn describe_word(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&x| self.letters().get(x).map_or("?", |s| s.as_str()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
