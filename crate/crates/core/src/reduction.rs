//! Bob's observer automaton: Alice's inputs are abstracted into nondeterminism.
//!
//! From a transducer state `q`, Bob's input `x` leads to an auxiliary state
//! `(q', y)` for every Alice input `a` with `delta(q, (a, x)) = q'` and Bob output
//! `y`; the auxiliary state reads `y` and moves on to `q'`. Input letters come
//! first in the alphabet, in declaration order, followed by Bob's outputs.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::nfa::OrderedNfa;
use crate::transducer::{Observation, Sdfst};

fn aux_name(t: &Sdfst, q: usize, y: usize) -> String {
    format!("({},{})", t.states()[q], t.bob_out()[y])
}

fn build(t: &Sdfst, aux: &BTreeSet<(usize, usize)>) -> Result<OrderedNfa> {
    let nq = t.states().len();
    let ni = t.bob_in().len();
    let mut states = t.states().to_vec();
    let aux: Vec<(usize, usize)> = aux.iter().copied().collect();
    states.extend(aux.iter().map(|&(q, y)| aux_name(t, q, y)));
    let aux_index = |q: usize, y: usize| nq + aux.binary_search(&(q, y)).expect("auxiliary state exists");

    let mut transitions = Vec::new();
    for q in 0..nq {
        for x in 0..ni {
            for a in 0..t.alice_in().len() {
                let c = t.cell(q, a, x);
                transitions.push((q, x, aux_index(c.next, c.bob_out)));
            }
        }
    }
    for &(q, y) in &aux {
        transitions.push((aux_index(q, y), ni + y, q));
    }
    let accepting = (0..nq).filter(|&q| t.is_accepting(q)).collect();
    OrderedNfa::new(
        states,
        vec![t.initial()],
        accepting,
        t.bob_in().to_vec(),
        t.bob_out().to_vec(),
        &transitions,
    )
}

/// The observer automaton with only those auxiliary states some transition enters.
pub fn build_observer_nfa(t: &Sdfst) -> Result<OrderedNfa> {
    let mut aux = BTreeSet::new();
    for q in 0..t.states().len() {
        for a in 0..t.alice_in().len() {
            for x in 0..t.bob_in().len() {
                let c = t.cell(q, a, x);
                aux.insert((c.next, c.bob_out));
            }
        }
    }
    build(t, &aux)
}

/// The observer automaton with every auxiliary state of `Q x Gamma_B`, used or not.
pub fn build_observer_nfa_full(t: &Sdfst) -> Result<OrderedNfa> {
    let aux = (0..t.states().len())
        .flat_map(|q| (0..t.bob_out().len()).map(move |y| (q, y)))
        .collect();
    build(t, &aux)
}

/// `(x1, y1) ... (xk, yk)` becomes `x1 y1 ... xk yk`, with outputs shifted past the inputs.
pub fn flatten(obs: &Observation, n_inputs: usize) -> Vec<usize> {
    obs.iter().flat_map(|&(x, y)| [x, n_inputs + y]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::error::Error;
    use crate::width::enumerate_level;

    #[test]
    fn relay_observer_has_three_states() {
        let a = build_observer_nfa(&corpus::relay()).unwrap();
        assert_eq!(a.states(), ["q0", "(q0,a')", "(q0,b')"]);
        assert_eq!(a.input_letters(), ["a", "b"]);
        assert_eq!(a.output_letters(), ["a'", "b'"]);
        assert_eq!(a.transitions().len(), 6);
    }

    #[test]
    fn interrupt_observer_has_eight_states() {
        let t = corpus::interrupt();
        let a = build_observer_nfa(&t).unwrap();
        assert_eq!(a.state_count(), 8);
        let full = build_observer_nfa_full(&t).unwrap();
        assert_eq!(full.state_count(), t.states().len() * (1 + t.bob_out().len()));
    }

    #[test]
    fn flatten_interleaves() {
        assert!(flatten(&vec![], 2).is_empty());
        assert_eq!(flatten(&vec![(0, 0), (1, 1)], 2), vec![0, 2, 1, 3]);
    }

    #[test]
    fn language_matches_bob_projection() {
        for (name, t) in corpus::transducers() {
            let a = build_observer_nfa(&t).unwrap();
            let full = build_observer_nfa_full(&t).unwrap();
            for k in 0..=3 {
                let expected: Vec<Vec<usize>> =
                    t.bob_language(k).iter().map(|o| flatten(o, t.bob_in().len())).collect();
                assert_eq!(enumerate_level(&a, 2 * k, 100_000).unwrap(), expected, "{name} k={k}");
                assert_eq!(enumerate_level(&full, 2 * k, 100_000).unwrap(), expected, "{name} k={k}");
                assert!(enumerate_level(&a, 2 * k + 1, 100_000).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn shared_letters_are_rejected() {
        let mut d = corpus::relay().to_description();
        d.bob_out = vec!["a".into(), "z".into()];
        let t = d.validate().unwrap();
        assert_eq!(build_observer_nfa(&t), Err(Error::AlphabetCollision(vec!["a".into()])));
    }
}
