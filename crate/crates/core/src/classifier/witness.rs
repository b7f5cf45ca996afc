use std::collections::VecDeque;

use num_bigint::BigUint;

use super::graph::{components, labels_path, shortest_word};
use crate::error::{Error, Result};
use crate::nfa::OrderedNfa;
use crate::width::WidthEngine;

/// Two equal-length cycles at `state` that first differ at incomparable letters.
/// Every word `prefix w1 ... wm suffix` with each `wi` in `{u, v}` is accepted,
/// and the `2^m` such words form an antichain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialWitness {
    pub state: usize,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    /// Leads from an initial state to `state`.
    pub prefix: Vec<usize>,
    /// Leads from `state` to an accepting state.
    pub suffix: Vec<usize>,
}

impl ExponentialWitness {
    /// Checks the certificate against `a` without trusting how it was found.
    pub fn verify(&self, a: &OrderedNfa) -> Result<()> {
        let reject = |m: &str| Err(Error::WitnessRejected(m.into()));
        let q = self.state;
        if q >= a.state_count() {
            return reject("state out of range");
        }
        if self.u.is_empty() || self.u.len() != self.v.len() {
            return reject("cycles must be non-empty and of equal length");
        }
        let Some((&x, &y)) = self.u.iter().zip(&self.v).find(|(x, y)| x != y) else {
            return reject("cycles are equal");
        };
        if x >= a.letter_count() || y >= a.letter_count() || a.poset().comparable(x, y) {
            return reject("first difference is comparable");
        }
        for cycle in [&self.u, &self.v] {
            if !labels_path(a, &[q], cycle, |t| t == q) {
                return reject("a cycle does not return to its state");
            }
        }
        if !labels_path(a, a.initial(), &self.prefix, |t| t == q) {
            return reject("prefix does not reach the state");
        }
        if !labels_path(a, &[q], &self.suffix, |t| a.is_accepting(t)) {
            return reject("suffix does not reach acceptance");
        }
        Ok(())
    }

    pub fn pumped_length(&self, m: usize) -> usize {
        self.prefix.len() + m * self.u.len() + self.suffix.len()
    }

    /// `prefix`, then `u` or `v` per entry of `choice`, then `suffix`.
    pub fn pumped_word(&self, choice: &[bool]) -> Vec<usize> {
        let mut w = self.prefix.clone();
        for &c in choice {
            w.extend(if c { &self.v } else { &self.u });
        }
        w.extend(&self.suffix);
        w
    }

    /// Whether the exact width reaches `2^m` at each pumped length for `m` up to `max_m`.
    pub fn pumping_holds(&self, a: &OrderedNfa, max_m: usize, budget_states: usize) -> Result<bool> {
        let mut engine = WidthEngine::new(a, budget_states);
        for m in 0..=max_m {
            if engine.width(self.pumped_length(m))? < BigUint::from(1u8) << m {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn describe(&self, a: &OrderedNfa) -> String {
        format!(
            "state {}: u = {}, v = {}",
            a.states()[self.state],
            a.describe_word(&self.u),
            a.describe_word(&self.v)
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flag {
    Equal,
    Diverged,
}

/// Searches the flagged square of each nontrivial component for a pair of cycles
/// at one state whose first difference is incomparable; the first state in index
/// order that has one yields the witness with the shortest cycles.
pub fn find_exponential_witness(a: &OrderedNfa) -> Option<ExponentialWitness> {
    let comps = components(a);
    for q in 0..a.state_count() {
        let c = comps.of[q];
        if !comps.nontrivial[c] {
            continue;
        }
        let scc = &comps.members[c];
        if let Some((u, v)) = cycle_pair(a, scc, q) {
            let prefix = shortest_word(a, a.initial(), |t| t == q)?;
            let suffix = shortest_word(a, &[q], |t| a.is_accepting(t))?;
            return Some(ExponentialWitness {
                state: q,
                u,
                v,
                prefix,
                suffix,
            });
        }
    }
    None
}

fn cycle_pair(a: &OrderedNfa, scc: &[usize], q: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let k = scc.len();
    let local = |s: usize| scc.binary_search(&s).ok();
    let encode = |s1: usize, s2: usize, f: Flag| (s1 * k + s2) * 2 + (f == Flag::Diverged) as usize;
    let lq = local(q)?;
    let start = encode(lq, lq, Flag::Equal);
    let goal = encode(lq, lq, Flag::Diverged);
    let mut parent: Vec<Option<(usize, usize, usize)>> = vec![None; k * k * 2];
    let mut seen = vec![false; k * k * 2];
    seen[start] = true;
    let mut queue = VecDeque::from([(lq, lq, Flag::Equal)]);
    while let Some((s1, s2, flag)) = queue.pop_front() {
        let here = encode(s1, s2, flag);
        for x1 in 0..a.letter_count() {
            for x2 in 0..a.letter_count() {
                let next_flag = match flag {
                    Flag::Diverged => Flag::Diverged,
                    Flag::Equal if x1 == x2 => Flag::Equal,
                    Flag::Equal if !a.poset().comparable(x1, x2) => Flag::Diverged,
                    Flag::Equal => continue,
                };
                for &t1 in a.successors(scc[s1], x1) {
                    let Some(t1) = local(t1) else { continue };
                    for &t2 in a.successors(scc[s2], x2) {
                        let Some(t2) = local(t2) else { continue };
                        let id = encode(t1, t2, next_flag);
                        if seen[id] {
                            continue;
                        }
                        seen[id] = true;
                        parent[id] = Some((here, x1, x2));
                        if id == goal {
                            let (mut u, mut v) = (Vec::new(), Vec::new());
                            let mut cur = id;
                            while let Some((prev, x1, x2)) = parent[cur] {
                                u.push(x1);
                                v.push(x2);
                                cur = prev;
                            }
                            u.reverse();
                            v.reverse();
                            return Some((u, v));
                        }
                        queue.push_back((t1, t2, next_flag));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::trim;
    use crate::corpus;
    use crate::reduction::build_observer_nfa;

    #[test]
    fn relay_witness_diverges_at_the_output() {
        let a = trim(&build_observer_nfa(&corpus::relay()).unwrap());
        let w = find_exponential_witness(&a).unwrap();
        assert_eq!(w.describe(&a), "state q0: u = a a', v = a b'");
        w.verify(&a).unwrap();
        assert!(w.pumping_holds(&a, 6, 1000).unwrap());
    }

    #[test]
    fn interrupt_has_no_witness() {
        let a = trim(&build_observer_nfa(&corpus::interrupt()).unwrap());
        assert_eq!(find_exponential_witness(&a), None);
    }

    #[test]
    fn single_cycle_has_no_witness() {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let a = OrderedNfa::new(names(&["p", "q"]), vec![0], vec![0], vec![], names(&["x", "y"]), &[(0, 0, 1), (1, 1, 0)])
            .unwrap();
        assert_eq!(find_exponential_witness(&a), None);
    }

    #[test]
    fn forged_witnesses_are_rejected() {
        let a = trim(&build_observer_nfa(&corpus::relay()).unwrap());
        let good = find_exponential_witness(&a).unwrap();
        let mut w = good.clone();
        w.v = w.u.clone();
        assert!(w.verify(&a).is_err());
        let mut w = good.clone();
        w.v = vec![1, 2]; // b a': first difference a vs b is comparable
        assert!(w.verify(&a).is_err());
        let mut w = good;
        w.u.pop();
        assert!(w.verify(&a).is_err());
    }
}
