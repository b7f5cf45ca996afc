use std::collections::VecDeque;

use super::graph::{components, Components};
use crate::error::{Error, Result};
use crate::nfa::OrderedNfa;

/// A divergence out of a cycle: from `state`, the words `stay` and `leave` agree
/// up to their last letters, which are incomparable; `stay` ends back inside the
/// component of `state` while `leave` ends at `exit`, in a later component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub state: usize,
    pub stay: Vec<usize>,
    pub leave: Vec<usize>,
    pub exit: usize,
}

impl Gadget {
    pub fn describe(&self, a: &OrderedNfa) -> String {
        format!(
            "state {}: stay = {}, leave = {} -> {}",
            a.states()[self.state],
            a.describe_word(&self.stay),
            a.describe_word(&self.leave),
            a.states()[self.exit]
        )
    }
}

fn common_prefix(parent: &[Option<(usize, usize)>], mut cur: usize) -> Vec<usize> {
    let mut w = Vec::new();
    while let Some((prev, x)) = parent[cur] {
        w.push(x);
        cur = prev;
    }
    w.reverse();
    w
}

/// All gadgets leaving component `c`, at most one per exit state, in discovery order.
fn gadgets_from(a: &OrderedNfa, comps: &Components, c: usize) -> Result<Vec<Gadget>> {
    let n = a.state_count();
    let inside = |s: usize| comps.of[s] == c;
    let mut found: Vec<Gadget> = Vec::new();
    for &p in &comps.members[c] {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n * n];
        let mut seen = vec![false; n * n];
        seen[p * n + p] = true;
        let mut queue = VecDeque::from([(p, p)]);
        while let Some((s1, s2)) = queue.pop_front() {
            let here = s1 * n + s2;
            for x1 in 0..a.letter_count() {
                for x2 in 0..a.letter_count() {
                    if x1 != x2 && a.poset().comparable(x1, x2) {
                        continue;
                    }
                    for &t1 in a.successors(s1, x1).iter().filter(|&&t| inside(t)) {
                        for &t2 in a.successors(s2, x2) {
                            if x1 == x2 {
                                let id = t1 * n + t2;
                                if !seen[id] {
                                    seen[id] = true;
                                    parent[id] = Some((here, x1));
                                    queue.push_back((t1, t2));
                                }
                            } else if inside(t2) {
                                return Err(Error::ClassificationInconsistent {
                                    gadget_order: 0,
                                    fit: format!(
                                        "incomparable cycles at {} were missed by the witness search",
                                        a.states()[p]
                                    ),
                                });
                            } else if found.iter().all(|g| g.exit != t2) {
                                let w = common_prefix(&parent, here);
                                let mut stay = w.clone();
                                stay.push(x1);
                                let mut leave = w;
                                leave.push(x2);
                                found.push(Gadget {
                                    state: p,
                                    stay,
                                    leave,
                                    exit: t2,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(found)
}

/// The polynomial growth order of an automaton without an exponential witness:
/// the longest chain of gadgets in which every gadget sits on a cycle and the
/// last one is followed by another cycle. Returns the order and one longest chain.
///
/// `a` must be trim. The result is only trustworthy once the width fit agrees.
pub fn polynomial_order(a: &OrderedNfa) -> Result<(usize, Vec<Gadget>)> {
    let comps = components(a);
    let nc = comps.members.len();
    // best[c]: longest chain starting in c, None if no cycle is reachable from c
    let mut best: Vec<Option<(usize, Vec<Gadget>)>> = vec![None; nc];
    for c in (0..nc).rev() {
        let mut value: Option<(usize, Vec<Gadget>)> = comps.nontrivial[c].then(|| (0, Vec::new()));
        let better = |cand: &(usize, Vec<Gadget>), cur: &Option<(usize, Vec<Gadget>)>| {
            cur.as_ref().is_none_or(|(k, _)| cand.0 > *k)
        };
        for &s in &comps.successors[c] {
            if let Some(cand) = &best[s] {
                if better(cand, &value) {
                    value = Some(cand.clone());
                }
            }
        }
        if comps.nontrivial[c] {
            for g in gadgets_from(a, &comps, c)? {
                if let Some((k, chain)) = &best[comps.of[g.exit]] {
                    let mut full = vec![g];
                    full.extend(chain.iter().cloned());
                    let cand = (k + 1, full);
                    if better(&cand, &value) {
                        value = Some(cand);
                    }
                }
            }
        }
        best[c] = value;
    }
    let mut result = (0, Vec::new());
    for &q in a.initial() {
        if let Some(cand) = &best[comps.of[q]] {
            if cand.0 > result.0 {
                result = cand.clone();
            }
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::trim;
    use crate::corpus;
    use crate::reduction::build_observer_nfa;
    use crate::transducer::parse_transducer;

    fn order_of(src: &str) -> usize {
        let a = trim(&build_observer_nfa(&parse_transducer(src).unwrap()).unwrap());
        polynomial_order(&a).unwrap().0
    }

    #[test]
    fn corpus_orders() {
        assert_eq!(order_of(corpus::INTERRUPT), 2);
        assert_eq!(order_of(corpus::SWITCH), 1);
        assert_eq!(order_of(corpus::ONESHOT), 0);
        assert_eq!(order_of(corpus::CONSTANT), 0);
    }

    #[test]
    fn interrupt_chain_has_two_gadgets() {
        let a = trim(&build_observer_nfa(&corpus::interrupt()).unwrap());
        let (k, chain) = polynomial_order(&a).unwrap();
        assert_eq!(k, 2);
        assert_eq!(chain.len(), 2);
        for g in &chain {
            assert_eq!(g.stay.len(), g.leave.len());
            assert_ne!(g.stay.last(), g.leave.last());
        }
    }

    #[test]
    fn divergence_without_a_later_cycle_does_not_count() {
        // p loops on the input a; from p the output y ends the word.
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let a = OrderedNfa::new(
            names(&["p", "f"]),
            vec![0],
            vec![0, 1],
            names(&["a"]),
            names(&["y"]),
            &[(0, 0, 0), (0, 1, 1)],
        )
        .unwrap();
        assert_eq!(polynomial_order(&a).unwrap().0, 0);
        let finite = OrderedNfa::new(names(&["p", "f"]), vec![0], vec![1], vec![], names(&["y"]), &[(0, 0, 1)]).unwrap();
        assert_eq!(polynomial_order(&finite).unwrap().0, 0);
    }

    #[test]
    fn relay_gadgets_are_inconsistent() {
        let a = trim(&build_observer_nfa(&corpus::relay()).unwrap());
        assert!(matches!(polynomial_order(&a), Err(Error::ClassificationInconsistent { .. })));
    }
}
