use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::nfa::OrderedNfa;

pub const DEFAULT_STATE_BUDGET: usize = 200_000;

/// How the best letter antichain is chosen at each subset state.
#[derive(Debug, Clone)]
enum Antichains {
    /// Linear inputs `0..s`, discrete outputs: all outputs plus the best input.
    Observer(usize),
    General(Vec<Vec<usize>>),
}

/// Lazily determinised automaton with a memo of level widths.
///
/// `width(S, 0)` is 1 if `S` contains an accepting state and 0 otherwise;
/// `width(S, m)` is the maximum over letter antichains `A` of
/// `sum over x in A of width(post(S, x), m - 1)`.
pub struct WidthEngine<'a> {
    nfa: &'a OrderedNfa,
    budget: usize,
    antichains: Antichains,
    sets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    succ: Vec<Vec<Option<Option<usize>>>>,
    /// `levels[m][s]` is the width of subset state `s` at remaining length `m`.
    levels: Vec<Vec<Option<BigUint>>>,
}

impl<'a> WidthEngine<'a> {
    pub fn new(nfa: &'a OrderedNfa, budget_states: usize) -> Self {
        let antichains = match nfa.poset().observer_split() {
            Some(s) => Antichains::Observer(s),
            None => Antichains::General(nfa.poset().maximal_antichains()),
        };
        let mut e = WidthEngine {
            nfa,
            budget: budget_states,
            antichains,
            sets: Vec::new(),
            index: HashMap::new(),
            succ: Vec::new(),
            levels: Vec::new(),
        };
        let start = nfa.initial().to_vec();
        if !start.is_empty() {
            e.intern(start).expect("a single state fits any budget");
        }
        e
    }

    /// Number of subset states discovered so far.
    pub fn dfa_states(&self) -> usize {
        self.sets.len()
    }

    fn intern(&mut self, set: Vec<usize>) -> Result<usize> {
        if let Some(&i) = self.index.get(&set) {
            return Ok(i);
        }
        if self.sets.len() >= self.budget.max(1) {
            return Err(Error::BudgetExceeded {
                what: "determinisation states",
                limit: self.budget,
            });
        }
        let i = self.sets.len();
        self.index.insert(set.clone(), i);
        self.sets.push(set);
        self.succ.push(vec![None; self.nfa.letter_count()]);
        for level in &mut self.levels {
            level.push(None);
        }
        Ok(i)
    }

    fn step(&mut self, s: usize, x: usize) -> Result<Option<usize>> {
        if let Some(t) = self.succ[s][x] {
            return Ok(t);
        }
        let next = self.nfa.post(&self.sets[s], x);
        let t = if next.is_empty() { None } else { Some(self.intern(next)?) };
        self.succ[s][x] = Some(t);
        Ok(t)
    }

    fn ensure_level(&mut self, m: usize) {
        while self.levels.len() <= m {
            self.levels.push(vec![None; self.sets.len()]);
        }
    }

    fn value(&mut self, s: Option<usize>, m: usize) -> Result<BigUint> {
        let Some(s) = s else { return Ok(BigUint::zero()) };
        self.ensure_level(m);
        if let Some(v) = &self.levels[m][s] {
            return Ok(v.clone());
        }
        // Fill lower levels first so recursion depth stays bounded.
        let mut lo = m;
        while lo > 0 && self.levels[lo - 1].get(s).is_none_or(|v| v.is_none()) {
            lo -= 1;
        }
        for level in lo..=m {
            let v = self.compute(s, level)?;
            self.levels[level][s] = Some(v);
        }
        Ok(self.levels[m][s].clone().expect("just computed"))
    }

    fn compute(&mut self, s: usize, m: usize) -> Result<BigUint> {
        if m == 0 {
            let hit = self.sets[s].iter().any(|&q| self.nfa.is_accepting(q));
            return Ok(if hit { BigUint::one() } else { BigUint::zero() });
        }
        let n_letters = self.nfa.letter_count();
        let mut per_letter = Vec::with_capacity(n_letters);
        for x in 0..n_letters {
            let t = self.step(s, x)?;
            per_letter.push(self.value(t, m - 1)?);
        }
        Ok(match &self.antichains {
            Antichains::Observer(split) => {
                let outputs: BigUint = per_letter[*split..].iter().sum();
                let best_input = per_letter[..*split].iter().max().cloned().unwrap_or_default();
                outputs + best_input
            }
            Antichains::General(all) => all
                .iter()
                .map(|a| a.iter().map(|&x| &per_letter[x]).sum::<BigUint>())
                .max()
                .unwrap_or_default(),
        })
    }

    /// The width of the length-`n` slice of the language.
    pub fn width(&mut self, n: usize) -> Result<BigUint> {
        if self.sets.is_empty() {
            return Ok(BigUint::zero());
        }
        for m in 0..=n {
            self.value(Some(0), m)?;
        }
        self.value(Some(0), n)
    }

    /// Widths for every length `0..=n`.
    pub fn widths_upto(&mut self, n: usize) -> Result<Vec<BigUint>> {
        (0..=n).map(|m| self.width(m)).collect()
    }
}

/// The exact width of `L(a)` restricted to words of length `n`.
pub fn exact_width(a: &OrderedNfa, n: usize) -> Result<BigUint> {
    exact_width_with_budget(a, n, DEFAULT_STATE_BUDGET)
}

pub fn exact_width_with_budget(a: &OrderedNfa, n: usize, budget_states: usize) -> Result<BigUint> {
    WidthEngine::new(a, budget_states).width(n)
}
