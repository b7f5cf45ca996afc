use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::Sdfst;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Alice,
    Bob,
}

/// A party's own history: `(input, output)` pairs over that party's alphabets.
pub type History = Vec<(usize, usize)>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Rule {
    Constant(usize),
    Table(BTreeMap<History, usize>),
}

/// A deterministic strategy truncated at `horizon` steps: the next input as a
/// function of the party's own history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    side: Side,
    horizon: usize,
    rule: Rule,
}

impl Strategy {
    pub fn constant(side: Side, letter: usize, horizon: usize) -> Self {
        Strategy {
            side,
            horizon,
            rule: Rule::Constant(letter),
        }
    }

    /// A decision table. It only needs entries for histories that can actually be queried.
    pub fn from_table(side: Side, horizon: usize, table: BTreeMap<History, usize>) -> Self {
        Strategy {
            side,
            horizon,
            rule: Rule::Table(table),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn table(&self) -> Option<&BTreeMap<History, usize>> {
        match &self.rule {
            Rule::Table(t) => Some(t),
            Rule::Constant(_) => None,
        }
    }

    pub fn choose(&self, history: &[(usize, usize)]) -> Result<usize> {
        if history.len() >= self.horizon {
            return Err(Error::HorizonTooSmall {
                horizon: self.horizon,
                needed: history.len() + 1,
            });
        }
        match &self.rule {
            Rule::Constant(letter) => Ok(*letter),
            Rule::Table(table) => table
                .get(history)
                .copied()
                .ok_or(Error::StrategyUndefined(history.len())),
        }
    }

    /// A stable human-readable form, e.g. `{e:a, (a,a'):b}`.
    pub fn describe(&self, t: &Sdfst) -> String {
        let (inputs, outputs) = match self.side {
            Side::Alice => (t.alice_in(), t.alice_out()),
            Side::Bob => (t.bob_in(), t.bob_out()),
        };
        match &self.rule {
            Rule::Constant(l) => format!("const {}", inputs[*l]),
            Rule::Table(table) => {
                let mut s = String::from("{");
                for (i, (hist, &choice)) in table.iter().enumerate() {
                    if i > 0 {
                        s.push_str(", ");
                    }
                    if hist.is_empty() {
                        s.push('e');
                    }
                    for &(a, b) in hist {
                        let _ = write!(s, "({},{})", inputs[a], outputs[b]);
                    }
                    let _ = write!(s, ":{}", inputs[choice]);
                }
                s.push('}');
                s
            }
        }
    }
}

struct SideView<'a> {
    t: &'a Sdfst,
    side: Side,
}

impl SideView<'_> {
    fn own_inputs(&self) -> usize {
        match self.side {
            Side::Alice => self.t.alice_in().len(),
            Side::Bob => self.t.bob_in().len(),
        }
    }

    fn own_outputs(&self) -> usize {
        match self.side {
            Side::Alice => self.t.alice_out().len(),
            Side::Bob => self.t.bob_out().len(),
        }
    }

    /// States possible after the party plays `letter` and sees `output`, over
    /// every letter the other party might have played.
    fn successors(&self, states: &BTreeSet<usize>, letter: usize, output: usize) -> BTreeSet<usize> {
        let mut next = BTreeSet::new();
        for &q in states {
            match self.side {
                Side::Alice => {
                    for b in 0..self.t.bob_in().len() {
                        let c = self.t.cell(q, letter, b);
                        if c.alice_out == output {
                            next.insert(c.next);
                        }
                    }
                }
                Side::Bob => {
                    for a in 0..self.t.alice_in().len() {
                        let c = self.t.cell(q, a, letter);
                        if c.bob_out == output {
                            next.insert(c.next);
                        }
                    }
                }
            }
        }
        next
    }

    fn count(&self, states: &BTreeSet<usize>, depth: usize, k: usize, cap: u128) -> u128 {
        if depth >= k {
            return 1;
        }
        let mut total: u128 = 0;
        for letter in 0..self.own_inputs() {
            let mut product: u128 = 1;
            for out in 0..self.own_outputs() {
                let next = self.successors(states, letter, out);
                if !next.is_empty() && depth + 1 < k {
                    product = product.saturating_mul(self.count(&next, depth + 1, k, cap));
                    if product > cap {
                        return cap + 1;
                    }
                }
            }
            total = total.saturating_add(product);
            if total > cap {
                return cap + 1;
            }
        }
        total
    }
}

/// Number of strategies on reachable decision points, saturating just above `cap`.
pub fn count_strategies(t: &Sdfst, side: Side, k: usize, cap: usize) -> usize {
    let view = SideView { t, side };
    let n = view.count(&BTreeSet::from([t.initial()]), 0, k, cap as u128);
    usize::try_from(n).unwrap_or(usize::MAX)
}

/// Every deterministic strategy for `side` truncated at horizon `k`, defined exactly
/// on the histories that can arise against some opponent. Strategies come out
/// in lexicographic order of their decision tables.
pub fn enumerate_strategies(t: &Sdfst, side: Side, k: usize, cap: usize) -> Result<Vec<Strategy>> {
    if count_strategies(t, side, k, cap) > cap {
        return Err(Error::BudgetExceeded {
            what: "strategy enumeration",
            limit: cap,
        });
    }
    let view = SideView { t, side };
    let mut pending = BTreeMap::new();
    if k > 0 {
        pending.insert(History::new(), BTreeSet::from([t.initial()]));
    }
    let mut out = Vec::new();
    expand(&view, k, &mut pending, &mut BTreeMap::new(), &mut out);
    Ok(out)
}

fn expand(
    view: &SideView<'_>,
    k: usize,
    pending: &mut BTreeMap<History, BTreeSet<usize>>,
    table: &mut BTreeMap<History, usize>,
    out: &mut Vec<Strategy>,
) {
    let Some((hist, states)) = pending.pop_first() else {
        out.push(Strategy::from_table(view.side, k, table.clone()));
        return;
    };
    for letter in 0..view.own_inputs() {
        let mut added = Vec::new();
        if hist.len() + 1 < k {
            for output in 0..view.own_outputs() {
                let next = view.successors(&states, letter, output);
                if !next.is_empty() {
                    let mut h = hist.clone();
                    h.push((letter, output));
                    pending.insert(h.clone(), next);
                    added.push(h);
                }
            }
        }
        table.insert(hist.clone(), letter);
        expand(view, k, pending, table, out);
        table.remove(&hist);
        for h in added {
            pending.remove(&h);
        }
    }
    pending.insert(hist, states);
}
