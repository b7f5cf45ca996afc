//! ```text
//! nfa
//! inputs: a b        # linearly ordered as listed
//! outputs: x y       # incomparable to everything
//! order: a<x         # optional: replaces the default order by the one generated here
//! states: s0 s1
//! initial: s0
//! accepting: s1
//! s0 --a--> s1
//! ```

use std::fmt::Write as _;

use super::OrderedNfa;
use crate::error::{Error, Result};
use crate::text::{content_lines, distinct_labels, index_of, FieldReader};
use crate::width::LetterPoset;

fn list_line(out: &mut String, key: &str, items: impl IntoIterator<Item = impl AsRef<str>>) {
    out.push_str(key);
    out.push(':');
    for item in items {
        out.push(' ');
        out.push_str(item.as_ref());
    }
    out.push('\n');
}

pub fn parse_nfa(src: &str) -> Result<OrderedNfa> {
    let mut reader = FieldReader::new(content_lines(src));
    reader.header(&["nfa"])?;
    let (line, toks) = reader.field("inputs")?;
    let inputs = distinct_labels(line, "input", &toks)?;
    let (line, toks) = reader.field("outputs")?;
    let outputs = distinct_labels(line, "output", &toks)?;
    let mut letters = inputs.clone();
    letters.extend(outputs.iter().cloned());
    let poset = match reader.optional_field("order") {
        Some((line, toks)) => {
            let mut pairs = Vec::new();
            for t in toks {
                let (x, y) = t
                    .split_once('<')
                    .ok_or_else(|| Error::parse(line, format!("expected `x<y`, found `{t}`")))?;
                let lookup = |l: &str| {
                    index_of(&letters, l).ok_or_else(|| Error::parse(line, format!("unknown letter `{l}`")))
                };
                pairs.push((lookup(x)?, lookup(y)?));
            }
            LetterPoset::from_generators(letters.clone(), &pairs).map_err(|e| Error::parse(line, e.to_string()))?
        }
        None => LetterPoset::observer(inputs.clone(), outputs).map_err(|e| Error::parse(line, e.to_string()))?,
    };
    let (line, toks) = reader.field("states")?;
    let states = distinct_labels(line, "state", &toks)?;
    let state_list = |line: usize, toks: Vec<&str>| -> Result<Vec<usize>> {
        toks.iter()
            .map(|q| index_of(&states, q).ok_or_else(|| Error::parse(line, format!("unknown state `{q}`"))))
            .collect()
    };
    let (line, toks) = reader.field("initial")?;
    let initial = state_list(line, toks)?;
    let (line, toks) = reader.field("accepting")?;
    let accepting = state_list(line, toks)?;

    let mut transitions = Vec::new();
    while let Some(l) = reader.next_line() {
        let parts: Vec<&str> = l.text.split_whitespace().collect();
        let letter = match parts.as_slice() {
            [_, arrow, _] => arrow.strip_prefix("--").and_then(|r| r.strip_suffix("-->")),
            _ => None,
        }
        .filter(|x| !x.is_empty())
        .ok_or_else(|| Error::parse(l.number, format!("expected `q --x--> q'`, found `{}`", l.text)))?;
        let q = state_list(l.number, vec![parts[0]])?[0];
        let t = state_list(l.number, vec![parts[2]])?[0];
        let x = index_of(&letters, letter)
            .ok_or_else(|| Error::parse(l.number, format!("unknown letter `{letter}`")))?;
        transitions.push((q, x, t));
    }
    OrderedNfa::with_poset(states, initial, accepting, poset, inputs.len(), &transitions)
}

impl OrderedNfa {
    /// Canonical text form; [`parse_nfa`] reads it back to an equal automaton.
    pub fn to_text(&self) -> String {
        let mut s = String::from("nfa\n");
        list_line(&mut s, "inputs", self.input_letters());
        list_line(&mut s, "outputs", self.output_letters());
        if !self.has_observer_order() {
            let l = self.letters();
            list_line(&mut s, "order", self.poset().pairs().iter().map(|&(x, y)| format!("{}<{}", l[x], l[y])));
        }
        list_line(&mut s, "states", self.states());
        list_line(&mut s, "initial", self.initial().iter().map(|&q| &self.states()[q]));
        list_line(&mut s, "accepting", self.accepting_states().iter().map(|&q| &self.states()[q]));
        for (q, x, t) in self.transitions() {
            let _ = writeln!(s, "{} --{}--> {}", self.states()[q], self.letters()[x], self.states()[t]);
        }
        s
    }
}
