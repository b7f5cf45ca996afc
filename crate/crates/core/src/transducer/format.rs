//! ```text
//! transducer
//! alice_in: a b
//! bob_in: a b
//! alice_out: a' b'
//! bob_out: a' b'
//! states: q0
//! initial: q0
//! accepting: q0
//! q0 (a,a) -> q0 (a',a')   # q (alice_in,bob_in) -> q' (alice_out,bob_out)
//! ```

use std::fmt::Write as _;

use super::{Sdfst, TransducerDescription, Transition};
use crate::error::{Error, Result};
use crate::text::{content_lines, distinct_labels, index_of, FieldReader};

fn split_pair(line: usize, text: &str) -> Result<(&str, Option<(&str, &str)>)> {
    let open = text
        .find('(')
        .ok_or_else(|| Error::parse(line, format!("expected `<state> (<x>,<y>)` in `{text}`")))?;
    let close = text
        .rfind(')')
        .filter(|&c| c > open)
        .ok_or_else(|| Error::parse(line, "unbalanced parentheses"))?;
    if !text[close + 1..].trim().is_empty() {
        return Err(Error::parse(line, format!("trailing text after `{}`", &text[..=close])));
    }
    let state = text[..open].trim();
    if state.is_empty() || state.contains(char::is_whitespace) {
        return Err(Error::parse(line, "expected a single state name before `(`"));
    }
    let inner = text[open + 1..close].trim();
    if inner.is_empty() || inner == "-" || inner == "eps" {
        return Ok((state, None));
    }
    let (x, y) = inner
        .split_once(',')
        .ok_or_else(|| Error::parse(line, format!("expected a pair, found `({inner})`")))?;
    Ok((state, Some((x.trim(), y.trim()))))
}

fn lookup(line: usize, labels: &[String], what: &str, token: &str) -> Result<usize> {
    index_of(labels, token).ok_or_else(|| Error::parse(line, format!("unknown {what} `{token}`")))
}

/// Parses the transducer format into an unchecked description.
pub fn parse_description(src: &str) -> Result<TransducerDescription> {
    let mut reader = FieldReader::new(content_lines(src));
    reader.header(&["transducer"])?;
    let mut alphabet = |key: &str| -> Result<Vec<String>> {
        let (line, t) = reader.field(key)?;
        distinct_labels(line, key, &t)
    };
    let alice_in = alphabet("alice_in")?;
    let bob_in = alphabet("bob_in")?;
    let alice_out = alphabet("alice_out")?;
    let bob_out = alphabet("bob_out")?;
    let states = alphabet("states")?;
    let (line, init) = reader.field("initial")?;
    let initial = match init.as_slice() {
        [q] => lookup(line, &states, "state", q)?,
        _ => return Err(Error::parse(line, "exactly one initial state expected")),
    };
    let (line, acc) = reader.field("accepting")?;
    let accepting = acc
        .iter()
        .map(|q| lookup(line, &states, "state", q))
        .collect::<Result<Vec<_>>>()?;

    let (na, nb) = (alice_in.len(), bob_in.len());
    let mut seen = vec![false; states.len() * na * nb];
    let mut transitions = Vec::new();
    let mut last_line = line;
    while let Some(l) = reader.next_line() {
        last_line = l.number;
        let (lhs, rhs) = l
            .text
            .split_once("->")
            .ok_or_else(|| Error::parse(l.number, format!("expected a transition, found `{}`", l.text)))?;
        let (from, input) = split_pair(l.number, lhs)?;
        let (to, output) = split_pair(l.number, rhs)?;
        let from = lookup(l.number, &states, "state", from)?;
        let to = lookup(l.number, &states, "state", to)?;
        let (a, b) = input.ok_or_else(|| Error::parse(l.number, "transition input must be a pair"))?;
        let a = lookup(l.number, &alice_in, "alice input", a)?;
        let b = lookup(l.number, &bob_in, "bob input", b)?;
        let output = match output {
            None => return Err(Error::parse(l.number, "empty output: every step must emit a pair")),
            Some((c, d)) => Some((
                lookup(l.number, &alice_out, "alice output", c)?,
                lookup(l.number, &bob_out, "bob output", d)?,
            )),
        };
        let slot = (from * na + a) * nb + b;
        if std::mem::replace(&mut seen[slot], true) {
            return Err(Error::parse(
                l.number,
                format!("duplicate transition for ({}, ({}, {}))", states[from], alice_in[a], bob_in[b]),
            ));
        }
        transitions.push(Transition {
            from,
            alice_in: a,
            bob_in: b,
            to,
            output,
        });
    }
    if let Some(slot) = seen.iter().position(|s| !s) {
        let (q, a, b) = (slot / (na * nb), (slot / nb) % na, slot % nb);
        return Err(Error::parse(
            last_line,
            format!("missing transition for ({}, ({}, {}))", states[q], alice_in[a], bob_in[b]),
        ));
    }
    Ok(TransducerDescription {
        states,
        initial,
        accepting,
        alice_in,
        bob_in,
        alice_out,
        bob_out,
        transitions,
    })
}

pub fn parse_transducer(src: &str) -> Result<Sdfst> {
    parse_description(src)?.validate()
}

impl Sdfst {
    /// Canonical text form: every cell in state, Alice-input, Bob-input order.
    pub fn to_text(&self) -> String {
        let mut s = String::from("transducer\n");
        let _ = writeln!(s, "alice_in: {}", self.alice_in.join(" "));
        let _ = writeln!(s, "bob_in: {}", self.bob_in.join(" "));
        let _ = writeln!(s, "alice_out: {}", self.alice_out.join(" "));
        let _ = writeln!(s, "bob_out: {}", self.bob_out.join(" "));
        let _ = writeln!(s, "states: {}", self.states.join(" "));
        let _ = writeln!(s, "initial: {}", self.states[self.initial]);
        let accepting: Vec<&str> = (0..self.states.len())
            .filter(|&q| self.accepting[q])
            .map(|q| self.states[q].as_str())
            .collect();
        let _ = writeln!(s, "accepting: {}", accepting.join(" "));
        for q in 0..self.states.len() {
            for a in 0..self.alice_in.len() {
                for b in 0..self.bob_in.len() {
                    let c = self.cell(q, a, b);
                    let _ = writeln!(
                        s,
                        "{} ({},{}) -> {} ({},{})",
                        self.states[q],
                        self.alice_in[a],
                        self.bob_in[b],
                        self.states[c.next],
                        self.alice_out[c.alice_out],
                        self.bob_out[c.bob_out]
                    );
                }
            }
        }
        s
    }
}
