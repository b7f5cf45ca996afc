//! Text format for channels:
//!
//! ```text
//! channel            # or `ichannel`, or `joint`
//! inputs: x0 x1
//! bob_inputs: b0 b1  # ichannel only
//! outputs: y0 y1
//! prior: 1/2 1/2     # optional, channel only
//! row x0: 1 0        # ichannel rows are `row <x> <x_B>: ...`
//! row x1: 1/2 1/2
//! ```

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Q};
use crate::text::{content_lines, distinct_labels, index_of, FieldReader};

use super::{ChannelMatrix, Distribution, InteractiveChannel, JointDistribution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChannelFile {
    Channel {
        channel: ChannelMatrix,
        prior: Option<Distribution>,
    },
    Interactive(InteractiveChannel),
    Joint(JointDistribution),
}

fn parse_values(line: usize, tokens: &[&str], expected: usize) -> Result<Vec<Q>> {
    if tokens.len() != expected {
        return Err(Error::parse(
            line,
            format!("expected {expected} probabilities, found {}", tokens.len()),
        ));
    }
    tokens
        .iter()
        .map(|t| {
            parse_rational(t).ok_or_else(|| Error::parse(line, format!("`{t}` is not a rational")))
        })
        .collect()
}

/// Attaches the offending line number to a validation failure on a row.
fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    }
}

pub fn parse_channel_file(src: &str) -> Result<ChannelFile> {
    let mut reader = FieldReader::new(content_lines(src));
    let header = reader.header(&["channel", "ichannel", "joint"])?;
    let kind = header.text;
    let (line, toks) = reader.field("inputs")?;
    let inputs = distinct_labels(line, "input", &toks)?;
    let bob_inputs = if kind == "ichannel" {
        let (line, toks) = reader.field("bob_inputs")?;
        distinct_labels(line, "bob input", &toks)?
    } else {
        Vec::new()
    };
    let (line, toks) = reader.field("outputs")?;
    let outputs = distinct_labels(line, "output", &toks)?;
    let prior = match (kind, reader.optional_field("prior")) {
        ("channel", Some((line, toks))) => Some((line, parse_values(line, &toks, inputs.len())?)),
        (_, Some((line, _))) => {
            return Err(Error::parse(line, "`prior:` is only allowed for `channel`"));
        }
        (_, None) => None,
    };

    let width = if kind == "ichannel" { bob_inputs.len() } else { 1 };
    let mut rows: Vec<Option<(usize, Vec<Q>)>> = vec![None; inputs.len() * width];
    let mut last_line = line;
    while let Some(l) = reader.next_line() {
        last_line = l.number;
        let body = l
            .text
            .strip_prefix("row")
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .ok_or_else(|| Error::parse(l.number, format!("expected `row ...:`, found `{}`", l.text)))?;
        let (key, values) = body
            .split_once(':')
            .ok_or_else(|| Error::parse(l.number, "row is missing `:`"))?;
        let key: Vec<&str> = key.split_whitespace().collect();
        let slot = match (kind, key.as_slice()) {
            ("ichannel", [xa, xb]) => {
                let a = index_of(&inputs, xa)
                    .ok_or_else(|| Error::parse(l.number, format!("unknown input `{xa}`")))?;
                let b = index_of(&bob_inputs, xb)
                    .ok_or_else(|| Error::parse(l.number, format!("unknown bob input `{xb}`")))?;
                a * width + b
            }
            ("ichannel", _) => return Err(Error::parse(l.number, "ichannel rows are `row <x> <x_B>:`")),
            (_, [x]) => index_of(&inputs, x)
                .ok_or_else(|| Error::parse(l.number, format!("unknown input `{x}`")))?,
            _ => return Err(Error::parse(l.number, "rows are `row <x>:`")),
        };
        if rows[slot].is_some() {
            return Err(Error::parse(l.number, "duplicate row"));
        }
        let tokens: Vec<&str> = values.split_whitespace().collect();
        rows[slot] = Some((l.number, parse_values(l.number, &tokens, outputs.len())?));
    }
    if let Some(missing) = rows.iter().position(Option::is_none) {
        let name = if kind == "ichannel" {
            format!("{} {}", inputs[missing / width], bob_inputs[missing % width])
        } else {
            inputs[missing].clone()
        };
        return Err(Error::parse(last_line, format!("missing row for `{name}`")));
    }
    let rows: Vec<(usize, Vec<Q>)> = rows.into_iter().flatten().collect();

    match kind {
        "channel" => {
            for (line, row) in &rows {
                ChannelMatrix::new(vec!["x".into()], outputs.clone(), vec![row.clone()])
                    .map_err(|e| at_line(*line, e))?;
            }
            let channel =
                ChannelMatrix::new(inputs.clone(), outputs, rows.into_iter().map(|(_, r)| r).collect())?;
            let prior = prior
                .map(|(line, mass)| Distribution::new(inputs, mass).map_err(|e| at_line(line, e)))
                .transpose()?;
            Ok(ChannelFile::Channel { channel, prior })
        }
        "ichannel" => {
            for (line, row) in &rows {
                InteractiveChannel::from_dense(
                    vec!["a".into()],
                    vec!["b".into()],
                    outputs.clone(),
                    vec![vec![row.clone()]],
                )
                .map_err(|e| at_line(*line, e))?;
            }
            let sparse = rows
                .into_iter()
                .map(|(_, r)| r.into_iter().enumerate().collect())
                .collect();
            Ok(ChannelFile::Interactive(InteractiveChannel::from_sparse(
                inputs, bob_inputs, outputs, sparse,
            )?))
        }
        _ => Ok(ChannelFile::Joint(JointDistribution::new(
            inputs,
            outputs,
            rows.into_iter().map(|(_, r)| r).collect(),
        )?)),
    }
}
