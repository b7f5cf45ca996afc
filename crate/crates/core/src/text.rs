//! Helpers shared by the line-oriented file formats.

use crate::error::{Error, Result};

/// A non-blank line with its `#` comment stripped, tagged with its 1-based number.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
}

pub(crate) fn content_lines(src: &str) -> impl Iterator<Item = Line<'_>> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let text = raw.split('#').next().unwrap_or("").trim();
        (!text.is_empty()).then_some(Line { number: i + 1, text })
    })
}

impl<'a> Line<'a> {
    /// Splits `key: a b c` into the value tokens if the key matches.
    pub fn field(&self, key: &str) -> Option<Vec<&'a str>> {
        let rest = self.text.strip_prefix(key)?.trim_start();
        let rest = rest.strip_prefix(':')?;
        Some(rest.split_whitespace().collect())
    }

    pub fn expect_field(&self, key: &str) -> Result<Vec<&'a str>> {
        self.field(key)
            .ok_or_else(|| Error::parse(self.number, format!("expected `{key}: ...`")))
    }
}

/// Reads a header line followed by `key: ...` fields in a fixed order.
pub(crate) struct FieldReader<'a, I: Iterator<Item = Line<'a>>> {
    lines: std::iter::Peekable<I>,
    last_line: usize,
}

impl<'a, I: Iterator<Item = Line<'a>>> FieldReader<'a, I> {
    pub fn new(lines: I) -> Self {
        FieldReader {
            lines: lines.peekable(),
            last_line: 0,
        }
    }

    pub fn next_line(&mut self) -> Option<Line<'a>> {
        let line = self.lines.next()?;
        self.last_line = line.number;
        Some(line)
    }

    pub fn peek(&mut self) -> Option<&Line<'a>> {
        self.lines.peek()
    }

    pub fn header(&mut self, expected: &[&str]) -> Result<Line<'a>> {
        match self.next_line() {
            Some(line) if expected.contains(&line.text) => Ok(line),
            Some(line) => Err(Error::parse(
                line.number,
                format!("expected header {}, found `{}`", expected.join(" or "), line.text),
            )),
            None => Err(Error::parse(1, "empty input")),
        }
    }

    pub fn field(&mut self, key: &str) -> Result<(usize, Vec<&'a str>)> {
        let line = self
            .next_line()
            .ok_or_else(|| Error::parse(self.last_line + 1, format!("missing `{key}:` line")))?;
        Ok((line.number, line.expect_field(key)?))
    }

    /// Like [`field`](Self::field) but only consumes the line when the key matches.
    pub fn optional_field(&mut self, key: &str) -> Option<(usize, Vec<&'a str>)> {
        let values = self.peek().and_then(|l| l.field(key))?;
        let number = self.next_line().map(|l| l.number).unwrap_or(0);
        Some((number, values))
    }
}

/// Checks that the tokens of a label list are distinct and returns them owned.
pub(crate) fn distinct_labels(line: usize, what: &str, tokens: &[&str]) -> Result<Vec<String>> {
    let mut seen = std::collections::HashSet::new();
    for t in tokens {
        if !seen.insert(*t) {
            return Err(Error::parse(line, format!("duplicate {what} `{t}`")));
        }
    }
    Ok(tokens.iter().map(|s| s.to_string()).collect())
}

pub(crate) fn index_of(labels: &[String], token: &str) -> Option<usize> {
    labels.iter().position(|l| l == token)
}
