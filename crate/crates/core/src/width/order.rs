use std::collections::HashSet;

use crate::error::{Error, Result};

/// A strict partial order on a finite alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterPoset {
    letters: Vec<String>,
    less: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LexOutcome {
    Less,
    Greater,
    Equal,
    Incomparable,
}

fn check_distinct(letters: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in letters {
        if !seen.insert(l.as_str()) {
            return Err(Error::InvalidPoset(format!("letter `{l}` appears twice")));
        }
    }
    Ok(())
}

impl LetterPoset {
    /// `pairs` must already be the full strict order: irreflexive and transitive.
    pub fn new(letters: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        check_distinct(&letters)?;
        let n = letters.len();
        let mut less = vec![false; n * n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::UnknownLetter(x.max(y)));
            }
            if x == y {
                return Err(Error::InvalidPoset(format!("`{}` < `{}` is reflexive", letters[x], letters[y])));
            }
            less[x * n + y] = true;
        }
        let p = LetterPoset { letters, less };
        for x in 0..n {
            for y in 0..n {
                if !p.less(x, y) {
                    continue;
                }
                if p.less(y, x) {
                    return Err(Error::InvalidPoset(format!(
                        "`{}` and `{}` are below each other",
                        p.letters[x], p.letters[y]
                    )));
                }
                for z in 0..n {
                    if p.less(y, z) && !p.less(x, z) {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive: `{}` < `{}` < `{}`",
                            p.letters[x], p.letters[y], p.letters[z]
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    /// The order generated by `pairs`, i.e. their transitive closure. Cycles are rejected.
    pub fn from_generators(letters: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = letters.len();
        let mut less = vec![false; n * n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::UnknownLetter(x.max(y)));
            }
            less[x * n + y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i * n + k] {
                    for j in 0..n {
                        if less[k * n + j] {
                            less[i * n + j] = true;
                        }
                    }
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| less[x * n + x]) {
            return Err(Error::InvalidPoset(format!("cycle through `{}`", letters[x])));
        }
        let closed: Vec<(usize, usize)> = (0..n * n).filter(|&i| less[i]).map(|i| (i / n, i % n)).collect();
        Self::new(letters, &closed)
    }

    pub fn discrete(letters: Vec<String>) -> Result<Self> {
        Self::new(letters, &[])
    }

    /// Inputs linearly ordered as listed, outputs incomparable to everything.
    pub fn observer(inputs: Vec<String>, outputs: Vec<String>) -> Result<Self> {
        let shared: Vec<String> = inputs.iter().filter(|l| outputs.contains(l)).cloned().collect();
        if !shared.is_empty() {
            return Err(Error::AlphabetCollision(shared));
        }
        let s = inputs.len();
        let pairs: Vec<(usize, usize)> = (0..s).flat_map(|x| (x + 1..s).map(move |y| (x, y))).collect();
        let mut letters = inputs;
        letters.extend(outputs);
        Self::new(letters, &pairs)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.less[x * self.len() + y]
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y) || self.less(y, x)
    }

    /// All strict pairs, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n * n).filter(|&i| self.less[i]).map(|i| (i / n, i % n)).collect()
    }

    /// `Some(s)` when letters `0..s` form a chain in index order and the rest are
    /// incomparable to every other letter.
    pub fn observer_split(&self) -> Option<usize> {
        let n = self.len();
        let s = (0..n).find(|&x| (0..n).all(|y| !self.comparable(x, y) || x == y)).unwrap_or(n);
        for x in 0..n {
            for y in 0..n {
                let expected = x < y && y < s;
                if self.less(x, y) != expected {
                    return None;
                }
            }
        }
        Some(s)
    }

    /// Maximal sets of pairwise incomparable letters, each sorted, in lexicographic order.
    pub fn maximal_antichains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let all: Vec<usize> = (0..self.len()).collect();
        self.bron_kerbosch(&mut Vec::new(), all, Vec::new(), &mut out);
        for a in &mut out {
            a.sort_unstable();
        }
        out.sort();
        out
    }

    // Maximal cliques of the incomparability graph.
    fn bron_kerbosch(&self, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            if !r.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let adj = |u: usize, v: usize| u != v && !self.comparable(u, v);
        let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| adj(u, v)).count());
        let (mut p, mut x) = (p, x);
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| pivot.is_none_or(|u| !adj(u, v))).collect();
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&w| adj(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| adj(v, w)).collect();
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
}

/// Compares two words in the lexicographic order induced by `p`: the empty word is
/// below everything, and `xw` vs `yw'` is decided by `x` vs `y` unless `x = y`.
pub fn lex_compare(w1: &[usize], w2: &[usize], p: &LetterPoset) -> Result<LexOutcome> {
    if let Some(&bad) = w1.iter().chain(w2).find(|&&x| x >= p.len()) {
        return Err(Error::UnknownLetter(bad));
    }
    Ok(compare_unchecked(w1, w2, p))
}

pub(crate) fn compare_unchecked(w1: &[usize], w2: &[usize], p: &LetterPoset) -> LexOutcome {
    match w1.iter().zip(w2).find(|(x, y)| x != y) {
        Some((&x, &y)) if p.less(x, y) => LexOutcome::Less,
        Some((&x, &y)) if p.less(y, x) => LexOutcome::Greater,
        Some(_) => LexOutcome::Incomparable,
        None => match w1.len().cmp(&w2.len()) {
            std::cmp::Ordering::Less => LexOutcome::Less,
            std::cmp::Ordering::Greater => LexOutcome::Greater,
            std::cmp::Ordering::Equal => LexOutcome::Equal,
        },
    }
}

/// Whether the words are pairwise incomparable. Repeated words count once.
pub fn is_antichain(ws: &[Vec<usize>], p: &LetterPoset) -> bool {
    ws.iter().enumerate().all(|(i, u)| {
        ws[i + 1..].iter().all(|v| {
            matches!(lex_compare(u, v, p), Ok(LexOutcome::Incomparable | LexOutcome::Equal))
        })
    })
}

/// Whether no two distinct words first differ at a letter below `inputs`.
/// A proper prefix counts as a difference at an input position.
pub fn is_input_deterministic(ws: &[Vec<usize>], inputs: usize) -> bool {
    ws.iter().enumerate().all(|(i, u)| {
        ws[i + 1..].iter().all(|v| match u.iter().zip(v).find(|(x, y)| x != y) {
            Some((&x, &y)) => x >= inputs && y >= inputs,
            None => u.len() == v.len(),
        })
    })
}
