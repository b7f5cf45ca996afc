use std::collections::VecDeque;

use super::order::{compare_unchecked, LexOutcome};
use super::LetterPoset;
use crate::error::{Error, Result};
use crate::nfa::OrderedNfa;

pub const DEFAULT_WORD_CAP: usize = 4096;

/// All words of length `n` accepted by `a`, in lexicographic order of letter indices.
pub fn enumerate_level(a: &OrderedNfa, n: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    let start = a.initial().to_vec();
    if !start.is_empty() {
        extend(a, &start, n, &mut word, &mut out, cap)?;
    }
    Ok(out)
}

fn extend(
    a: &OrderedNfa,
    set: &[usize],
    remaining: usize,
    word: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if remaining == 0 {
        if set.iter().any(|&q| a.is_accepting(q)) {
            if out.len() >= cap {
                return Err(Error::BudgetExceeded {
                    what: "enumerated words",
                    limit: cap,
                });
            }
            out.push(word.clone());
        }
        return Ok(());
    }
    for x in 0..a.letter_count() {
        let next = a.post(set, x);
        if !next.is_empty() {
            word.push(x);
            extend(a, &next, remaining - 1, word, out, cap)?;
            word.pop();
        }
    }
    Ok(())
}

/// Maximum bipartite matching between two copies of `0..n`, by Hopcroft-Karp.
/// Returns `mate_left[u] = Some(v)` for matched edges `u -> v`.
fn hopcroft_karp(n: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut mate_l: Vec<Option<usize>> = vec![None; n];
    let mut mate_r: Vec<Option<usize>> = vec![None; n];
    loop {
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for u in 0..n {
            if mate_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match mate_r[v] {
                    None => found = true,
                    Some(w) if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            return mate_l;
        }
        for u in 0..n {
            if mate_l[u].is_none() {
                augment(u, adj, &mut dist, &mut mate_l, &mut mate_r);
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    dist: &mut [usize],
    mate_l: &mut [Option<usize>],
    mate_r: &mut [Option<usize>],
) -> bool {
    for &v in &adj[u] {
        let ok = match mate_r[v] {
            None => true,
            Some(w) => dist[w] == dist[u] + 1 && augment(w, adj, dist, mate_l, mate_r),
        };
        if ok {
            mate_l[u] = Some(v);
            mate_r[v] = Some(u);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// A maximum antichain together with a chain cover of the same size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilworthCertificate {
    pub words: Vec<Vec<usize>>,
    /// Indices into `words`.
    pub antichain: Vec<usize>,
    /// Each chain lists indices into `words` in increasing order.
    pub chains: Vec<Vec<usize>>,
}

impl DilworthCertificate {
    pub fn width(&self) -> usize {
        self.antichain.len()
    }

    /// Checks both halves independently: the antichain is pairwise incomparable,
    /// the chains are increasing and partition the words, and the sizes agree.
    pub fn verify(&self, p: &LetterPoset) -> bool {
        let cmp = |i: usize, j: usize| compare_unchecked(&self.words[i], &self.words[j], p);
        let anti_ok = self.antichain.iter().enumerate().all(|(k, &i)| {
            i < self.words.len()
                && self.antichain[k + 1..]
                    .iter()
                    .all(|&j| j < self.words.len() && cmp(i, j) == LexOutcome::Incomparable)
        });
        let mut covered = vec![false; self.words.len()];
        let chains_ok = self.chains.iter().all(|chain| {
            !chain.is_empty()
                && chain.iter().all(|&i| i < covered.len() && !std::mem::replace(&mut covered[i], true))
                && chain.windows(2).all(|w| cmp(w[0], w[1]) == LexOutcome::Less)
        });
        anti_ok && chains_ok && covered.iter().all(|&c| c) && self.chains.len() == self.antichain.len()
    }
}

/// Maximum antichain and minimum chain cover of `words` under the lexicographic
/// order, via matching on the comparability graph and König's theorem.
pub fn dilworth(words: Vec<Vec<usize>>, p: &LetterPoset) -> DilworthCertificate {
    let n = words.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| compare_unchecked(&words[u], &words[v], p) == LexOutcome::Less).collect())
        .collect();
    let mate_l = hopcroft_karp(n, &adj);
    let mut mate_r = vec![None; n];
    for (u, m) in mate_l.iter().enumerate() {
        if let Some(v) = *m {
            mate_r[v] = Some(u);
        }
    }

    // Chains: follow matched edges from every element with no matched predecessor.
    let chains: Vec<Vec<usize>> = (0..n)
        .filter(|&v| mate_r[v].is_none())
        .map(|start| {
            let mut chain = vec![start];
            while let Some(next) = mate_l[*chain.last().expect("non-empty")] {
                chain.push(next);
            }
            chain
        })
        .collect();

    // König: Z = vertices reachable from unmatched left vertices by alternating
    // paths; the cover is (L \ Z) + (R & Z), and elements outside it on both
    // sides form a maximum antichain.
    let mut z_left = vec![false; n];
    let mut z_right = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| mate_l[u].is_none()).collect();
    for &u in &queue {
        z_left[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if mate_l[u] != Some(v) && !z_right[v] {
                z_right[v] = true;
                if let Some(w) = mate_r[v] {
                    if !z_left[w] {
                        z_left[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    let antichain = (0..n).filter(|&x| z_left[x] && !z_right[x]).collect();
    DilworthCertificate {
        words,
        antichain,
        chains,
    }
}

/// The width of the length-`n` slice by exhaustive enumeration, with its certificate.
pub fn width_certificate(a: &OrderedNfa, n: usize, cap: usize) -> Result<DilworthCertificate> {
    Ok(dilworth(enumerate_level(a, n, cap)?, a.poset()))
}

pub fn width_bruteforce(a: &OrderedNfa, n: usize, cap: usize) -> Result<usize> {
    width_certificate(a, n, cap).map(|c| c.width())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn empty_level_has_width_zero() {
        let a = OrderedNfa::new(names(&["p"]), vec![0], vec![], names(&["a"]), vec![], &[(0, 0, 0)]).unwrap();
        let c = width_certificate(&a, 3, 10).unwrap();
        assert_eq!(c.width(), 0);
        assert!(c.verify(a.poset()));
    }

    #[test]
    fn mixed_level_certificate() {
        // all words of length 2 over a < b and an output x
        let a = OrderedNfa::new(
            names(&["p"]),
            vec![0],
            vec![0],
            names(&["a", "b"]),
            names(&["x"]),
            &[(0, 0, 0), (0, 1, 0), (0, 2, 0)],
        )
        .unwrap();
        let c = width_certificate(&a, 2, 100).unwrap();
        assert_eq!(c.words.len(), 9);
        assert!(c.verify(a.poset()));
        // {xx, xa} and {ax, aa}: a and b are comparable wherever they meet
        assert_eq!(c.width(), 4);
    }

    #[test]
    fn chain_language_has_width_one() {
        let a = OrderedNfa::new(names(&["p"]), vec![0], vec![0], names(&["a", "b"]), vec![], &[(0, 0, 0), (0, 1, 0)])
            .unwrap();
        let c = width_certificate(&a, 3, 100).unwrap();
        assert_eq!(c.width(), 1);
        assert_eq!(c.chains.len(), 1);
        assert!(c.verify(a.poset()));
    }

    #[test]
    fn word_cap_is_enforced() {
        let a = OrderedNfa::new(names(&["p"]), vec![0], vec![0], vec![], names(&["x", "y"]), &[(0, 0, 0), (0, 1, 0)])
            .unwrap();
        assert!(matches!(width_bruteforce(&a, 4, 15), Err(Error::BudgetExceeded { .. })));
        assert_eq!(width_bruteforce(&a, 4, 16).unwrap(), 16);
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let a = OrderedNfa::new(names(&["p"]), vec![0], vec![0], names(&["a", "b"]), names(&["x"]), &[(0, 0, 0), (0, 1, 0), (0, 2, 0)])
            .unwrap();
        let mut c = width_certificate(&a, 2, 100).unwrap();
        c.antichain.push(c.chains[0][0]);
        assert!(!c.verify(a.poset()));
    }
}
