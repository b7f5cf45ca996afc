use std::collections::VecDeque;

use crate::nfa::OrderedNfa;

/// Keeps the states that are reachable and can reach an accepting state.
pub fn trim(a: &OrderedNfa) -> OrderedNfa {
    let reach = a.reachable();
    let coreach = a.coreachable();
    let keep: Vec<bool> = reach.iter().zip(&coreach).map(|(&r, &c)| r && c).collect();
    a.restrict(&keep)
}

/// Strongly connected components, numbered in a topological order of the
/// condensation (edges only go from lower to higher component numbers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    /// A component is nontrivial when it contains a cycle.
    pub nontrivial: Vec<bool>,
    pub successors: Vec<Vec<usize>>,
}

fn adjacency(a: &OrderedNfa) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); a.state_count()];
    for (q, _, t) in a.transitions() {
        adj[q].push(t);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Kosaraju's algorithm with explicit stacks.
pub fn components(a: &OrderedNfa) -> Components {
    let n = a.state_count();
    let adj = adjacency(a);
    let mut rev = vec![Vec::new(); n];
    for (q, targets) in adj.iter().enumerate() {
        for &t in targets {
            rev[t].push(q);
        }
    }

    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (q, next) = *top;
            if let Some(&t) = adj[q].get(next) {
                top.1 += 1;
                if !visited[t] {
                    visited[t] = true;
                    stack.push((t, 0));
                }
            } else {
                order.push(q);
                stack.pop();
            }
        }
    }

    let mut of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for &root in order.iter().rev() {
        if of[root] != usize::MAX {
            continue;
        }
        let c = members.len();
        let mut group = vec![root];
        of[root] = c;
        let mut queue = VecDeque::from([root]);
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if of[p] == usize::MAX {
                    of[p] = c;
                    group.push(p);
                    queue.push_back(p);
                }
            }
        }
        group.sort_unstable();
        members.push(group);
    }

    let nontrivial = members
        .iter()
        .map(|g| g.len() > 1 || adj[g[0]].contains(&g[0]))
        .collect();
    let mut successors = vec![Vec::new(); members.len()];
    for (q, targets) in adj.iter().enumerate() {
        for &t in targets {
            if of[q] != of[t] {
                successors[of[q]].push(of[t]);
            }
        }
    }
    for s in &mut successors {
        s.sort_unstable();
        s.dedup();
    }
    Components {
        of,
        members,
        nontrivial,
        successors,
    }
}

/// A shortest word labelling a path from some source to a state satisfying
/// `target`, preferring lower letters and states on ties.
pub fn shortest_word(a: &OrderedNfa, sources: &[usize], target: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let n = a.state_count();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(q) = queue.pop_front() {
        if target(q) {
            let mut word = Vec::new();
            let mut cur = q;
            while let Some((prev, x)) = parent[cur] {
                word.push(x);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for x in 0..a.letter_count() {
            for &t in a.successors(q, x) {
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, x));
                    queue.push_back(t);
                }
            }
        }
    }
    None
}

/// Whether some path labelled `word` leads from `from` to `to`.
pub fn labels_path(a: &OrderedNfa, from: &[usize], word: &[usize], to: impl Fn(usize) -> bool) -> bool {
    if word.iter().any(|&x| x >= a.letter_count()) || from.iter().any(|&q| q >= a.state_count()) {
        return false;
    }
    let mut set = from.to_vec();
    set.sort_unstable();
    set.dedup();
    for &x in word {
        set = a.post(&set, x);
    }
    set.into_iter().any(to)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn trim_drops_useless_states_only() {
        // p <-> q cycle, r unreachable, s a dead end
        let a = OrderedNfa::new(
            names(&["p", "q", "r", "s"]),
            vec![0],
            vec![1],
            vec![],
            names(&["x"]),
            &[(0, 0, 1), (1, 0, 0), (2, 0, 0), (0, 0, 3)],
        )
        .unwrap();
        let t = trim(&a);
        assert_eq!(t.states(), ["p", "q"]);
        assert_eq!(trim(&t), t);
        let c = components(&t);
        assert_eq!(c.members, vec![vec![0, 1]]);
        assert_eq!(c.nontrivial, vec![true]);
    }

    #[test]
    fn components_are_topologically_numbered() {
        // a -> b -> c, with a self-loop on c
        let a = OrderedNfa::new(
            names(&["a", "b", "c"]),
            vec![0],
            vec![2],
            vec![],
            names(&["x"]),
            &[(0, 0, 1), (1, 0, 2), (2, 0, 2)],
        )
        .unwrap();
        let c = components(&a);
        assert_eq!(c.members, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(c.nontrivial, vec![false, false, true]);
        assert_eq!(c.successors, vec![vec![1], vec![2], vec![]]);
        assert_eq!(shortest_word(&a, &[0], |q| q == 2), Some(vec![0, 0]));
        assert!(labels_path(&a, &[0], &[0, 0, 0], |q| q == 2));
    }

    #[test]
    fn empty_language_trims_to_nothing() {
        let a = OrderedNfa::new(names(&["p"]), vec![0], vec![], vec![], names(&["x"]), &[(0, 0, 0)]).unwrap();
        let t = trim(&a);
        assert_eq!(t.state_count(), 0);
        assert!(t.initial().is_empty());
        assert!(components(&t).members.is_empty());
    }
}
