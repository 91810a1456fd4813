//! Exact canonical forms for small bipartite graphs.
//!
//! Two graphs receive the same [`CanonicalForm`] iff they are isomorphic as
//! abstract graphs. A graph is the disjoint union of its isolated vertices
//! and its nontrivial connected components, and a connected bipartite graph
//! has a unique bipartition up to exchanging sides. The form is therefore
//! the isolated-vertex count followed by the sorted component codes, where a
//! component code is the lexicographically least encoding over both side
//! orientations and all column orders that list columns by non-increasing
//! degree.
//!
//! Columns are always taken from the smaller side, so with `n <= 12` at most
//! `6!` column orders are examined per orientation.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::GraphError;
use crate::graph::BipartiteGraph;

/// Largest vertex count accepted by [`canonical_form`].
pub const MAX_CANONICAL_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u64>);

impl CanonicalForm {
    pub fn as_words(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{w:x}")?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn canonical_form(g: &BipartiteGraph) -> Result<CanonicalForm, GraphError> {
    let n = g.n();
    if n > MAX_CANONICAL_N {
        return Err(GraphError::CanonicalSizeBound {
            n,
            max: MAX_CANONICAL_N,
        });
    }

    let (components, isolated) = components(g);
    let mut codes: Vec<Vec<u64>> = components
        .iter()
        .map(|(xs, ys)| component_code(g, xs, ys))
        .collect();
    codes.sort_unstable();

    let mut words = vec![n as u64, isolated as u64, codes.len() as u64];
    for code in codes {
        words.extend(code);
    }
    Ok(CanonicalForm(words))
}

/// Side-local `(X, Y)` vertex lists of one component.
type Component = (Vec<usize>, Vec<usize>);

/// Nontrivial connected components, plus the number of isolated vertices.
fn components(g: &BipartiteGraph) -> (Vec<Component>, usize) {
    let k = g.x_size();
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut isolated = 0;

    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        while let Some(v) = stack.pop() {
            if v < k {
                xs.push(v);
                for y in 0..g.y_size() {
                    if g.has_edge(v, y) && !seen[k + y] {
                        seen[k + y] = true;
                        stack.push(k + y);
                    }
                }
            } else {
                let y = v - k;
                ys.push(y);
                for (x, s) in seen[..k].iter_mut().enumerate() {
                    if !*s && g.has_edge(x, y) {
                        *s = true;
                        stack.push(x);
                    }
                }
            }
        }
        if xs.len() + ys.len() == 1 {
            isolated += 1;
        } else {
            out.push((xs, ys));
        }
    }
    (out, isolated)
}

fn component_code(g: &BipartiteGraph, xs: &[usize], ys: &[usize]) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    if xs.len() <= ys.len() {
        let adj = |c: usize, r: usize| g.has_edge(xs[c], ys[r]);
        best = Some(oriented_code(xs.len(), ys.len(), adj));
    }
    if ys.len() <= xs.len() {
        let adj = |c: usize, r: usize| g.has_edge(xs[r], ys[c]);
        let code = oriented_code(ys.len(), xs.len(), adj);
        best = Some(match best {
            Some(b) if b <= code => b,
            _ => code,
        });
    }
    best.expect("one orientation always applies")
}

/// Least `[cols, rows, sorted row masks...]` over degree-respecting column orders.
fn oriented_code(cols: usize, rows: usize, adj: impl Fn(usize, usize) -> bool) -> Vec<u64> {
    let degree = |c: usize| (0..rows).filter(|&r| adj(c, r)).count();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(degree(c)), c));

    // Maximal runs of equal degree; only orders within a run are tried.
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=cols {
        if i == cols || degree(order[i]) != degree(order[start]) {
            groups.push(start..i);
            start = i;
        }
    }

    let mut best: Option<Vec<u64>> = None;
    let mut masks = vec![0u64; rows];
    loop {
        for (r, mask) in masks.iter_mut().enumerate() {
            *mask = order
                .iter()
                .enumerate()
                .filter(|&(_, &c)| adj(c, r))
                .fold(0, |acc, (bit, _)| acc | (1 << (cols - 1 - bit)));
        }
        masks.sort_unstable_by(|a, b| b.cmp(a));
        let better = match &best {
            None => true,
            Some(b) => masks.as_slice() < &b[2..],
        };
        if better {
            let mut code = Vec::with_capacity(rows + 2);
            code.push(cols as u64);
            code.push(rows as u64);
            code.extend_from_slice(&masks);
            best = Some(code);
        }

        // Odometer over the per-group permutations.
        let mut advanced = false;
        for group in &groups {
            if next_permutation(&mut order[group.clone()]) {
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    best.expect("at least one column order")
}

/// Advances to the next lexicographic permutation; on wrap-around resets to
/// ascending order and returns false.
fn next_permutation(s: &mut [usize]) -> bool {
    if s.len() < 2 {
        return false;
    }
    let mut i = s.len() - 1;
    while i > 0 && s[i - 1] >= s[i] {
        i -= 1;
    }
    if i == 0 {
        s.reverse();
        return false;
    }
    let mut j = s.len() - 1;
    while s[j] <= s[i - 1] {
        j -= 1;
    }
    s.swap(i - 1, j);
    s[i..].reverse();
    true
}
