//! Explicit bipartite graphs on a fixed bipartition `(X, Y)`.
//!
//! The biadjacency relation is stored row-major with one row per `Y` vertex
//! and one column per `X` vertex. In every serialization `X` vertices carry
//! the global labels `0..k` and `Y` vertices the labels `k..n`, where
//! `k = |X|`.

use serde::Serialize;

use crate::canon::{self, CanonicalForm};
use crate::error::GraphError;

/// A simple bipartite graph with a fixed, ordered bipartition.
///
/// Isolated vertices are real vertices: a graph on `(3, 2)` with no edges
/// still has five vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    x_size: usize,
    y_size: usize,
    /// `cells[y * x_size + x]` is true iff `x -- y` is an edge.
    cells: Vec<bool>,
    edges: usize,
}

/// Per-side degree multisets, each sorted in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeSequence {
    #[serde(rename = "x")]
    pub x_degrees: Vec<usize>,
    #[serde(rename = "y")]
    pub y_degrees: Vec<usize>,
}

impl DegreeSequence {
    /// Sorts both sides in non-increasing order.
    pub fn new(mut x_degrees: Vec<usize>, mut y_degrees: Vec<usize>) -> Self {
        x_degrees.sort_unstable_by(|a, b| b.cmp(a));
        y_degrees.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            x_degrees,
            y_degrees,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.x_degrees.iter().sum()
    }

    /// True when both sides sum to the same total.
    pub fn is_balanced(&self) -> bool {
        self.x_degrees.iter().sum::<usize>() == self.y_degrees.iter().sum::<usize>()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.x_degrees
            .iter()
            .chain(&self.y_degrees)
            .any(|&d| d == 0)
    }

    pub fn sigma2(&self) -> u128 {
        self.x_degrees
            .iter()
            .chain(&self.y_degrees)
            .map(|&d| (d as u128) * (d as u128))
            .sum()
    }
}

impl BipartiteGraph {
    /// The edgeless graph on the bipartition `(x_size, y_size)`.
    pub fn empty(x_size: usize, y_size: usize) -> Result<Self, GraphError> {
        if x_size == 0 || y_size == 0 {
            return Err(GraphError::EmptySide { x_size, y_size });
        }
        let cells = x_size
            .checked_mul(y_size)
            .ok_or(GraphError::TooLarge { x_size, y_size })?;
        Ok(Self {
            x_size,
            y_size,
            cells: vec![false; cells],
            edges: 0,
        })
    }

    /// The complete bipartite graph `K_{x_size, y_size}`.
    pub fn complete(x_size: usize, y_size: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(x_size, y_size)?;
        g.cells.fill(true);
        g.edges = g.cells.len();
        Ok(g)
    }

    /// Builds a graph from side-local `(x, y)` pairs. Duplicate pairs are rejected.
    pub fn from_edges<I>(x_size: usize, y_size: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(x_size, y_size)?;
        for (x, y) in edges {
            if !g.insert_edge(x, y)? {
                return Err(GraphError::DuplicateEdge {
                    u: x,
                    v: x_size + y,
                });
            }
        }
        Ok(g)
    }

    /// Builds a graph from `y_size` rows of `x_size` booleans.
    pub fn from_rows<R>(x_size: usize, rows: &[R]) -> Result<Self, GraphError>
    where
        R: AsRef<[bool]>,
    {
        let mut g = Self::empty(x_size, rows.len())?;
        for (y, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != x_size {
                return Err(GraphError::RowWidth {
                    row: y,
                    expected: x_size,
                    found: row.len(),
                });
            }
            for (x, &bit) in row.iter().enumerate() {
                if bit {
                    g.insert_edge(x, y)?;
                }
            }
        }
        Ok(g)
    }

    /// Adds `x -- y`; returns false if the edge was already present.
    pub fn insert_edge(&mut self, x: usize, y: usize) -> Result<bool, GraphError> {
        let idx = self.cell(x, y)?;
        let added = !self.cells[idx];
        self.cells[idx] = true;
        self.edges += usize::from(added);
        Ok(added)
    }

    /// Removes `x -- y`; returns false if the edge was absent.
    pub fn remove_edge(&mut self, x: usize, y: usize) -> Result<bool, GraphError> {
        let idx = self.cell(x, y)?;
        let removed = self.cells[idx];
        self.cells[idx] = false;
        self.edges -= usize::from(removed);
        Ok(removed)
    }

    fn cell(&self, x: usize, y: usize) -> Result<usize, GraphError> {
        if x >= self.x_size || y >= self.y_size {
            return Err(GraphError::VertexOutOfRange {
                x,
                y,
                x_size: self.x_size,
                y_size: self.y_size,
            });
        }
        Ok(y * self.x_size + x)
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.x_size && y < self.y_size && self.cells[y * self.x_size + x]
    }

    /// `|X|`, the `k` of the bipartition.
    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn n(&self) -> usize {
        self.x_size + self.y_size
    }

    pub fn m(&self) -> usize {
        self.edges
    }

    /// The `Y`-row of the biadjacency relation, indexed by `X` column.
    pub fn row(&self, y: usize) -> &[bool] {
        &self.cells[y * self.x_size..(y + 1) * self.x_size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> {
        self.cells.chunks(self.x_size)
    }

    /// Edges as side-local `(x, y)` pairs, sorted by `x` then `y`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.x_size)
            .flat_map(|x| (0..self.y_size).map(move |y| (x, y)))
            .filter(|&(x, y)| self.cells[y * self.x_size + x])
            .collect()
    }

    pub fn x_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.x_size];
        for row in self.rows() {
            for (d, &bit) in deg.iter_mut().zip(row) {
                *d += usize::from(bit);
            }
        }
        deg
    }

    pub fn y_degrees(&self) -> Vec<usize> {
        self.rows()
            .map(|row| row.iter().filter(|&&b| b).count())
            .collect()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.x_degrees(), self.y_degrees())
    }

    /// `Σ_v d(v)^t` over all `n` vertices, for `t ≥ 2`.
    pub fn sigma_t(&self, t: u32) -> Result<u128, GraphError> {
        if t < 2 {
            return Err(GraphError::InvalidExponent(t));
        }
        self.x_degrees()
            .into_iter()
            .chain(self.y_degrees())
            .try_fold(0u128, |acc, d| {
                (d as u128)
                    .checked_pow(t)
                    .and_then(|p| acc.checked_add(p))
                    .ok_or(GraphError::Overflow { t })
            })
    }

    /// Shorthand for `sigma_t(2)`, which cannot fail.
    pub fn sigma2(&self) -> u128 {
        self.degree_sequence().sigma2()
    }

    /// The bipartite complement: same bipartition, `x -- y` present iff absent here.
    pub fn complement(&self) -> Self {
        Self {
            x_size: self.x_size,
            y_size: self.y_size,
            cells: self.cells.iter().map(|&b| !b).collect(),
            edges: self.cells.len() - self.edges,
        }
    }

    /// Exchanges the roles of `X` and `Y`.
    pub fn swap_sides(&self) -> Self {
        let mut cells = vec![false; self.cells.len()];
        for y in 0..self.y_size {
            for x in 0..self.x_size {
                cells[x * self.y_size + y] = self.cells[y * self.x_size + x];
            }
        }
        Self {
            x_size: self.y_size,
            y_size: self.x_size,
            cells,
            edges: self.edges,
        }
    }

    /// Relabels vertices: old `X` vertex `i` becomes `x_perm[i]`, old `Y`
    /// vertex `j` becomes `y_perm[j]`.
    pub fn relabel(&self, x_perm: &[usize], y_perm: &[usize]) -> Result<Self, GraphError> {
        if !is_permutation(x_perm, self.x_size) || !is_permutation(y_perm, self.y_size) {
            return Err(GraphError::InvalidPermutation);
        }
        let mut out = Self::empty(self.x_size, self.y_size)?;
        for (x, y) in self.edges() {
            out.insert_edge(x_perm[x], y_perm[y])?;
        }
        Ok(out)
    }

    /// Isomorphism-invariant encoding; see [`crate::canon`].
    pub fn canonical_form(&self) -> Result<CanonicalForm, GraphError> {
        canon::canonical_form(self)
    }
}

fn is_permutation(perm: &[usize], len: usize) -> bool {
    if perm.len() != len {
        return false;
    }
    let mut seen = vec![false; len];
    perm.iter()
        .all(|&p| p < len && !std::mem::replace(&mut seen[p], true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k24() -> BipartiteGraph {
        BipartiteGraph::complete(2, 4).unwrap()
    }

    #[test]
    fn sigma_of_complete_and_empty() {
        assert_eq!(k24().sigma_t(2).unwrap(), 48);
        let empty = BipartiteGraph::empty(2, 3).unwrap();
        assert_eq!(empty.sigma_t(2).unwrap(), 0);
        assert_eq!(k24().sigma_t(3).unwrap(), 2 * 64 + 4 * 8);
    }

    #[test]
    fn exponent_below_two_is_rejected() {
        assert_eq!(k24().sigma_t(1), Err(GraphError::InvalidExponent(1)));
        assert_eq!(k24().sigma_t(0), Err(GraphError::InvalidExponent(0)));
    }

    #[test]
    fn sigma_overflow_is_reported() {
        let g = BipartiteGraph::complete(1, 3).unwrap();
        assert_eq!(g.sigma_t(200), Err(GraphError::Overflow { t: 200 }));
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let c = k24().complement();
        assert_eq!(c.m(), 0);
        assert_eq!((c.x_size(), c.y_size()), (2, 4));
        let full = BipartiteGraph::empty(3, 3).unwrap().complement();
        assert_eq!(full, BipartiteGraph::complete(3, 3).unwrap());
    }

    #[test]
    fn degree_sequences() {
        let ds = k24().degree_sequence();
        assert_eq!(ds.x_degrees, vec![4, 4]);
        assert_eq!(ds.y_degrees, vec![2, 2, 2, 2]);
        let empty = BipartiteGraph::empty(3, 2).unwrap().degree_sequence();
        assert_eq!(empty.x_degrees, vec![0, 0, 0]);
        assert_eq!(empty.y_degrees, vec![0, 0]);
        assert!(empty.has_isolated_vertex());
    }

    #[test]
    fn rejects_empty_side_and_bad_vertices() {
        assert!(matches!(
            BipartiteGraph::empty(0, 3),
            Err(GraphError::EmptySide { .. })
        ));
        assert!(matches!(
            BipartiteGraph::from_edges(2, 2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            BipartiteGraph::from_edges(2, 2, [(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge { u: 0, v: 3 })
        ));
    }

    #[test]
    fn swap_and_relabel_preserve_degrees() {
        let g = BipartiteGraph::from_edges(3, 2, [(0, 0), (1, 0), (2, 0), (0, 1)]).unwrap();
        let s = g.swap_sides();
        assert_eq!(s.x_degrees(), g.y_degrees());
        assert_eq!(s.swap_sides(), g);
        let r = g.relabel(&[2, 0, 1], &[1, 0]).unwrap();
        assert!(r.has_edge(2, 1) && r.has_edge(2, 0));
        assert_eq!(r.m(), 4);
        assert!(g.relabel(&[0, 0, 1], &[0, 1]).is_err());
    }
}
