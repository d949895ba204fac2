//! Grid graphs `Γ(m,n)`, vertex sets and the perfect-domination predicate.
//!
//! Columns are indexed by `i ∈ [0,m)` from left to right and rows (levels)
//! by `j ≥ 0` from top to bottom. Row `j = 0` is the side that carries the
//! initial condition.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Widest grid a [`VertexSet`] can hold (one `u64` word per row).
pub const MAX_WIDTH: usize = 64;

/// Height of a grid: a positive row count or an infinite band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Height {
    Finite(usize),
    Infinite,
}

/// Dimensions of `Γ(m,n)`: `m` columns, `n` rows (possibly infinite).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridDims {
    pub m: usize,
    pub n: Height,
}

impl GridDims {
    pub fn finite(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Dimensions(format!("m={m}, n={n}: both must be >= 1")));
        }
        Ok(GridDims { m, n: Height::Finite(n) })
    }

    pub fn band(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Dimensions("band width m must be >= 1".into()));
        }
        Ok(GridDims { m, n: Height::Infinite })
    }

    /// Row count, or `None` for a band graph.
    pub fn rows(&self) -> Option<usize> {
        match self.n {
            Height::Finite(n) => Some(n),
            Height::Infinite => None,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.i < self.m && self.rows().is_none_or(|n| v.j < n)
    }
}

impl fmt::Display for GridDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            Height::Finite(n) => write!(f, "Γ({},{})", self.m, n),
            Height::Infinite => write!(f, "Γ({},∞)", self.m),
        }
    }
}

/// A grid vertex `(i,j)`: column `i`, row `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub i: usize,
    pub j: usize,
}

impl Vertex {
    pub fn new(i: usize, j: usize) -> Self {
        Vertex { i, j }
    }
}

// Row-major: by row, then column.
impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.j, self.i).cmp(&(other.j, other.i))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A vertex subset of a finite grid, stored as one bitmask per row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    m: usize,
    rows: Vec<u64>,
}

impl VertexSet {
    pub fn empty(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m > MAX_WIDTH {
            return Err(Error::Dimensions(format!("width m={m} must lie in [1,{MAX_WIDTH}]")));
        }
        Ok(VertexSet { m, rows: vec![0; n] })
    }

    pub fn from_vertices<I>(m: usize, n: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut set = Self::empty(m, n)?;
        for v in vertices {
            set.insert(v)?;
        }
        Ok(set)
    }

    /// Builds a set from per-row bitmasks (bit `i` = column `i`).
    pub fn from_row_masks(m: usize, rows: Vec<u64>) -> Result<Self> {
        let set = Self::empty(m, 0)?;
        let full = set.full_mask();
        if let Some(bad) = rows.iter().position(|r| r & !full != 0) {
            return Err(Error::Dimensions(format!("row {bad} has bits beyond width {m}")));
        }
        Ok(VertexSet { m, rows })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn dims(&self) -> GridDims {
        GridDims { m: self.m, n: Height::Finite(self.rows.len()) }
    }

    fn full_mask(&self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    pub fn insert(&mut self, v: Vertex) -> Result<()> {
        if v.i >= self.m || v.j >= self.rows.len() {
            return Err(Error::VertexOutOfRange { i: v.i, j: v.j, m: self.m, n: self.rows.len() });
        }
        self.rows[v.j] |= 1 << v.i;
        Ok(())
    }

    /// Membership test; coordinates outside the grid are simply absent.
    pub fn contains(&self, i: isize, j: isize) -> bool {
        if i < 0 || j < 0 || i as usize >= self.m || j as usize >= self.rows.len() {
            return false;
        }
        self.rows[j as usize] >> i & 1 == 1
    }

    pub fn has(&self, v: Vertex) -> bool {
        self.contains(v.i as isize, v.j as isize)
    }

    pub fn row_mask(&self, j: usize) -> u64 {
        self.rows[j]
    }

    pub fn row_masks(&self) -> &[u64] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Columns of row `j` that belong to the set.
    pub fn row_columns(&self, j: usize) -> Vec<usize> {
        (0..self.m).filter(|&i| self.rows[j] >> i & 1 == 1).collect()
    }

    /// Vertices in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(move |(j, &r)| (0..self.m).filter(move |&i| r >> i & 1 == 1).map(move |i| Vertex::new(i, j)))
    }

    /// Number of grid neighbours of `(i,j)` that lie in the set.
    pub fn neighbours_in(&self, i: usize, j: usize) -> usize {
        let (i, j) = (i as isize, j as isize);
        [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)].iter().filter(|&&(a, b)| self.contains(a, b)).count()
    }

    /// Left-right mirror image.
    pub fn mirrored(&self) -> VertexSet {
        let rows = self
            .rows
            .iter()
            .map(|&r| (0..self.m).filter(|&i| r >> i & 1 == 1).fold(0u64, |acc, i| acc | 1 << (self.m - 1 - i)))
            .collect();
        VertexSet { m: self.m, rows }
    }

    /// The first `n` rows.
    pub fn truncated(&self, n: usize) -> VertexSet {
        VertexSet { m: self.m, rows: self.rows[..n.min(self.rows.len())].to_vec() }
    }
}

/// True iff every vertex of `Γ(m,n)` outside `s` has exactly one neighbour in `s`.
pub fn is_pds(s: &VertexSet) -> bool {
    (0..s.n()).all(|j| (0..s.m()).all(|i| s.contains(i as isize, j as isize) || s.neighbours_in(i, j) == 1))
}

/// Like [`is_pds`], but reports the first offending vertex.
pub fn check_pds(s: &VertexSet) -> Result<()> {
    for j in 0..s.n() {
        for i in 0..s.m() {
            if !s.contains(i as isize, j as isize) {
                let c = s.neighbours_in(i, j);
                if c != 1 {
                    return Err(Error::NotPds(format!("vertex ({i},{j}) has {c} neighbours in the set")));
                }
            }
        }
    }
    Ok(())
}

/// Connected components of the induced subgraph, each in row-major order.
pub fn components(s: &VertexSet) -> Vec<Vec<Vertex>> {
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut out = Vec::new();
    for v in s.iter() {
        if !seen.insert(v) {
            continue;
        }
        let mut comp = vec![v];
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            let (i, j) = (u.i as isize, u.j as isize);
            for (a, b) in [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)] {
                if s.contains(a, b) {
                    let w = Vertex::new(a as usize, b as usize);
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Bounding box `(i0, j0, i1, j1)` (inclusive) of a nonempty vertex list.
pub fn bounding_box(vs: &[Vertex]) -> (usize, usize, usize, usize) {
    let i0 = vs.iter().map(|v| v.i).min().unwrap_or(0);
    let i1 = vs.iter().map(|v| v.i).max().unwrap_or(0);
    let j0 = vs.iter().map(|v| v.j).min().unwrap_or(0);
    let j1 = vs.iter().map(|v| v.j).max().unwrap_or(0);
    (i0, j0, i1, j1)
}

/// True iff every induced component fills its bounding box (a `P_r × P_s`).
pub fn components_are_rectangles(s: &VertexSet) -> bool {
    components(s).iter().all(|c| {
        let (i0, j0, i1, j1) = bounding_box(c);
        c.len() == (i1 - i0 + 1) * (j1 - j0 + 1)
    })
}

/// A total perfect code: a PDS whose induced components are single edges.
pub fn is_total_perfect_code(s: &VertexSet) -> bool {
    is_pds(s) && components(s).iter().all(|c| c.len() == 2)
}

/// True iff every induced component is a single vertex.
pub fn is_isolated(s: &VertexSet) -> bool {
    components(s).iter().all(|c| c.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(m: usize, n: usize, vs: &[(usize, usize)]) -> VertexSet {
        VertexSet::from_vertices(m, n, vs.iter().map(|&(i, j)| Vertex::new(i, j))).unwrap()
    }

    #[test]
    fn four_cycle_edge_is_pds() {
        assert!(is_pds(&set(2, 2, &[(0, 0), (0, 1)])));
    }

    #[test]
    fn centre_vertex_does_not_dominate_corners() {
        assert!(!is_pds(&set(3, 3, &[(1, 1)])));
        assert!(check_pds(&set(3, 3, &[(1, 1)])).unwrap_err().to_string().contains("(0,0)"));
    }

    #[test]
    fn rectangles_and_l_shapes() {
        assert!(components_are_rectangles(&set(4, 4, &[(0, 0), (1, 0), (0, 1), (1, 1)])));
        assert!(!components_are_rectangles(&set(4, 4, &[(0, 0), (1, 0), (1, 1)])));
    }

    #[test]
    fn out_of_range_insert_is_rejected() {
        let mut s = VertexSet::empty(3, 2).unwrap();
        assert!(matches!(s.insert(Vertex::new(3, 0)), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(s.insert(Vertex::new(0, 2)), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn iteration_is_row_major() {
        let s = set(3, 2, &[(2, 0), (0, 1), (0, 0)]);
        let v: Vec<_> = s.iter().map(|v| (v.i, v.j)).collect();
        assert_eq!(v, vec![(0, 0), (2, 0), (0, 1)]);
    }

    #[test]
    fn mirror_is_an_involution() {
        let s = set(5, 2, &[(0, 0), (1, 0), (4, 1)]);
        assert_eq!(s.mirrored().row_columns(0), vec![3, 4]);
        assert_eq!(s.mirrored().mirrored(), s);
    }

    #[test]
    fn dims_display() {
        assert_eq!(GridDims::finite(16, 11).unwrap().to_string(), "Γ(16,11)");
        assert_eq!(GridDims::band(5).unwrap().to_string(), "Γ(5,∞)");
        assert!(GridDims::finite(0, 3).is_err());
    }
}
