//! Brute-force reference enumerators, independent of the continuation algorithm.
//!
//! Everything here works on raw row bitmasks and checks the domination
//! condition directly; nothing consults labels or decisions.

use crate::error::{Error, Result};
use crate::grid::VertexSet;
use crate::initial::InitialCondition;

/// Default refusal threshold on `m·n`.
pub const DEFAULT_ORACLE_CAP: usize = 30;

/// Environment variable overriding [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_ENV: &str = "GRIDDOM_MAX_ORACLE";

pub fn oracle_cap() -> usize {
    std::env::var(ORACLE_CAP_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_ORACLE_CAP)
}

/// Restriction on the top row of enumerated sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopRow {
    Unconstrained,
    /// `S ∩ H₀` must equal this column mask.
    Exactly(u64),
}

impl From<&InitialCondition> for TopRow {
    fn from(init: &InitialCondition) -> Self {
        TopRow::Exactly(init.mask())
    }
}

fn full(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Columns of `cur` having exactly one neighbour among `above`, `cur`, `below`.
fn exactly_one(m: usize, above: u64, cur: u64, below: u64) -> u64 {
    let l = (cur << 1) & full(m);
    let r = cur >> 1;
    let odd = above ^ below ^ l ^ r;
    let two = (above & below) | (above & l) | (above & r) | (below & l) | (below & r) | (l & r);
    odd & !two
}

/// Whether every non-member of row `cur` has exactly one neighbour in `S`.
fn row_perfect(m: usize, above: u64, cur: u64, below: u64) -> bool {
    !cur & full(m) & !exactly_one(m, above, cur, below) == 0
}

/// Whether every vertex of row `cur`, member or not, has exactly one neighbour in `S`.
fn row_total(m: usize, above: u64, cur: u64, below: u64) -> bool {
    full(m) & !exactly_one(m, above, cur, below) == 0
}

fn check_cap(m: usize, n: usize, cap: usize) -> Result<()> {
    if m == 0 || n == 0 || m > 63 {
        return Err(Error::Dimensions(format!("{m}x{n}")));
    }
    if m * n > cap {
        return Err(Error::OracleCap { m, n, cap });
    }
    Ok(())
}

/// All PDSs of `Γ(m,n)` matching `top`, in canonical order, using the cap
/// from [`oracle_cap`].
pub fn oracle_enumerate(m: usize, n: usize, top: TopRow) -> Result<Vec<VertexSet>> {
    oracle_enumerate_capped(m, n, top, oracle_cap())
}

/// Row-by-row backtracking: row `j−1` is checked as soon as row `j` is fixed.
pub fn oracle_enumerate_capped(m: usize, n: usize, top: TopRow, cap: usize) -> Result<Vec<VertexSet>> {
    check_cap(m, n, cap)?;
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(n);
    let firsts: Vec<u64> = match top {
        TopRow::Unconstrained => (0..=full(m)).collect(),
        TopRow::Exactly(mask) => vec![mask & full(m)],
    };
    for r0 in firsts {
        rows.push(r0);
        extend(m, n, &mut rows, &mut out, row_perfect);
        rows.pop();
    }
    let mut sets: Vec<VertexSet> =
        out.into_iter().map(|masks| VertexSet::from_row_masks(m, masks).expect("masks fit")).collect();
    sets.sort();
    Ok(sets)
}

type RowCheck = fn(usize, u64, u64, u64) -> bool;

fn extend(m: usize, n: usize, rows: &mut Vec<u64>, out: &mut Vec<Vec<u64>>, ok: RowCheck) {
    let j = rows.len();
    if j == n {
        let above = if n >= 2 { rows[n - 2] } else { 0 };
        if ok(m, above, rows[n - 1], 0) {
            out.push(rows.clone());
        }
        return;
    }
    for next in 0..=full(m) {
        let above = if j >= 2 { rows[j - 2] } else { 0 };
        if ok(m, above, rows[j - 1], next) {
            rows.push(next);
            extend(m, n, rows, out, ok);
            rows.pop();
        }
    }
}

/// Flat scan over all `2^(m·n)` subsets; for cross-checking tiny grids only.
pub fn naive_enumerate(m: usize, n: usize) -> Result<Vec<VertexSet>> {
    check_cap(m, n, 20)?;
    let cells = m * n;
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << cells) {
        let masks: Vec<u64> = (0..n).map(|j| (bits >> (j * m)) & full(m)).collect();
        let s = VertexSet::from_row_masks(m, masks).expect("masks fit");
        if naive_is_pds(&s) {
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}

/// Neighbour counting vertex by vertex.
fn naive_is_pds(s: &VertexSet) -> bool {
    let (m, n) = (s.m() as isize, s.n() as isize);
    for j in 0..n {
        for i in 0..m {
            if s.contains(i, j) {
                continue;
            }
            let c = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)].iter().filter(|&&(a, b)| s.contains(a, b)).count();
            if c != 1 {
                return false;
            }
        }
    }
    true
}

/// All total perfect codes of `Γ(m,n)`, under the same cap as [`oracle_enumerate`].
pub fn oracle_tpcs(m: usize, n: usize) -> Result<Vec<VertexSet>> {
    check_cap(m, n, oracle_cap())?;
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(n);
    for r0 in 0..=full(m) {
        rows.push(r0);
        extend(m, n, &mut rows, &mut out, row_total);
        rows.pop();
    }
    let mut sets: Vec<VertexSet> =
        out.into_iter().map(|masks| VertexSet::from_row_masks(m, masks).expect("masks fit")).collect();
    sets.sort();
    Ok(sets)
}

/// Whether `Γ(m,n)` has a total perfect code, by reachability over
/// consecutive row pairs. Uncapped: the state space is `4^m`.
pub fn tpc_exists(m: usize, n: usize) -> Result<bool> {
    if m == 0 || n == 0 || m > 12 {
        return Err(Error::Dimensions(format!("{m}x{n} (transfer search needs 1 <= m <= 12)")));
    }
    let size = 1usize << m;
    if n == 1 {
        return Ok((0..size as u64).any(|r| row_total(m, 0, r, 0)));
    }
    // reach[a][b]: rows (j−1, j) = (a, b) achievable with rows < j all valid.
    let mut reach = vec![false; size * size];
    for a in 0..size {
        for b in 0..size {
            reach[a * size + b] = row_total(m, 0, a as u64, b as u64);
        }
    }
    for _ in 2..n {
        let mut next = vec![false; size * size];
        for a in 0..size {
            for b in 0..size {
                if !reach[a * size + b] {
                    continue;
                }
                for c in 0..size {
                    if row_total(m, a as u64, b as u64, c as u64) {
                        next[b * size + c] = true;
                    }
                }
            }
        }
        reach = next;
    }
    Ok((0..size).any(|a| (0..size).any(|b| reach[a * size + b] && row_total(m, a as u64, b as u64, 0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{is_pds, is_total_perfect_code, Vertex};

    #[test]
    fn single_vertex_grid() {
        let all = oracle_enumerate(1, 1, TopRow::Unconstrained).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].len(), 1);
    }

    #[test]
    fn backtracking_matches_flat_scan() {
        for m in 1..=4 {
            for n in 1..=4 {
                let a = oracle_enumerate_capped(m, n, TopRow::Unconstrained, 30).unwrap();
                let b = naive_enumerate(m, n).unwrap();
                assert_eq!(a, b, "{m}x{n}");
            }
        }
    }

    #[test]
    fn two_by_two_has_no_empty_solution() {
        let all = oracle_enumerate(2, 2, TopRow::Unconstrained).unwrap();
        assert!(all.iter().all(|s| !s.is_empty()));
        assert!(all.iter().all(is_pds));
        let edge = VertexSet::from_vertices(2, 2, [Vertex::new(0, 0), Vertex::new(0, 1)]).unwrap();
        assert!(all.contains(&edge));
    }

    #[test]
    fn constrained_top_row() {
        let init = InitialCondition::new(4, &[1]).unwrap();
        let sols = oracle_enumerate(4, 4, (&init).into()).unwrap();
        assert!(!sols.is_empty());
        assert!(sols.iter().all(|s| s.row_mask(0) == 0b0010));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            oracle_enumerate_capped(6, 6, TopRow::Unconstrained, 30),
            Err(Error::OracleCap { m: 6, n: 6, cap: 30 })
        );
    }

    #[test]
    fn transfer_search_agrees_with_backtracking() {
        for m in 1..=5 {
            for n in 1..=5 {
                let tpcs = oracle_tpcs(m, n).unwrap();
                assert!(tpcs.iter().all(is_total_perfect_code));
                assert_eq!(tpc_exists(m, n).unwrap(), !tpcs.is_empty(), "{m}x{n}");
            }
        }
    }
}
