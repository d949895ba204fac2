//! Codification of a finished PDS as an array of room and ladder sizes.
//!
//! The grid is framed by one extra vertex on every side (`Γ′`), and each unit
//! square of the frame is a cell. Cells are addressed by their top-left
//! corner `(cx, cy)` with `cx ∈ [−1, m)` and `cy ∈ [−1, n)`. A cell is good
//! when one of its corners is in `S` and bad otherwise. Good cells gather
//! into rooms (one per component of `S`), bad cells into ladders.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{bounding_box, check_pds, components, VertexSet};
use crate::label::{LabelRow, BELOW, LEFT_OF, MEMBER, RIGHT_OF, ZERO};

/// Label given to vertices of the frame.
pub const BOUNDARY: u8 = 5;

/// The neighbour-direction labelling of a PDS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionLabeling {
    pub m: usize,
    pub n: usize,
    pub rows: Vec<LabelRow>,
}

impl DirectionLabeling {
    /// Label at `(i, j)`, or [`BOUNDARY`] off the grid.
    pub fn get(&self, i: isize, j: isize) -> u8 {
        if i < 0 || j < 0 || i >= self.m as isize || j >= self.n as isize {
            BOUNDARY
        } else {
            self.rows[j as usize].get(i as usize)
        }
    }

    pub fn words(&self) -> Vec<String> {
        self.rows.iter().map(LabelRow::word).collect()
    }
}

/// Labels each vertex by where its dominator lies: `0` below, `1` right,
/// `2` itself, `3` left, `4` above.
pub fn direction_labels(s: &VertexSet) -> Result<DirectionLabeling> {
    check_pds(s)?;
    let (m, n) = (s.m(), s.n());
    let rows = (0..n)
        .map(|j| {
            let labels = (0..m)
                .map(|i| {
                    let (i, j) = (i as isize, j as isize);
                    if s.contains(i, j) {
                        MEMBER
                    } else if s.contains(i, j + 1) {
                        ZERO
                    } else if s.contains(i + 1, j) {
                        LEFT_OF
                    } else if s.contains(i - 1, j) {
                        RIGHT_OF
                    } else {
                        BELOW
                    }
                })
                .collect();
            LabelRow::new(j, labels).expect("labels in range")
        })
        .collect();
    Ok(DirectionLabeling { m, n, rows })
}

/// Interior squares with at least one `2`, written top pair then bottom pair.
pub const GOOD_SQUARES: [&str; 13] =
    ["0022", "0123", "0423", "1204", "1212", "1234", "2222", "2244", "2323", "2340", "2341", "3012", "4012"];

/// Interior squares without a `2`: every top pair in `{31,34,41,44}` over
/// every bottom pair in `{00,01,30,31}`. The printed list has thirteen of
/// these sixteen (one of them twice); the other three, `34/00`, `34/01` and
/// `34/31`, occur in ordinary PDSs as small as `Γ(3,4)`.
pub const BAD_SQUARES: [&str; 16] = [
    "3100", "3101", "3130", "3131", "3400", "3401", "3430", "3431", "4100", "4101", "4130", "4131", "4400", "4401",
    "4430", "4431",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellClass {
    Good,
    Bad,
}

/// Good/bad classification of every cell of `Γ′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMap {
    pub m: usize,
    pub n: usize,
    cells: Vec<CellClass>,
}

impl CellMap {
    pub fn get(&self, cx: isize, cy: isize) -> CellClass {
        self.cells[((cy + 1) as usize) * (self.m + 1) + (cx + 1) as usize]
    }

    pub fn count(&self, class: CellClass) -> usize {
        self.cells.iter().filter(|&&c| c == class).count()
    }
}

/// The four labels of cell `(cx, cy)` as `top-left, top-right, bottom-left, bottom-right`.
pub fn square(lab: &DirectionLabeling, cx: isize, cy: isize) -> [u8; 4] {
    [lab.get(cx, cy), lab.get(cx + 1, cy), lab.get(cx, cy + 1), lab.get(cx + 1, cy + 1)]
}

fn square_key(q: [u8; 4]) -> String {
    q.iter().map(|&d| char::from(b'0' + d)).collect()
}

pub fn classify_4cycles(lab: &DirectionLabeling) -> Result<CellMap> {
    let (m, n) = (lab.m as isize, lab.n as isize);
    let mut cells = Vec::with_capacity(((m + 1) * (n + 1)) as usize);
    for cy in -1..n {
        for cx in -1..m {
            let q = square(lab, cx, cy);
            let class = if q.contains(&BOUNDARY) {
                if q.contains(&MEMBER) {
                    CellClass::Good
                } else {
                    CellClass::Bad
                }
            } else {
                let key = square_key(q);
                if GOOD_SQUARES.contains(&key.as_str()) {
                    CellClass::Good
                } else if BAD_SQUARES.contains(&key.as_str()) {
                    CellClass::Bad
                } else {
                    return Err(Error::Integrity(format!(
                        "square {}/{} at cell ({cx},{cy}) is in neither table",
                        &key[..2],
                        &key[2..]
                    )));
                }
            };
            cells.push(class);
        }
    }
    Ok(CellMap { m: lab.m, n: lab.n, cells })
}

/// An axis-aligned block of cells, inclusive of `x0,y0`, `w × h` cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rect {
    pub x0: isize,
    pub y0: isize,
    pub w: usize,
    pub h: usize,
}

impl Rect {
    pub fn x1(&self) -> isize {
        self.x0 + self.w as isize - 1
    }

    pub fn y1(&self) -> isize {
        self.y0 + self.h as isize - 1
    }

    pub fn contains(&self, cx: isize, cy: isize) -> bool {
        (self.x0..=self.x1()).contains(&cx) && (self.y0..=self.y1()).contains(&cy)
    }

    fn overlaps_rows(&self, other: &Rect) -> bool {
        self.y0 <= other.y1() && other.y0 <= self.y1()
    }

    fn overlaps_cols(&self, other: &Rect) -> bool {
        self.x0 <= other.x1() && other.x0 <= self.x1()
    }
}

/// `ℓ`, `ℓ+1` or `ℓ+2` for a side touching zero, one or both boundary paths.
pub fn extended_length(inner: usize, touched_sides: usize) -> usize {
    inner + touched_sides
}

/// Extended width and height of a cell block of `Γ′(m,n)`.
pub fn extended_lengths(rect: &Rect, m: usize, n: usize) -> (usize, usize) {
    let (m, n) = (m as isize, n as isize);
    let touch = |lo: isize, hi: isize, top: isize| usize::from(lo == -1) + usize::from(hi == top - 1);
    let inner = |lo: isize, hi: isize, top: isize| (hi.min(top - 2) - lo.max(0) + 1).max(0) as usize;
    (
        extended_length(inner(rect.x0, rect.x1(), m), touch(rect.x0, rect.x1(), m)),
        extended_length(inner(rect.y0, rect.y1(), n), touch(rect.y0, rect.y1(), n)),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PieceKind {
    Room,
    Ladder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub kind: PieceKind,
    pub rect: Rect,
}

/// The rooms and ladders of a PDS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoomsAndLadders {
    pub m: usize,
    pub n: usize,
    pub rooms: Vec<Rect>,
    pub ladders: Vec<Rect>,
}

impl RoomsAndLadders {
    pub fn pieces(&self) -> Vec<Piece> {
        let rooms = self.rooms.iter().map(|&rect| Piece { kind: PieceKind::Room, rect });
        let ladders = self.ladders.iter().map(|&rect| Piece { kind: PieceKind::Ladder, rect });
        rooms.chain(ladders).collect()
    }
}

/// Rooms from the components of `S`, ladders from the bad cells; checks that
/// both partitions are exact and rectangular.
pub fn decompose(s: &VertexSet) -> Result<RoomsAndLadders> {
    let lab = direction_labels(s)?;
    let map = classify_4cycles(&lab)?;
    let (m, n) = (s.m(), s.n());

    let mut rooms: Vec<Rect> = components(s)
        .iter()
        .map(|c| {
            let (i0, j0, i1, j1) = bounding_box(c);
            Rect { x0: i0 as isize - 1, y0: j0 as isize - 1, w: i1 - i0 + 2, h: j1 - j0 + 2 }
        })
        .collect();
    rooms.sort();

    let (w, h) = (m + 1, n + 1);
    let idx = |cx: isize, cy: isize| ((cy + 1) as usize) * w + (cx + 1) as usize;
    let mut owner = vec![usize::MAX; w * h];
    for (k, r) in rooms.iter().enumerate() {
        for cy in r.y0..=r.y1() {
            for cx in r.x0..=r.x1() {
                if owner[idx(cx, cy)] != usize::MAX {
                    return Err(Error::Integrity(format!("rooms overlap at cell ({cx},{cy})")));
                }
                if map.get(cx, cy) != CellClass::Good {
                    return Err(Error::Integrity(format!("room cell ({cx},{cy}) is bad")));
                }
                owner[idx(cx, cy)] = k;
            }
        }
    }
    if rooms.iter().map(|r| r.w * r.h).sum::<usize>() != map.count(CellClass::Good) {
        return Err(Error::Integrity("good cells outside every room".into()));
    }

    let mut ladders = Vec::new();
    let mut seen = vec![false; w * h];
    for cy in -1..n as isize {
        for cx in -1..m as isize {
            if map.get(cx, cy) != CellClass::Bad || seen[idx(cx, cy)] {
                continue;
            }
            let mut stack = vec![(cx, cy)];
            seen[idx(cx, cy)] = true;
            let mut cells = Vec::new();
            while let Some((x, y)) = stack.pop() {
                cells.push((x, y));
                for (a, b) in [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)] {
                    if a >= -1
                        && b >= -1
                        && a < m as isize
                        && b < n as isize
                        && map.get(a, b) == CellClass::Bad
                        && !seen[idx(a, b)]
                    {
                        seen[idx(a, b)] = true;
                        stack.push((a, b));
                    }
                }
            }
            let x0 = cells.iter().map(|c| c.0).min().expect("nonempty");
            let x1 = cells.iter().map(|c| c.0).max().expect("nonempty");
            let y0 = cells.iter().map(|c| c.1).min().expect("nonempty");
            let y1 = cells.iter().map(|c| c.1).max().expect("nonempty");
            let rect = Rect { x0, y0, w: (x1 - x0 + 1) as usize, h: (y1 - y0 + 1) as usize };
            if rect.w * rect.h != cells.len() {
                return Err(Error::Integrity(format!("ladder at cell ({x0},{y0}) is not a rectangle")));
            }
            ladders.push(rect);
        }
    }
    ladders.sort();
    Ok(RoomsAndLadders { m, n, rooms, ladders })
}

/// An array of `(width, height)` pairs; `entries[row][col]`, rows running
/// down the grid. `r` counts columns and `s` rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PdsArray {
    pub delta: u8,
    pub entries: Vec<Vec<(usize, usize)>>,
}

impl PdsArray {
    /// Builds an array from rectangular entries; `δ` is read off the
    /// top-left entry (`0` when it is a ladder).
    pub fn new(entries: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let r = entries.first().map_or(0, Vec::len);
        if r == 0 || entries.iter().any(|row| row.len() != r) {
            return Err(Error::Parse("array rows must be nonempty and of equal length".into()));
        }
        let (a, b) = entries[0][0];
        let delta = if a.min(b) == 1 { 0 } else { 1 };
        Ok(PdsArray { delta, entries })
    }

    /// Parses rows separated by `/` or newlines, entries `ab` (single
    /// digits) or `a,b`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .split(['/', '\n'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| line.split_whitespace().map(parse_pair).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PdsArray::new(rows)
    }

    pub fn r(&self) -> usize {
        self.entries[0].len()
    }

    pub fn s(&self) -> usize {
        self.entries.len()
    }

    pub fn is_ladder(&self, row: usize, col: usize) -> bool {
        let (a, b) = self.entries[row][col];
        a.min(b) == 1
    }

    pub fn to_json(&self, m: usize, n: usize) -> ArrayJson {
        ArrayJson {
            m,
            n,
            r: self.r(),
            s: self.s(),
            delta: self.delta,
            entries: self.entries.iter().map(|row| row.iter().map(|&(a, b)| [a, b]).collect()).collect(),
        }
    }

    pub fn from_json(json: &ArrayJson) -> Result<Self> {
        let arr = PdsArray::new(json.entries.iter().map(|row| row.iter().map(|&[a, b]| (a, b)).collect()).collect())?;
        if arr.delta != json.delta || arr.r() != json.r || arr.s() != json.s {
            return Err(Error::Parse("array header disagrees with its entries".into()));
        }
        Ok(arr)
    }
}

fn parse_pair(tok: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("array entry {tok:?}"));
    let (a, b) = match tok.split_once(',') {
        Some((a, b)) => (a, b),
        None if tok.len() == 2 && tok.is_ascii() => tok.split_at(1),
        None => return Err(bad()),
    };
    let a = a.trim_start_matches('(').parse().map_err(|_| bad())?;
    let b = b.trim_end_matches(')').parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

impl fmt::Display for PdsArray {
    /// Space-separated `ab` pairs, one array row per line; pairs with a
    /// two-digit member print as `(a,b)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row
                .iter()
                .map(|&(a, b)| if a < 10 && b < 10 { format!("{a}{b}") } else { format!("({a},{b})") })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayJson {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub delta: u8,
    pub entries: Vec<Vec<[usize; 2]>>,
}

/// Links the pieces into array rows (left to right) and columns (top to
/// bottom) through their unique neighbours and checks the two agree.
pub fn arrange(dec: &RoomsAndLadders) -> Result<Vec<Vec<Piece>>> {
    let pieces = dec.pieces();
    let (m, n) = (dec.m as isize, dec.n as isize);
    let right_of = |p: &Piece| -> Result<Option<Piece>> {
        if p.rect.x1() == m - 1 {
            return Ok(None);
        }
        let next: Vec<&Piece> = pieces
            .iter()
            .filter(|q| q.kind != p.kind && q.rect.x0 == p.rect.x1() + 1 && q.rect.overlaps_rows(&p.rect))
            .collect();
        match next.as_slice() {
            [q] => Ok(Some(**q)),
            _ => Err(Error::Integrity(format!("{:?} has {} right neighbours", p.rect, next.len()))),
        }
    };
    let below = |p: &Piece| -> Result<Option<Piece>> {
        if p.rect.y1() == n - 1 {
            return Ok(None);
        }
        let next: Vec<&Piece> = pieces
            .iter()
            .filter(|q| q.kind != p.kind && q.rect.y0 == p.rect.y1() + 1 && q.rect.overlaps_cols(&p.rect))
            .collect();
        match next.as_slice() {
            [q] => Ok(Some(**q)),
            _ => Err(Error::Integrity(format!("{:?} has {} lower neighbours", p.rect, next.len()))),
        }
    };

    let mut starts: Vec<Piece> = pieces.iter().filter(|p| p.rect.x0 == -1).copied().collect();
    starts.sort_by_key(|p| p.rect.y0);
    let mut rows = Vec::new();
    for start in starts {
        let mut row = vec![start];
        let mut cur = start;
        while let Some(next) = right_of(&cur)? {
            row.push(next);
            cur = next;
        }
        rows.push(row);
    }

    let mut tops: Vec<Piece> = pieces.iter().filter(|p| p.rect.y0 == -1).copied().collect();
    tops.sort_by_key(|p| p.rect.x0);
    let mut cols = Vec::new();
    for top in tops {
        let mut col = vec![top];
        let mut cur = top;
        while let Some(next) = below(&cur)? {
            col.push(next);
            cur = next;
        }
        cols.push(col);
    }

    let consistent = rows.iter().all(|r| r.len() == cols.len())
        && cols.iter().all(|c| c.len() == rows.len())
        && rows.iter().enumerate().all(|(y, r)| r.iter().enumerate().all(|(x, p)| cols[x][y] == *p));
    if !consistent {
        return Err(Error::Integrity("row and column chains of rooms and ladders disagree".into()));
    }
    let used: BTreeSet<Piece> = rows.iter().flatten().copied().collect();
    if used.len() != pieces.len() {
        return Err(Error::Integrity(format!("{} of {} pieces placed in the array", used.len(), pieces.len())));
    }
    Ok(rows)
}

/// Codifies a PDS and validates the result against the seven axioms.
pub fn to_pds_array(s: &VertexSet) -> Result<PdsArray> {
    let dec = decompose(s)?;
    let rows = arrange(&dec)?;
    let entries =
        rows.iter().map(|row| row.iter().map(|p| extended_lengths(&p.rect, dec.m, dec.n)).collect()).collect();
    let arr = PdsArray::new(entries)?;
    let violations = validate_pds_array(&arr, dec.m, dec.n);
    if !violations.is_empty() {
        return Err(Error::Integrity(format!("array violates {violations:?}")));
    }
    Ok(arr)
}

/// One failed axiom instance: axiom number `1..=7` and where it failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Violation {
    pub axiom: u8,
    pub row: usize,
    pub col: usize,
}

/// Checks the seven axioms with rows of the array running down the grid:
/// widths sum to `m+1` along each row and heights to `n+1` down each column.
pub fn validate_pds_array(arr: &PdsArray, m: usize, n: usize) -> Vec<Violation> {
    let (rows, cols) = (arr.s(), arr.r());
    let w = |y: usize, x: usize| arr.entries[y][x].0 as isize;
    let h = |y: usize, x: usize| arr.entries[y][x].1 as isize;
    let mut out = Vec::new();
    for y in 0..rows {
        for x in 0..cols {
            if (x + y) % 2 == arr.delta as usize % 2 && !arr.is_ladder(y, x) {
                out.push(Violation { axiom: 1, row: y, col: x });
            }
            if y + 1 < rows && (w(y + 1, x) - w(y, x)).abs() > 2 {
                out.push(Violation { axiom: 2, row: y, col: x });
            }
            if x + 1 < cols && (h(y, x + 1) - h(y, x)).abs() > 2 {
                out.push(Violation { axiom: 3, row: y, col: x });
            }
        }
    }
    for y in 0..rows.saturating_sub(1) {
        let (mut a, mut b) = (0, 0);
        for x in 0..cols {
            a += w(y, x);
            b += w(y + 1, x);
            if (a - b).abs() > 1 {
                out.push(Violation { axiom: 4, row: y, col: x });
            }
        }
    }
    for x in 0..cols.saturating_sub(1) {
        let (mut a, mut b) = (0, 0);
        for y in 0..rows {
            a += h(y, x);
            b += h(y, x + 1);
            if (a - b).abs() > 1 {
                out.push(Violation { axiom: 5, row: y, col: x });
            }
        }
    }
    for y in 0..rows {
        if (0..cols).map(|x| w(y, x)).sum::<isize>() != m as isize + 1 {
            out.push(Violation { axiom: 6, row: y, col: 0 });
        }
    }
    for x in 0..cols {
        if (0..rows).map(|y| h(y, x)).sum::<isize>() != n as isize + 1 {
            out.push(Violation { axiom: 7, row: 0, col: x });
        }
    }
    out
}

/// Mirrors every row; `δ` is recomputed from the new top-left entry.
pub fn reverse_array(arr: &PdsArray) -> PdsArray {
    let entries = arr.entries.iter().map(|row| row.iter().rev().copied().collect()).collect();
    PdsArray::new(entries).expect("shape preserved")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Vertex;

    fn set(m: usize, n: usize, vs: &[(usize, usize)]) -> VertexSet {
        VertexSet::from_vertices(m, n, vs.iter().map(|&(i, j)| Vertex::new(i, j))).unwrap()
    }

    #[test]
    fn two_by_two_labels() {
        let lab = direction_labels(&set(2, 2, &[(0, 0), (0, 1)])).unwrap();
        assert_eq!(lab.words(), vec!["23", "23"]);
    }

    #[test]
    fn non_pds_is_rejected() {
        assert!(matches!(direction_labels(&set(3, 3, &[(1, 1)])), Err(Error::NotPds(_))));
    }

    #[test]
    fn tables_classify_as_printed() {
        let good: BTreeSet<_> = GOOD_SQUARES.iter().collect();
        let bad: BTreeSet<_> = BAD_SQUARES.iter().collect();
        assert_eq!(good.len(), 13);
        assert_eq!(bad.len(), 16);
        assert!(GOOD_SQUARES.iter().all(|q| q.contains('2')));
        assert!(BAD_SQUARES.iter().all(|q| !q.contains('2')));
    }

    #[test]
    fn extended_length_rule() {
        assert_eq!(extended_length(2, 0), 2);
        assert_eq!(extended_length(1, 1), 2);
        assert_eq!(extended_length(6 - 2, 2), 6);
        let interior = Rect { x0: 2, y0: 3, w: 2, h: 1 };
        assert_eq!(extended_lengths(&interior, 10, 10), (2, 1));
        let full = Rect { x0: -1, y0: -1, w: 5, h: 2 };
        assert_eq!(extended_lengths(&full, 4, 4), (5, 2));
    }

    #[test]
    fn diagonal_code_decomposes_three_by_three() {
        let s = set(4, 4, &[(1, 0), (3, 1), (0, 2), (2, 3)]);
        let arr = to_pds_array(&s).unwrap();
        assert_eq!(arr, PdsArray::parse("12 22 21 / 22 11 22 / 21 22 12").unwrap());
        assert_eq!(arr.delta, 0);
    }

    #[test]
    fn perturbation_breaks_row_sum() {
        let mut arr = PdsArray::parse("12 22 21 / 22 11 22 / 21 22 12").unwrap();
        assert!(validate_pds_array(&arr, 4, 4).is_empty());
        arr.entries[1][1].0 += 1;
        let v = validate_pds_array(&arr, 4, 4);
        assert!(v.iter().any(|x| x.axiom == 6));
    }

    #[test]
    fn reverse_of_single_entry() {
        let arr = PdsArray::parse("32").unwrap();
        assert_eq!(reverse_array(&arr), arr);
    }

    #[test]
    fn text_and_json_round_trip() {
        let arr = PdsArray::parse("12 22 31/22 11 32").unwrap();
        assert_eq!(PdsArray::parse(&arr.to_string()).unwrap(), arr);
        let json = arr.to_json(5, 7);
        assert_eq!(PdsArray::from_json(&json).unwrap(), arr);
        assert!(PdsArray::parse("12 2").is_err());
        assert!(PdsArray::parse("12 22/31").is_err());
    }
}
