//! Total perfect codes: the `γ` strategy from symmetric seed rows, the
//! square and short variants cut from its label table, the rotation map
//! `Φ` between consecutive widths, and the concentric lattice code `S₁`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{bounding_box, components, is_total_perfect_code, VertexSet};
use crate::initial::{initial_row, is_admissible};
use crate::label::LabelRow;
use crate::search::{enumerate_from_row, SearchOptions};
use crate::solution::PdsSolution;
use crate::theta::{gamma_choice, label_table_from_row, Strategy};

/// Existence criterion for total perfect codes in `Γ(m,n)`, `min{m,n} > 1`:
/// one side even and the other `≡ −3, −1` or `1` modulo that side plus one.
pub fn kg_has_tpc(m: usize, n: usize) -> Result<bool> {
    if m.min(n) <= 1 {
        return Err(Error::Domain(format!("criterion needs min(m,n) > 1, got {m}x{n}")));
    }
    let one_way = |a: usize, b: usize| {
        let q = a + 1;
        a.is_multiple_of(2) && [(q * 3 - 3) % q, q - 1, 1 % q].contains(&(b % q))
    };
    Ok(one_way(m, n) || one_way(n, m))
}

/// The `γ` rule as a callback strategy.
pub fn gamma_strategy() -> Strategy {
    Strategy::Callback(Arc::new(gamma_choice))
}

/// Positions where `next` repeats the seed row.
pub fn tau_prime(next: &LabelRow, row0: &LabelRow) -> usize {
    next.labels().iter().zip(row0.labels()).filter(|(a, b)| a == b).count()
}

/// A seed row for even width: `1223` blocks, or `22` followed by `3122` blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TpcSeed {
    pub m: usize,
    pub row0: LabelRow,
}

impl TpcSeed {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 || m % 2 == 1 || m > 62 {
            return Err(Error::Domain(format!("seed width must be even in [2,62], got {m}")));
        }
        let word = if m.is_multiple_of(4) { "1223".repeat(m / 4) } else { format!("22{}", "3122".repeat((m - 2) / 4)) };
        Ok(TpcSeed { m, row0: LabelRow::parse(0, &word)? })
    }
}

/// The first `rows` rows of the `γ` run from the seed of width `m`.
pub fn gamma_table(m: usize, rows: usize) -> Result<Vec<LabelRow>> {
    let seed = TpcSeed::new(m)?;
    Ok(label_table_from_row(seed.row0, &Strategy::Gamma, rows)?.0)
}

/// Levels until the `γ` run repeats its seed (`τ′ = m`), searching up to `max_rows`.
pub fn gamma_period(m: usize, max_rows: usize) -> Result<usize> {
    let table = gamma_table(m, max_rows)?;
    table
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, r)| tau_prime(r, &table[0]) == m)
        .map(|(j, _)| j)
        .ok_or(Error::RowCap(max_rows))
}

/// Which code to cut from the `γ` table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TpcShape {
    /// `Γ(m, m+2)`: levels `0..=m+1`.
    TallPlus2,
    /// `Γ(m, m)`: levels `0..m`.
    Square,
    /// `Γ(m, m)`: levels `2..m+2`, the half-turn of [`TpcShape::Square`].
    SquareRotated,
    /// `Γ(m, m)` for `6 ≤ m ≡ 2 (mod 4)`: the `Γ(m−2, m)` table with a
    /// column pair prefixed to each row.
    SquareExtra,
    /// `Γ(m, m−2)`: levels `2..m`.
    ShortMinus2,
}

impl TpcShape {
    pub const ALL: [TpcShape; 5] =
        [TpcShape::TallPlus2, TpcShape::Square, TpcShape::SquareRotated, TpcShape::SquareExtra, TpcShape::ShortMinus2];

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "tall" | "tall-plus2" => Ok(TpcShape::TallPlus2),
            "square" => Ok(TpcShape::Square),
            "square-rotated" => Ok(TpcShape::SquareRotated),
            "square-extra" => Ok(TpcShape::SquareExtra),
            "short" | "short-minus2" => Ok(TpcShape::ShortMinus2),
            s => Err(Error::Parse(format!("unknown shape {s:?}"))),
        }
    }
}

/// Prefix pairs for [`TpcShape::SquareExtra`], repeating with period four.
const EXTRA_PREFIX: [&str; 4] = ["23", "23", "41", "01"];

/// The label table of a code of the given shape.
pub fn tpc_table(m: usize, shape: TpcShape) -> Result<Vec<LabelRow>> {
    let domain = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("{shape:?} needs {what}, got m={m}")))
        }
    };
    domain(m >= 2 && m.is_multiple_of(2), "even m > 1")?;
    let rows = match shape {
        TpcShape::TallPlus2 => gamma_table(m, m + 2)?,
        TpcShape::Square => {
            domain(m > 2, "m > 2")?;
            gamma_table(m, m)?
        }
        TpcShape::SquareRotated => {
            domain(m > 2, "m > 2")?;
            gamma_table(m, m + 2)?.split_off(2)
        }
        TpcShape::ShortMinus2 => {
            domain(m > 2, "m > 2")?;
            gamma_table(m, m)?.split_off(2)
        }
        TpcShape::SquareExtra => {
            domain(m >= 6 && m % 4 == 2, "6 <= m = 2 (mod 4)")?;
            gamma_table(m - 2, m)?
                .iter()
                .enumerate()
                .map(|(j, r)| LabelRow::parse(j, &format!("{}{}", EXTRA_PREFIX[j % 4], r.word())))
                .collect::<Result<_>>()?
        }
    };
    Ok(rows.into_iter().enumerate().map(|(j, r)| r.with_level(j)).collect())
}

/// Builds a code and checks it is a total perfect code of the expected grid.
pub fn build_tpc(m: usize, shape: TpcShape) -> Result<PdsSolution> {
    let rows = tpc_table(m, shape)?;
    let sol = PdsSolution::from_rows(&rows, Vec::new())?;
    if !is_total_perfect_code(&sol.vertices) {
        return Err(Error::Integrity(format!("{shape:?} for m={m} is not a total perfect code")));
    }
    Ok(sol)
}

/// Quarter turn clockwise of a label table (rows run downwards).
pub fn rotate_cw(table: &[LabelRow]) -> Vec<LabelRow> {
    let h = table.len();
    let w = table.first().map_or(0, LabelRow::m);
    (0..w).map(|r| LabelRow::new(r, (0..h).map(|c| table[h - 1 - c].get(r)).collect()).expect("same symbols")).collect()
}

/// Relabels by the cycle `0→3→4→1→0`, fixing `2`.
pub fn cycle_labels(table: &[LabelRow]) -> Vec<LabelRow> {
    const MAP: [u8; 5] = [3, 0, 2, 4, 1];
    table
        .iter()
        .map(|r| LabelRow::new(r.level, r.labels().iter().map(|&l| MAP[l as usize]).collect()).expect("same symbols"))
        .collect()
}

/// `Φ`: quarter turn clockwise combined with the label cycle `(0341)`.
pub fn phi_transform(table: &[LabelRow]) -> Vec<LabelRow> {
    cycle_labels(&rotate_cw(table))
}

/// Positions `(row, column)` at which `inner` occurs label for label inside `outer`.
pub fn subtable_positions(outer: &[LabelRow], inner: &[LabelRow]) -> Vec<(usize, usize)> {
    let (oh, ih) = (outer.len(), inner.len());
    let (ow, iw) = (outer.first().map_or(0, LabelRow::m), inner.first().map_or(0, LabelRow::m));
    if ih == 0 || ih > oh || iw > ow {
        return Vec::new();
    }
    let mut hits = Vec::new();
    for r0 in 0..=oh - ih {
        for c0 in 0..=ow - iw {
            let fits = inner.iter().enumerate().all(|(k, row)| &outer[r0 + k].labels()[c0..c0 + iw] == row.labels());
            if fits {
                hits.push((r0, c0));
            }
        }
    }
    hits
}

/// The box of the width `m+2` table that `Φ` of the width `m` table should fill:
/// full width, rows `2..m+2`.
pub fn phi_box(m: usize) -> Result<Vec<LabelRow>> {
    let outer = tpc_table(m + 2, TpcShape::TallPlus2)?;
    Ok(outer[2..m + 2].to_vec())
}

/// The code `S₁` restricted to the window `[−R, R)²`.
///
/// Integer coordinate `x` stands for the lattice point `x + ½`, so the
/// window is centred on the unit square around the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeWindow {
    pub radius: usize,
    members: Vec<bool>,
}

/// A point symmetry of the centred lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dihedral {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    /// `x ↦ −x`.
    FlipX,
    /// `y ↦ −y`.
    FlipY,
    /// `(x, y) ↦ (y, x)`.
    Diagonal,
    /// `(x, y) ↦ (−y, −x)`.
    AntiDiagonal,
}

impl Dihedral {
    pub const ALL: [Dihedral; 8] = [
        Dihedral::Identity,
        Dihedral::Rot90,
        Dihedral::Rot180,
        Dihedral::Rot270,
        Dihedral::FlipX,
        Dihedral::FlipY,
        Dihedral::Diagonal,
        Dihedral::AntiDiagonal,
    ];

    /// Action on window coordinates (negation is `x ↦ −x−1`).
    pub fn apply(self, x: isize, y: isize) -> (isize, isize) {
        let neg = |v: isize| -v - 1;
        match self {
            Dihedral::Identity => (x, y),
            Dihedral::Rot90 => (neg(y), x),
            Dihedral::Rot180 => (neg(x), neg(y)),
            Dihedral::Rot270 => (y, neg(x)),
            Dihedral::FlipX => (neg(x), y),
            Dihedral::FlipY => (x, neg(y)),
            Dihedral::Diagonal => (y, x),
            Dihedral::AntiDiagonal => (neg(y), neg(x)),
        }
    }
}

/// Places the `Γ(m, m+2)` code centred on the origin, then turns it so that
/// consecutive widths nest: the width-2 code is left as is and each wider
/// one is turned a further quarter counterclockwise.
pub fn centred_code(m: usize) -> Result<BTreeSet<(isize, isize)>> {
    let sol = build_tpc(m, TpcShape::TallPlus2)?;
    let (hm, hn) = ((m / 2) as isize, ((m + 2) / 2) as isize);
    let turns = (m / 2 - 1) % 4;
    Ok(sol
        .vertices
        .iter()
        .map(|v| {
            let mut p = (v.i as isize - hm, v.j as isize - hn);
            for _ in 0..turns {
                p = Dihedral::Rot270.apply(p.0, p.1);
            }
            p
        })
        .collect())
}

/// The box `[−m/2, m/2) × [−(m+2)/2, (m+2)/2)`, turned like [`centred_code`].
pub fn centred_box_contains(m: usize, x: isize, y: isize) -> bool {
    let (a, b) = ((m / 2) as isize, ((m + 2) / 2) as isize);
    let (a, b) = if (m / 2 - 1).is_multiple_of(2) { (a, b) } else { (b, a) };
    (-a..a).contains(&x) && (-b..b).contains(&y)
}

pub fn build_s1(radius: usize) -> Result<LatticeWindow> {
    if radius < 2 {
        return Err(Error::Domain(format!("window radius must be >= 2, got {radius}")));
    }
    let code = centred_code(2 * radius)?;
    let r = radius as isize;
    let side = 2 * radius;
    let mut members = vec![false; side * side];
    for (x, y) in code {
        if (-r..r).contains(&x) && (-r..r).contains(&y) {
            members[((y + r) as usize) * side + (x + r) as usize] = true;
        }
    }
    Ok(LatticeWindow { radius, members })
}

impl LatticeWindow {
    pub fn in_window(&self, x: isize, y: isize) -> bool {
        let r = self.radius as isize;
        (-r..r).contains(&x) && (-r..r).contains(&y)
    }

    pub fn contains(&self, x: isize, y: isize) -> bool {
        let r = self.radius as isize;
        self.in_window(x, y) && self.members[((y + r) as usize) * 2 * self.radius + (x + r) as usize]
    }

    pub fn points(&self) -> impl Iterator<Item = (isize, isize)> + '_ {
        let r = self.radius as isize;
        (-r..r).flat_map(move |y| (-r..r).map(move |x| (x, y)))
    }

    /// Vertices whose four neighbours lie in the window and do not have
    /// exactly one neighbour in the code.
    pub fn interior_defects(&self) -> Vec<(isize, isize)> {
        self.points()
            .filter(|&(x, y)| {
                let nb = [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)];
                nb.iter().all(|&(a, b)| self.in_window(a, b))
                    && nb.iter().filter(|&&(a, b)| self.contains(a, b)).count() != 1
            })
            .collect()
    }

    pub fn preserved_by(&self, g: Dihedral) -> bool {
        self.points().all(|(x, y)| {
            let (a, b) = g.apply(x, y);
            self.contains(x, y) == self.contains(a, b)
        })
    }

    /// Whether shifting by `(dx, dy)` preserves membership wherever both
    /// points are in the window.
    pub fn preserved_by_translation(&self, dx: isize, dy: isize) -> bool {
        self.points()
            .filter(|&(x, y)| self.in_window(x + dx, y + dy))
            .all(|(x, y)| self.contains(x, y) == self.contains(x + dx, y + dy))
    }

    /// As a vertex set over the window grid (column `x + R`, row `y + R`).
    pub fn to_vertex_set(&self) -> VertexSet {
        let side = 2 * self.radius;
        let masks = (0..side)
            .map(|row| (0..side).filter(|&c| self.members[row * side + c]).fold(0u64, |acc, c| acc | 1 << c))
            .collect();
        VertexSet::from_row_masks(side, masks).expect("radius limited by build_s1")
    }
}

/// The symmetries among the eight that fix the window's membership.
pub fn symmetry_group(window: &LatticeWindow) -> Vec<Dihedral> {
    Dihedral::ALL.into_iter().filter(|&g| window.preserved_by(g)).collect()
}

/// A room or ladder of the tiling with its size in unit squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub ladder: bool,
    pub x0: isize,
    pub y0: isize,
    pub w: usize,
    pub h: usize,
}

/// Rooms and ladders of the complement of `S₁` lying strictly inside the
/// window. A unit square is named by its top-left corner. Rooms are the
/// blocks of squares around each code edge; ladders are connected blocks of
/// squares with no code corner.
pub fn window_tiles(window: &LatticeWindow) -> Result<Vec<Tile>> {
    let r = window.radius as isize;
    let square_inside = |x: isize, y: isize| window.in_window(x, y) && window.in_window(x + 1, y + 1);
    let good = |x: isize, y: isize| {
        [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)].iter().any(|&(a, b)| window.contains(a, b))
    };
    let mut tiles = Vec::new();
    for comp in components(&window.to_vertex_set()) {
        let (i0, j0, i1, j1) = bounding_box(&comp);
        let (x0, y0) = (i0 as isize - r - 1, j0 as isize - r - 1);
        let (x1, y1) = (i1 as isize - r, j1 as isize - r);
        if square_inside(x0, y0) && square_inside(x1, y1) {
            tiles.push(Tile { ladder: false, x0, y0, w: (x1 - x0 + 1) as usize, h: (y1 - y0 + 1) as usize });
        }
    }
    let mut seen = BTreeSet::new();
    for y in -r..r - 1 {
        for x in -r..r - 1 {
            if good(x, y) || !seen.insert((x, y)) {
                continue;
            }
            let mut stack = vec![(x, y)];
            let mut cells = vec![];
            let mut clipped = false;
            while let Some((a, b)) = stack.pop() {
                cells.push((a, b));
                for (c, d) in [(a - 1, b), (a + 1, b), (a, b - 1), (a, b + 1)] {
                    if !square_inside(c, d) {
                        clipped = true;
                    } else if !good(c, d) && seen.insert((c, d)) {
                        stack.push((c, d));
                    }
                }
            }
            if clipped {
                continue;
            }
            let x0 = cells.iter().map(|c| c.0).min().expect("nonempty");
            let x1 = cells.iter().map(|c| c.0).max().expect("nonempty");
            let y0 = cells.iter().map(|c| c.1).min().expect("nonempty");
            let y1 = cells.iter().map(|c| c.1).max().expect("nonempty");
            let (w, h) = ((x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize);
            if w * h != cells.len() {
                return Err(Error::Integrity(format!("ladder at ({x0},{y0}) is not a rectangle")));
            }
            tiles.push(Tile { ladder: true, x0, y0, w, h });
        }
    }
    tiles.sort();
    Ok(tiles)
}

/// Exhaustive search for a total perfect code of `Γ(m,n)` by the decision
/// tree, seeded by every admissible top row (including empty and full).
pub fn tpc_exists_by_search(m: usize, n: usize) -> Result<bool> {
    if m == 0 || m > 20 || n < 2 {
        return Err(Error::Domain(format!("search needs 1 <= m <= 20 and n >= 2, got {m}x{n}")));
    }
    for mask in 0u32..(1u32 << m) {
        let cols: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        if !is_admissible(m, &cols)? || cols.windows(3).any(|w| w[2] == w[0] + 2) {
            continue;
        }
        let opts = SearchOptions::new(n);
        let report = enumerate_from_row(initial_row(m, &cols)?, &opts);
        if report.solutions.iter().any(|s| s.n() == n && is_total_perfect_code(&s.vertices)) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_examples() {
        assert!(kg_has_tpc(4, 6).unwrap());
        assert!(kg_has_tpc(2, 2).unwrap());
        assert!(kg_has_tpc(6, 4).unwrap());
        assert!(!kg_has_tpc(3, 3).unwrap());
        assert!(kg_has_tpc(1, 4).is_err());
    }

    #[test]
    fn seeds() {
        let words: Vec<String> = [2, 4, 6, 8, 10].iter().map(|&m| TpcSeed::new(m).unwrap().row0.word()).collect();
        assert_eq!(words, ["22", "1223", "223122", "12231223", "2231223122"]);
        assert!(TpcSeed::new(5).is_err());
    }

    #[test]
    fn tau_prime_extremes() {
        let r0 = LabelRow::parse(0, "1223").unwrap();
        assert_eq!(tau_prime(&r0, &r0), 4);
        assert_eq!(tau_prime(&LabelRow::parse(5, "4040").unwrap(), &r0), 0);
    }

    #[test]
    fn gamma_periods() {
        for m in [2, 4, 6, 8, 10] {
            assert_eq!(gamma_period(m, 4 * m + 4).unwrap(), m + 1, "m={m}");
        }
    }

    #[test]
    fn every_shape_is_a_code() {
        for m in (2..=14).step_by(2) {
            for shape in TpcShape::ALL {
                if let Ok(rows) = tpc_table(m, shape) {
                    let sol = build_tpc(m, shape).unwrap();
                    assert_eq!(sol.m(), m);
                    assert_eq!(sol.n(), rows.len());
                }
            }
        }
        assert!(build_tpc(2, TpcShape::Square).is_err());
        assert!(build_tpc(8, TpcShape::SquareExtra).is_err());
        assert_eq!(build_tpc(6, TpcShape::SquareExtra).unwrap().n(), 6);
    }

    #[test]
    fn square_variants_are_half_turns() {
        let a = build_tpc(6, TpcShape::Square).unwrap().vertices;
        let b = build_tpc(6, TpcShape::SquareRotated).unwrap().vertices;
        assert_ne!(a, b);
        let turned: Vec<_> = a.iter().map(|v| crate::grid::Vertex::new(5 - v.i, 5 - v.j)).collect();
        assert_eq!(VertexSet::from_vertices(6, 6, turned).unwrap(), b);
    }

    #[test]
    fn phi_twice_is_half_turn_with_swaps() {
        let t = gamma_table(4, 6).unwrap();
        let twice = phi_transform(&phi_transform(&t));
        let swap = [4u8, 3, 2, 1, 0];
        for (j, row) in twice.iter().enumerate() {
            for i in 0..row.m() {
                assert_eq!(row.get(i), swap[t[t.len() - 1 - j].get(row.m() - 1 - i) as usize]);
            }
        }
    }

    #[test]
    fn shape_names() {
        assert_eq!(TpcShape::parse("square-extra").unwrap(), TpcShape::SquareExtra);
        assert!(TpcShape::parse("round").is_err());
    }

    #[test]
    fn small_window() {
        let w = build_s1(4).unwrap();
        assert!(w.interior_defects().is_empty());
        assert!(build_s1(1).is_err());
    }

    #[test]
    fn widths_nest() {
        for m in (2..=12).step_by(2) {
            let inner = centred_code(m).unwrap();
            let outer = centred_code(m + 2).unwrap();
            let r = m as isize;
            for y in -r..r {
                for x in -r..r {
                    if centred_box_contains(m, x, y) {
                        assert_eq!(inner.contains(&(x, y)), outer.contains(&(x, y)), "m={m} at ({x},{y})");
                    }
                }
            }
        }
    }

    #[test]
    fn central_ladder_fixes_the_group() {
        // The central ladder is a 3×1 block, so no quarter turn or diagonal
        // reflection can preserve the code.
        let w = build_s1(8).unwrap();
        let tiles = window_tiles(&w).unwrap();
        let long: Vec<_> = tiles.iter().filter(|t| t.ladder && t.w * t.h == 3).collect();
        assert_eq!(long.len(), 1);
        assert_eq!((long[0].x0, long[0].y0, long[0].w, long[0].h), (-2, -1, 3, 1));
        assert_eq!(symmetry_group(&w), vec![Dihedral::Identity, Dihedral::Rot180, Dihedral::FlipX, Dihedral::FlipY]);
    }

    #[test]
    fn tile_sizes() {
        let w = build_s1(10).unwrap();
        for t in window_tiles(&w).unwrap() {
            let size = (t.w, t.h);
            if t.ladder {
                assert!([(1, 2), (2, 1), (1, 3), (3, 1)].contains(&size), "{t:?}");
            } else {
                assert!([(2, 3), (3, 2)].contains(&size), "{t:?}");
            }
        }
    }
}
