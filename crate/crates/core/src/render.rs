//! Text and SVG renderings of solutions, label tables and lattice windows.
//!
//! Text output marks code vertices with `●` and the rest with `○`. SVG output
//! shades rooms and ladders behind the grid.

use std::fmt::Write;

use crate::codec::{decompose, Rect};
use crate::error::Result;
use crate::grid::VertexSet;
use crate::label::LabelRow;
use crate::tpc::{window_tiles, LatticeWindow};

const MEMBER_MARK: char = '●';
const OTHER_MARK: char = '○';

/// Spacing between adjacent vertices in SVG user units.
const STEP: usize = 24;
const ROOM_FILL: &str = "#cfe3f7";
const LADDER_FILL: &str = "#f6d7b0";

/// One line per grid row of `●`/`○` marks.
pub fn marks_text(s: &VertexSet) -> String {
    let mut out = String::new();
    for j in 0..s.n() {
        let line: String =
            (0..s.m()).map(|i| if s.contains(i as isize, j as isize) { MEMBER_MARK } else { OTHER_MARK }).collect();
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Marks side by side with the label word of each level.
pub fn labelled_text(s: &VertexSet, rows: &[LabelRow]) -> String {
    let marks = marks_text(s);
    let mut out = String::new();
    for (j, line) in marks.lines().enumerate() {
        let word = rows.get(j).map(LabelRow::word).unwrap_or_default();
        let _ = writeln!(out, "{j:>3}  {line}  {word}");
    }
    out
}

/// Label words, one level per line.
pub fn table_text(rows: &[LabelRow]) -> String {
    rows.iter().map(|r| r.word() + "\n").collect()
}

struct Canvas {
    body: String,
    width: usize,
    height: usize,
}

impl Canvas {
    /// A canvas for a `cols × rows` vertex lattice with one step of margin.
    fn new(cols: usize, rows: usize) -> Self {
        Canvas { body: String::new(), width: (cols + 1) * STEP, height: (rows + 1) * STEP }
    }

    fn coord(v: isize) -> isize {
        (v + 1) * STEP as isize
    }

    fn rect(&mut self, x0: isize, y0: isize, w: usize, h: usize, fill: &str) {
        let _ = writeln!(
            self.body,
            r##"  <rect x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="#555" stroke-width="1"/>"##,
            Self::coord(x0),
            Self::coord(y0),
            w * STEP,
            h * STEP
        );
    }

    fn lattice(&mut self, cols: usize, rows: usize) {
        for j in 0..rows as isize {
            let (a, b, y) = (Self::coord(0), Self::coord(cols as isize - 1), Self::coord(j));
            let _ = writeln!(self.body, r##"  <line x1="{a}" y1="{y}" x2="{b}" y2="{y}" stroke="#999"/>"##);
        }
        for i in 0..cols as isize {
            let (a, b, x) = (Self::coord(0), Self::coord(rows as isize - 1), Self::coord(i));
            let _ = writeln!(self.body, r##"  <line x1="{x}" y1="{a}" x2="{x}" y2="{b}" stroke="#999"/>"##);
        }
    }

    fn vertex(&mut self, i: isize, j: isize, member: bool) {
        let fill = if member { "black" } else { "white" };
        let _ = writeln!(
            self.body,
            r##"  <circle cx="{}" cy="{}" r="5" fill="{fill}" stroke="black"/>"##,
            Self::coord(i),
            Self::coord(j)
        );
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

fn piece_fill(rect: &Rect, ladder: bool, canvas: &mut Canvas) {
    canvas.rect(rect.x0, rect.y0, rect.w, rect.h, if ladder { LADDER_FILL } else { ROOM_FILL });
}

/// A PDS with its rooms and ladders, including the boundary frame.
pub fn pds_svg(s: &VertexSet) -> Result<String> {
    let dec = decompose(s)?;
    // The frame adds one lattice column and row on each side.
    let mut canvas = Canvas::new(s.m() + 2, s.n() + 2);
    let shift = |r: &Rect| Rect { x0: r.x0 + 1, y0: r.y0 + 1, ..*r };
    for r in &dec.rooms {
        piece_fill(&shift(r), false, &mut canvas);
    }
    for r in &dec.ladders {
        piece_fill(&shift(r), true, &mut canvas);
    }
    canvas.lattice(s.m() + 2, s.n() + 2);
    for j in 0..s.n() {
        for i in 0..s.m() {
            canvas.vertex(i as isize + 1, j as isize + 1, s.contains(i as isize, j as isize));
        }
    }
    Ok(canvas.finish())
}

/// The lattice code window with the rooms and ladders that fit inside it.
pub fn window_svg(window: &LatticeWindow) -> Result<String> {
    let side = 2 * window.radius;
    let r = window.radius as isize;
    let mut canvas = Canvas::new(side, side);
    for t in window_tiles(window)? {
        let rect = Rect { x0: t.x0 + r, y0: t.y0 + r, w: t.w, h: t.h };
        piece_fill(&rect, t.ladder, &mut canvas);
    }
    canvas.lattice(side, side);
    for (x, y) in window.points() {
        canvas.vertex(x + r, y + r, window.contains(x, y));
    }
    Ok(canvas.finish())
}

/// `●`/`○` marks of the lattice window, top row first.
pub fn window_text(window: &LatticeWindow) -> String {
    marks_text(&window.to_vertex_set())
}
