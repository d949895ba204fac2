//! Regeneration of the reference tables and arrays, with checked-in golden copies.

use std::fmt::Write;

use similar::TextDiff;

use crate::codec::to_pds_array;
use crate::error::{Error, Result};
use crate::grid::check_pds;
use crate::initial::InitialCondition;
use crate::label::LabelRow;
use crate::render::table_text;
use crate::solution::PdsSolution;
use crate::theta::{label_table, run_theta, Strategy, ThetaOutcome};
use crate::tpc::{build_tpc, phi_box, phi_transform, tpc_table, TpcShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// The two worked label tables.
    Fig1,
    /// The first levels of the two small examples and their arrays.
    Fig2,
    /// The γ tables for widths 2 to 10 and the quarter-turn nesting.
    Fig3,
    /// The arrays of both worked examples and of the five codes.
    Arrays,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig1, Figure::Fig2, Figure::Fig3, Figure::Arrays];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Arrays => "arrays",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == text)
            .ok_or_else(|| Error::Parse(format!("unknown figure {text:?} (fig1, fig2, fig3, arrays)")))
    }

    pub fn golden(self) -> &'static str {
        match self {
            Figure::Fig1 => include_str!("../golden/fig1.txt"),
            Figure::Fig2 => include_str!("../golden/fig2.txt"),
            Figure::Fig3 => include_str!("../golden/fig3.txt"),
            Figure::Arrays => include_str!("../golden/arrays.txt"),
        }
    }

    pub fn generate(self) -> Result<String> {
        match self {
            Figure::Fig1 => fig1(),
            Figure::Fig2 => fig2(),
            Figure::Fig3 => fig3(),
            Figure::Arrays => arrays(),
        }
    }

    /// `None` when the regenerated text equals the golden copy, otherwise a
    /// unified diff from golden to generated.
    pub fn check(self) -> Result<Option<String>> {
        let fresh = self.generate()?;
        let golden = self.golden();
        if fresh == golden {
            return Ok(None);
        }
        let diff = TextDiff::from_lines(golden, fresh.as_str())
            .unified_diff()
            .header(&format!("golden/{}.txt", self.name()), "generated")
            .to_string();
        Ok(Some(diff))
    }
}

/// A worked example: width, initial columns and strategy string.
pub struct Example {
    pub m: usize,
    pub columns: &'static [usize],
    pub strategy: &'static str,
}

pub const WIDE_EXAMPLE: Example = Example { m: 16, columns: &[1, 2, 3, 9, 13, 14], strategy: "babab" };
pub const NARROW_EXAMPLE: Example = Example { m: 5, columns: &[1], strategy: "bb" };

impl Example {
    pub fn initial(&self) -> Result<InitialCondition> {
        InitialCondition::new(self.m, self.columns)
    }

    pub fn run(&self) -> Result<ThetaOutcome> {
        let out = run_theta(&self.initial()?, &Strategy::parse(self.strategy)?, 4 * self.m);
        match out {
            ThetaOutcome::Pds { .. } => Ok(out),
            _ => Err(Error::Integrity(format!("example with m={} did not complete", self.m))),
        }
    }

    fn header(&self, n: usize) -> String {
        let cols: Vec<String> = self.columns.iter().map(usize::to_string).collect();
        format!("# grid {}x{n}, initial {}, strategy {}\n", self.m, cols.join(","), self.strategy)
    }
}

/// Positions of a Φ-image inside the next wider table, as printed in the
/// rotation section of the third figure.
pub fn phi_matches(m: usize) -> Result<bool> {
    let image = phi_transform(&tpc_table(m, TpcShape::TallPlus2)?);
    let target = phi_box(m)?;
    let words = |t: &[LabelRow]| t.iter().map(LabelRow::word).collect::<Vec<_>>();
    Ok(words(&image) == words(&target))
}

pub const CODE_WIDTHS: [usize; 5] = [2, 4, 6, 8, 10];

fn fig1() -> Result<String> {
    let mut out = String::new();
    for ex in [WIDE_EXAMPLE, NARROW_EXAMPLE] {
        let run = ex.run()?;
        let rows = run.rows();
        out.push_str(&ex.header(rows.len()));
        out.push_str(&table_text(rows));
    }
    Ok(out)
}

/// The two 4-column runs: `β` at the single decision gives the isolated
/// PDS of `Γ(4,4)`; `α` completes after three levels and is continued one
/// more level with the slice repeated.
pub fn small_examples() -> Result<[(char, PdsSolution, Vec<LabelRow>); 2]> {
    let init = InitialCondition::new(4, &[1])?;
    let beta = run_theta(&init, &Strategy::AllBeta, 16);
    let beta_sol =
        beta.solution().ok_or_else(|| Error::Integrity("4-column beta run did not complete".into()))?.clone();
    let (rows, trace) = label_table(&init, &Strategy::AllAlpha, 4)?;
    let alpha_sol = PdsSolution::from_rows(&rows, trace)?;
    check_pds(&alpha_sol.vertices)?;
    Ok([('b', beta_sol, beta.rows().to_vec()), ('a', alpha_sol, rows)])
}

fn fig2() -> Result<String> {
    let mut blocks = Vec::new();
    for (letter, sol, rows) in small_examples()? {
        let mut block = format!("# grid 4x{}, initial 1, strategy {letter}, levels 0..=2\n", sol.n());
        block.push_str(&table_text(&rows[..3]));
        let _ = write!(block, "# array\n{}", to_pds_array(&sol.vertices)?);
        blocks.push(block);
    }
    Ok(blocks.join("\n"))
}

fn fig3() -> Result<String> {
    let mut out = String::new();
    for m in CODE_WIDTHS {
        let _ = writeln!(out, "# width {m}");
        out.push_str(&table_text(&tpc_table(m, TpcShape::TallPlus2)?));
    }
    out.push_str("# rotation map\n");
    for m in [2, 4, 6, 8] {
        let verdict = if phi_matches(m)? { "box match" } else { "box mismatch" };
        let _ = writeln!(out, "width {m} into width {}: {verdict}", m + 2);
    }
    Ok(out)
}

fn arrays() -> Result<String> {
    let mut out = String::new();
    for ex in [WIDE_EXAMPLE, NARROW_EXAMPLE] {
        let run = ex.run()?;
        let sol = run.solution().expect("run returns completed examples");
        let _ = write!(out, "# grid {}x{}\n{}", sol.m(), sol.n(), to_pds_array(&sol.vertices)?);
    }
    for m in CODE_WIDTHS {
        let sol = build_tpc(m, TpcShape::TallPlus2)?;
        let _ = write!(out, "# code width {m}\n{}", to_pds_array(&sol.vertices)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in Figure::ALL {
            assert_eq!(Figure::parse(f.name()).unwrap(), f);
        }
        assert!(Figure::parse("fig9").is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        for f in Figure::ALL {
            assert_eq!(f.generate().unwrap(), f.generate().unwrap());
        }
    }
}
