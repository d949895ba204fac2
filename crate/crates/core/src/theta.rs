//! The continuation algorithm: grows a labelling of `Γ(m,n)` one level at a
//! time from an initial condition on `H₀`, asking a strategy whenever a
//! binary decision instance is reached.
//!
//! Each call to [`advance_level`] runs Steps 1-4 on a fresh all-zero row
//! `H_{j+1}`. Step 5 (the completion test) is [`tau`] and lives in the
//! drivers ([`run_theta`], [`label_table`], and the search/band modules).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::initial::InitialCondition;
pub use crate::label::tau;
use crate::label::{LabelRow, BELOW, LEFT_OF, MEMBER, RIGHT_OF, ZERO};
use crate::solution::PdsSolution;

/// The two options at a decision: `α` is greedy (labels in `{1,2,3}`),
/// `β` is not (labels in `{0,4}`). `Alpha < Beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Choice {
    Alpha,
    Beta,
}

impl Choice {
    pub fn letter(self) -> char {
        match self {
            Choice::Alpha => 'a',
            Choice::Beta => 'b',
        }
    }

    pub fn from_letter(c: char) -> Result<Self> {
        match c {
            'a' | 'α' => Ok(Choice::Alpha),
            'b' | 'β' => Ok(Choice::Beta),
            _ => Err(Error::Parse(format!("strategy letter {c:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecisionKind {
    /// Binary outer decision: Step 3, or Step 4 running to the right side.
    Bod,
    /// Binary inner decision: Step 4 closed on both sides.
    Bid,
}

impl fmt::Display for DecisionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecisionKind::Bod => "BOD",
            DecisionKind::Bid => "BID",
        })
    }
}

/// Where a decision happens and what a strategy may look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DecisionContext {
    /// The level receiving labels, `j+1` when extending from `H_j`.
    pub level: usize,
    /// 3 or 4.
    pub step: u8,
    pub kind: DecisionKind,
    /// Left anchor (Step 4 only).
    pub i: Option<usize>,
    /// Where the scan stopped.
    pub k: usize,
    /// Number of positions option `α` labels `2`.
    pub run: usize,
    /// `f(ℓ, j−1)` with `ℓ = 0` at Step 3 and `ℓ = i+1` at Step 4, where `H_j`
    /// is the row being extended; `None` at `j = 0`.
    pub prev_label: Option<u8>,
}

/// A decision context together with the option taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decision {
    pub ctx: DecisionContext,
    pub choice: Choice,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.ctx.i.map_or_else(|| "-".to_string(), |i| i.to_string());
        write!(
            f,
            "j={} step={} kind={} i={} k={} opt={}",
            self.ctx.level,
            self.ctx.step,
            self.ctx.kind,
            i,
            self.ctx.k,
            self.choice.letter()
        )
    }
}

/// Anything that can answer decision instances. `None` means "no answer"
/// (an exhausted explicit strategy, or a search frontier).
pub trait Chooser {
    fn choose(&mut self, ctx: &DecisionContext) -> Option<Choice>;
}

impl<F: FnMut(&DecisionContext) -> Option<Choice>> Chooser for F {
    fn choose(&mut self, ctx: &DecisionContext) -> Option<Choice> {
        self(ctx)
    }
}

pub type DecisionFn = Arc<dyn Fn(&DecisionContext) -> Choice + Send + Sync>;

/// How decisions are answered during a run.
#[derive(Clone)]
pub enum Strategy {
    /// Consumed in encounter order; running out stalls the run.
    Explicit(Vec<Choice>),
    AllAlpha,
    AllBeta,
    /// The total-perfect-code rule: `α` iff `run = 1` and the label above
    /// the first written position is `0` or undefined.
    Gamma,
    Callback(DecisionFn),
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Explicit(v) => write!(f, "Explicit({})", v.iter().map(|c| c.letter()).collect::<String>()),
            Strategy::AllAlpha => f.write_str("AllAlpha"),
            Strategy::AllBeta => f.write_str("AllBeta"),
            Strategy::Gamma => f.write_str("Gamma"),
            Strategy::Callback(_) => f.write_str("Callback(..)"),
        }
    }
}

impl Strategy {
    /// Parses `alpha`, `beta`, `gamma`, or a word over `{a,b}`.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "alpha" => Ok(Strategy::AllAlpha),
            "beta" => Ok(Strategy::AllBeta),
            "gamma" => Ok(Strategy::Gamma),
            s => s.chars().map(Choice::from_letter).collect::<Result<Vec<_>>>().map(Strategy::Explicit),
        }
    }

    pub fn cursor(&self) -> StrategyCursor<'_> {
        StrategyCursor { strategy: self, position: 0 }
    }
}

pub fn gamma_choice(ctx: &DecisionContext) -> Choice {
    if ctx.run == 1 && matches!(ctx.prev_label, None | Some(ZERO)) {
        Choice::Alpha
    } else {
        Choice::Beta
    }
}

/// A [`Strategy`] being consumed.
pub struct StrategyCursor<'a> {
    strategy: &'a Strategy,
    position: usize,
}

impl Chooser for StrategyCursor<'_> {
    fn choose(&mut self, ctx: &DecisionContext) -> Option<Choice> {
        let c = match self.strategy {
            Strategy::Explicit(seq) => *seq.get(self.position)?,
            Strategy::AllAlpha => Choice::Alpha,
            Strategy::AllBeta => Choice::Beta,
            Strategy::Gamma => gamma_choice(ctx),
            Strategy::Callback(f) => f(ctx),
        };
        self.position += 1;
        Some(c)
    }
}

/// Result of labelling one new level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Advance {
    pub next: LabelRow,
    pub decisions: Vec<Decision>,
}

/// The chooser declined to answer at `context`; `decisions` were taken before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unanswered {
    pub context: DecisionContext,
    pub decisions: Vec<Decision>,
}

/// Labels `H_{j+1}` from `H_j` (`row`) by Steps 1-4.
///
/// `prev` is `H_{j−1}` when it exists; only strategies that look at
/// [`DecisionContext::prev_label`] need it.
pub fn advance_level(
    row: &LabelRow,
    prev: Option<&LabelRow>,
    chooser: &mut dyn Chooser,
) -> std::result::Result<Advance, Unanswered> {
    let cur = row.labels();
    let m = cur.len();
    let level = row.level + 1;
    let mut next = vec![ZERO; m];
    let mut decisions = Vec::new();

    // Step 1: every 0 at level j is dominated from below.
    for i in 0..m {
        if cur[i] != ZERO {
            continue;
        }
        if i > 0 && cur[i - 1] > 0 {
            next[i - 1] = LEFT_OF;
            if i > 1 {
                let mut k = i - 2;
                while cur[k] == MEMBER {
                    next[k] = BELOW;
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                }
            }
        }
        if i + 1 < m && cur[i + 1] > 0 {
            next[i + 1] = RIGHT_OF;
            if i + 2 < m {
                let mut k = i + 2;
                while k < m && cur[k] == MEMBER {
                    next[k] = BELOW;
                    k += 1;
                }
            }
        }
        next[i] = MEMBER;
    }

    // Step 2: copy 123 patterns straight down.
    for i in 0..m.saturating_sub(2) {
        if (0..3).all(|k| cur[i + k] == k as u8 + 1 && next[i + k] == ZERO) {
            for k in 0..3 {
                next[i + k] = k as u8 + 1;
            }
        }
    }

    let mut decide = |ctx: DecisionContext, decisions: &mut Vec<Decision>| match chooser.choose(&ctx) {
        Some(choice) => {
            decisions.push(Decision { ctx, choice });
            Ok(choice)
        }
        None => Err(Unanswered { context: ctx, decisions: decisions.clone() }),
    };
    let prev_at = |l: usize| prev.map(|p| p.get(l));

    // Step 3: a run of 2s against the left side.
    if cur[0] == MEMBER && next[0] == ZERO {
        let mut k = 0;
        while k < m && cur[k] == MEMBER && next[k] == ZERO {
            k += 1;
        }
        let ctx =
            DecisionContext { level, step: 3, kind: DecisionKind::Bod, i: None, k, run: k, prev_label: prev_at(0) };
        match decide(ctx, &mut decisions)? {
            Choice::Alpha => {
                next[..k].fill(MEMBER);
                if k < m {
                    next[k] = RIGHT_OF;
                }
            }
            Choice::Beta => next[..k].fill(BELOW),
        }
    }

    // Step 4: runs of 2s opened by a 1; sees its own earlier writes.
    for i in 0..m.saturating_sub(1) {
        if !(cur[i] == LEFT_OF && next[i + 1] == ZERO) {
            continue;
        }
        let mut k = i + 1;
        while k < m && cur[k] == MEMBER && next[k] == ZERO {
            k += 1;
        }
        if k < m {
            if next[k] != ZERO {
                continue;
            }
            let ctx = DecisionContext {
                level,
                step: 4,
                kind: DecisionKind::Bid,
                i: Some(i),
                k,
                run: k - i - 1,
                prev_label: prev_at(i + 1),
            };
            match decide(ctx, &mut decisions)? {
                Choice::Alpha => {
                    next[i] = LEFT_OF;
                    next[k] = RIGHT_OF;
                    next[i + 1..k].fill(MEMBER);
                }
                Choice::Beta => next[i + 1..k].fill(BELOW),
            }
        } else {
            let ctx = DecisionContext {
                level,
                step: 4,
                kind: DecisionKind::Bod,
                i: Some(i),
                k,
                run: m - i - 1,
                prev_label: prev_at(i + 1),
            };
            match decide(ctx, &mut decisions)? {
                Choice::Alpha => {
                    next[i] = LEFT_OF;
                    next[i + 1..].fill(MEMBER);
                }
                Choice::Beta => next[i + 1..].fill(BELOW),
            }
        }
    }

    let next = LabelRow::new(level, next).expect("symbols stay in [0,4]");
    Ok(Advance { next, decisions })
}

/// Outcome of a single strategy run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaOutcome {
    /// `τ = 0` fired: a PDS in `Γ(m, rows.len())`.
    Pds { solution: PdsSolution, rows: Vec<LabelRow> },
    /// The row budget ran out first.
    Running { rows: Vec<LabelRow>, trace: Vec<Decision> },
    /// The strategy could not answer a decision.
    Stalled { rows: Vec<LabelRow>, trace: Vec<Decision>, reason: String },
}

impl ThetaOutcome {
    pub fn solution(&self) -> Option<&PdsSolution> {
        match self {
            ThetaOutcome::Pds { solution, .. } => Some(solution),
            _ => None,
        }
    }

    pub fn rows(&self) -> &[LabelRow] {
        match self {
            ThetaOutcome::Pds { rows, .. }
            | ThetaOutcome::Running { rows, .. }
            | ThetaOutcome::Stalled { rows, .. } => rows,
        }
    }
}

pub fn default_max_rows(m: usize) -> usize {
    (4 * m).max(2)
}

/// The initial labelling of `H₀` for an IAVS.
pub fn init_labels(initial: &InitialCondition) -> LabelRow {
    initial.row()
}

/// Runs the algorithm from an IAVS until `τ = 0` or `max_rows` rows exist.
pub fn run_theta(initial: &InitialCondition, strategy: &Strategy, max_rows: usize) -> ThetaOutcome {
    run_from_row(init_labels(initial), strategy, max_rows)
}

/// Like [`run_theta`] but seeded by an arbitrary level-0 row.
pub fn run_from_row(row0: LabelRow, strategy: &Strategy, max_rows: usize) -> ThetaOutcome {
    let mut rows = vec![row0.with_level(0)];
    let mut trace = Vec::new();
    let mut cursor = strategy.cursor();
    while rows.len() < max_rows.max(2) {
        let last = rows.len() - 1;
        let prev = last.checked_sub(1).map(|p| &rows[p]);
        match advance_level(&rows[last], prev, &mut cursor) {
            Ok(adv) => {
                trace.extend(adv.decisions);
                let done = tau(&adv.next) == 0;
                rows.push(adv.next);
                if done {
                    let solution = PdsSolution::from_rows(&rows, trace).expect("rows are nonempty");
                    return ThetaOutcome::Pds { solution, rows };
                }
            }
            Err(u) => {
                trace.extend(u.decisions);
                let reason = format!("strategy exhausted at level {}", u.context.level);
                return ThetaOutcome::Stalled { rows, trace, reason };
            }
        }
    }
    ThetaOutcome::Running { rows, trace }
}

/// Every label row for `rows` levels, continuing past completions.
pub fn label_table(
    initial: &InitialCondition,
    strategy: &Strategy,
    rows: usize,
) -> Result<(Vec<LabelRow>, Vec<Decision>)> {
    label_table_from_row(init_labels(initial), strategy, rows)
}

pub fn label_table_from_row(
    row0: LabelRow,
    strategy: &Strategy,
    rows: usize,
) -> Result<(Vec<LabelRow>, Vec<Decision>)> {
    let mut table = vec![row0.with_level(0)];
    let mut trace = Vec::new();
    let mut cursor = strategy.cursor();
    while table.len() < rows {
        let last = table.len() - 1;
        let prev = last.checked_sub(1).map(|p| &table[p]);
        let adv = advance_level(&table[last], prev, &mut cursor)
            .map_err(|u| Error::Domain(format!("strategy exhausted at level {}", u.context.level)))?;
        trace.extend(adv.decisions);
        table.push(adv.next);
    }
    Ok((table, trace))
}

/// All ways to label the next level, `α` before `β` at every decision.
///
/// Returns the expansions and the number of decision-tree nodes created
/// (one per option taken).
pub fn expand_level(row: &LabelRow, prev: Option<&LabelRow>) -> (Vec<Advance>, usize) {
    fn go(
        row: &LabelRow,
        prev: Option<&LabelRow>,
        prefix: &mut Vec<Choice>,
        out: &mut Vec<Advance>,
        nodes: &mut usize,
    ) {
        let mut pos = 0;
        let mut replay = |_: &DecisionContext| {
            let c = prefix.get(pos).copied();
            pos += 1;
            c
        };
        match advance_level(row, prev, &mut replay) {
            Ok(adv) => out.push(adv),
            Err(_) => {
                for c in [Choice::Alpha, Choice::Beta] {
                    *nodes += 1;
                    prefix.push(c);
                    go(row, prev, prefix, out, nodes);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut nodes = 0;
    go(row, prev, &mut Vec::new(), &mut out, &mut nodes);
    (out, nodes)
}
