//! Finished perfect dominating sets together with the decisions that built them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridDims, Vertex, VertexSet};
use crate::label::LabelRow;
use crate::theta::{Choice, Decision, DecisionContext, DecisionKind};

/// A PDS in a finite grid and the decision trace that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdsSolution {
    pub vertices: VertexSet,
    pub trace: Vec<Decision>,
}

impl PdsSolution {
    /// Collects the `2`-labelled positions of `rows`.
    pub fn from_rows(rows: &[LabelRow], trace: Vec<Decision>) -> Result<Self> {
        let m = rows.first().map(LabelRow::m).ok_or_else(|| Error::LabelRow("no rows".into()))?;
        let masks = rows.iter().map(LabelRow::member_mask).collect();
        Ok(PdsSolution { vertices: VertexSet::from_row_masks(m, masks)?, trace })
    }

    pub fn dims(&self) -> GridDims {
        self.vertices.dims()
    }

    pub fn m(&self) -> usize {
        self.vertices.m()
    }

    pub fn n(&self) -> usize {
        self.vertices.n()
    }

    pub fn to_json(&self) -> SolutionJson {
        SolutionJson {
            m: self.m(),
            n: self.n(),
            s: self.vertices.iter().map(|v| [v.i, v.j]).collect(),
            trace: self.trace.iter().map(TraceEntry::from).collect(),
        }
    }

    pub fn from_json(json: &SolutionJson) -> Result<Self> {
        let vertices = VertexSet::from_vertices(json.m, json.n, json.s.iter().map(|&[i, j]| Vertex::new(i, j)))?;
        let trace = json.trace.iter().map(Decision::try_from).collect::<Result<_>>()?;
        Ok(PdsSolution { vertices, trace })
    }

    /// One decision per line, `j=.. step=.. kind=.. i=.. k=.. opt=..`.
    pub fn trace_text(&self) -> String {
        trace_text(&self.trace)
    }
}

pub fn trace_text(trace: &[Decision]) -> String {
    trace.iter().map(|d| format!("{d}\n")).collect()
}

/// Wire form of a [`PdsSolution`]; the vertex list is row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub m: usize,
    pub n: usize,
    pub s: Vec<[usize; 2]>,
    pub trace: Vec<TraceEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub j: usize,
    pub step: String,
    pub kind: String,
    /// Absent (`null`) for Step 3 decisions.
    pub i: Option<usize>,
    pub k: usize,
    pub opt: String,
    /// Positions `α` labels `2`; derived from `i` and `k` when absent.
    #[serde(default)]
    pub run: Option<usize>,
    /// Label above the first written position, when there is a row above.
    #[serde(default)]
    pub prev: Option<u8>,
}

impl From<&Decision> for TraceEntry {
    fn from(d: &Decision) -> Self {
        TraceEntry {
            j: d.ctx.level,
            step: d.ctx.step.to_string(),
            kind: d.ctx.kind.to_string(),
            i: d.ctx.i,
            k: d.ctx.k,
            opt: d.choice.letter().to_string(),
            run: Some(d.ctx.run),
            prev: d.ctx.prev_label,
        }
    }
}

impl TryFrom<&TraceEntry> for Decision {
    type Error = Error;

    fn try_from(e: &TraceEntry) -> Result<Self> {
        let step = match e.step.as_str() {
            "3" => 3,
            "4" => 4,
            s => return Err(Error::Parse(format!("step {s:?}"))),
        };
        let kind = match e.kind.as_str() {
            "BOD" => DecisionKind::Bod,
            "BID" => DecisionKind::Bid,
            s => return Err(Error::Parse(format!("kind {s:?}"))),
        };
        let choice = match e.opt.as_str() {
            "a" => Choice::Alpha,
            "b" => Choice::Beta,
            s => return Err(Error::Parse(format!("opt {s:?}"))),
        };
        let run = e.run.unwrap_or(match e.i {
            Some(i) => e.k.saturating_sub(i + 1),
            None => e.k,
        });
        Ok(Decision {
            ctx: DecisionContext { level: e.j, step, kind, i: e.i, k: e.k, run, prev_label: e.prev },
            choice,
        })
    }
}
