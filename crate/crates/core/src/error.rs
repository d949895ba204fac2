use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("column index {index} out of range for width m={m}")]
    ColumnOutOfRange { index: usize, m: usize },

    #[error("vertex ({i},{j}) lies outside a {m}x{n} grid")]
    VertexOutOfRange { i: usize, j: usize, m: usize, n: usize },

    #[error("invalid grid dimensions: {0}")]
    Dimensions(String),

    #[error("invalid label row: {0}")]
    LabelRow(String),

    #[error("initial condition is {0:?}, expected an incomplete admissible subset")]
    NotIavs(crate::initial::InitialClass),

    #[error("oracle refuses a {m}x{n} grid: m*n exceeds the cap of {cap}")]
    OracleCap { m: usize, n: usize, cap: usize },

    #[error("vertex set is not a perfect dominating set: {0}")]
    NotPds(String),

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("transition graph is incomplete (state cap {0} reached)")]
    IncompleteGraph(usize),

    #[error("row cap {0} reached before the run completed or repeated")]
    RowCap(usize),

    #[error("parameter outside supported domain: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
