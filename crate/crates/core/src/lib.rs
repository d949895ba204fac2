//! Perfect dominating sets in grid graphs `Γ(m,n)` and band graphs `Γ(m,∞)`.
//!
//! A set `S` of vertices is a perfect dominating set (PDS) when every vertex
//! outside `S` has exactly one neighbour in `S`. Starting from an admissible
//! top row, the level-by-level labelling engine in [`theta`] extends a partial
//! solution one row at a time, asking a strategy at each binary decision.
//!
//! * [`initial`] classifies top rows and builds the first label row.
//! * [`theta`] runs the engine under a strategy and records decision traces.
//! * [`search`] walks the whole decision tree and collects every PDS.
//! * [`oracle`] enumerates PDSs and total perfect codes by brute force.
//! * [`band`] follows strategies into the band graph and builds the transition graph.
//! * [`codec`] turns a PDS into its array of room and ladder sizes.
//! * [`tpc`] builds total perfect codes and the lattice code window.
//! * [`render`] and [`figures`] produce text, SVG and the reference tables.

pub mod band;
pub mod codec;
pub mod error;
pub mod figures;
pub mod grid;
pub mod initial;
pub mod label;
pub mod oracle;
pub mod render;
pub mod search;
pub mod solution;
pub mod theta;
pub mod tpc;

pub use error::{Error, Result};
pub use grid::{components_are_rectangles, is_pds, GridDims, Vertex, VertexSet};
pub use initial::{classify_initial, InitialClass, InitialCondition};
pub use label::LabelRow;
pub use solution::PdsSolution;
pub use theta::{run_theta, Choice, Decision, DecisionKind, Strategy, ThetaOutcome};
