//! Anti-Ramsey numbers of forests.
//!
//! The anti-Ramsey number `ar(K_n, F)` is the maximum number of colors in an
//! edge-coloring of the complete graph `K_n` that contains no rainbow copy of
//! `F` (a subgraph all of whose edges receive distinct colors). This crate
//! covers the forest families for which exact or near-exact values are known:
//!
//! * [`formulas`] — closed-form `ar` and Turán (`ex`) evaluators for stars,
//!   star forests, linear forests, matchings, double stars and spiders, each
//!   tagged with its validity range;
//! * [`construct`] — deterministic generators for the extremal rainbow-free
//!   colorings behind the lower bounds, paired with machine-checkable
//!   certificates;
//! * [`detect`] — exact rainbow-forest detection in an edge-colored `K_n`;
//! * [`oracle`] — a branch-and-bound search that computes `ar(K_n, F)`
//!   exactly for tiny `n` by canonical enumeration of edge colorings;
//! * [`graph`] / [`coloring`] — the underlying graphs, matching numbers and
//!   color-analysis primitives (palettes, stared colors, representing
//!   subgraphs).
//!
//! The oracle and batch verification campaigns parallelize with rayon when
//! the default `parallel` feature is enabled; without it every entry point
//! falls back to the identical sequential code path.

pub mod coloring;
pub mod construct;
pub mod detect;
pub mod forest;
pub mod formulas;
pub mod graph;
pub mod oracle;

mod exec;

pub use coloring::EdgeColoring;
pub use forest::{ForestKind, ForestSpec, SpiderSpec};
pub use formulas::{ar_formula, ex_formula, FormulaConfig, FormulaResult, FormulaStatus};

/// Number of unordered pairs of a set of `x` elements.
pub(crate) fn binom2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}
