//! Vertex attack tolerance (VAT) and comparison resilience measures.
//!
//! VAT scores a graph by its worst targeted node attack:
//!
//! ```text
//! τ(G) = min over S ⊂ V of |S| / (|V − S − C_max(V − S)| + 1)
//! ```
//!
//! where `C_max(V − S)` is the largest component left after removing `S`.
//! The crate computes it exactly by enumeration ([`measures::BruteForce`]) or
//! branch-and-bound ([`exact`]), and bounds it from above on large graphs with
//! a genetic search followed by contraction-seeded hill climbing
//! ([`heuristic`]). Conductance, vertex expansion, integrity, toughness,
//! tenacity and the scattering number are available for comparison.
//!
//! ```
//! use vat_core::{generators, measures};
//!
//! let star = generators::gen_star(10)?;
//! let res = measures::brute_force_optimize(&star, measures::MeasureKind::Vat)?;
//! assert_eq!(res.value, measures::Value::new(1, 9));
//! assert_eq!(res.witness.labels(), vec![1]);
//! # Ok::<(), vat_core::Error>(())
//! ```

pub mod error;
pub mod exact;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod heuristic;
mod mask;
pub mod measures;
pub mod record;
pub mod rng;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{Graph, PartitionStats};
pub use measures::{MeasureKind, MeasureResult, Value};
pub use vertex_set::VertexSet;

// The guide under book/ is compiled as doc-tests so its snippets stay current.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub struct Graphs;
    #[doc = include_str!("../../../book/src/measures.md")]
    pub struct Measures;
    #[doc = include_str!("../../../book/src/generators.md")]
    pub struct Generators;
    #[doc = include_str!("../../../book/src/exact.md")]
    pub struct Exact;
    #[doc = include_str!("../../../book/src/heuristics.md")]
    pub struct Heuristics;
    #[doc = include_str!("../../../book/src/experiments.md")]
    pub struct Experiments;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
