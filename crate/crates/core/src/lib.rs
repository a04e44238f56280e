//! Exact graph pebbling.
//!
//! * [`graph`]: immutable graphs with cached distances, connectivity and
//!   simplicial vertices.
//! * [`families`]: Kneser graphs, 2-paths, trees and spinal trees.
//! * [`engine`]: configurations, pebbling steps and exact solvability.
//! * [`formulas`]: closed forms and extremal configurations.
//! * [`numbers`]: pebbling numbers and unsolvable witnesses by exhaustive
//!   enumeration.
//! * [`symmetry`]: automorphisms and orbit representatives for small graphs.

pub mod engine;
pub mod error;
pub mod families;
mod flow;
pub mod formulas;
pub mod graph;
pub mod numbers;
pub mod symmetry;

pub use engine::{Configuration, Distribution, SearchMode, Solution, SolveOutcome, Solver};
pub use error::{Error, Result};
pub use graph::{Graph, Metrics};
