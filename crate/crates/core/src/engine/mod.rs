//! Configurations, distributions, pebbling steps and exact solvability.

mod config;
mod cost;
mod search;
mod slides;

pub use config::{apply_move, potential, stats, weight, Configuration, Distribution, Stats, Weight};
pub use cost::{has_solution_within, min_cost_solution, CheapestSolution};
pub use search::{is_solvable, max_fold, SearchMode, Solution, SolveOutcome, Solver};
pub use slides::find_slides;
