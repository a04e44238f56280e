//! Pebbling numbers by exhaustive enumeration of configurations.

mod enumerate;
mod search;
mod tree;

pub use enumerate::{
    binomial, config_count, enumerate_configs, multisets, next_composition, rank, unrank,
    Compositions,
};
pub use search::{
    find_unsolvable_witness, pi_d, pi_d_ascending, pi_t, scan_unsolvable,
    verify_target_conjecture, DemandClasses, PiResult, PiTResult, Roots, ScanResult,
    SearchOptions, TargetReport, WitnessResult, DEFAULT_BUDGET,
};
pub use tree::{tree_max_unsolvable, tree_pi_exact, tree_reach};
