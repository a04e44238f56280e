//! Graph families: Kneser graphs, 2-paths, rooted trees and spinal trees.

mod kneser;
mod spinal;
mod tree;
mod two_path;

pub use kneser::{kneser, subsets_lex};
pub use spinal::{spinal_tree, RootKind, SpinalTree};
pub use tree::{max_path_partition, random_tree, RootedTree};
pub use two_path::{is_two_path, FanSpec, TwoPath};

use crate::error::Result;
use crate::graph::Graph;

/// Path on `n` vertices `0 - 1 - .. - (n-1)`.
pub fn path_graph(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges)
}

/// Complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}
