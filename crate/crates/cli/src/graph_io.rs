//! Reading and writing graph files.

use std::path::Path;

use anyhow::{Context, Result};
use pebblekit::Graph;

use crate::report::write_atomic;

/// A loaded graph plus any warnings raised while reading it.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

pub fn parse_graph(text: &str, origin: &str) -> Result<Loaded> {
    let (graph, dups) = Graph::from_json(text).with_context(|| format!("loading {origin}"))?;
    let mut warnings = Vec::new();
    if dups > 0 {
        warnings.push(format!("{origin}: merged {dups} duplicate edge(s)"));
    }
    Ok(Loaded { graph, warnings })
}

pub fn read_graph(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text, &path.display().to_string())
}

/// Sorted edges, UTF-8, one trailing LF.
pub fn graph_text(g: &Graph) -> String {
    let mut s = g.to_json();
    s.push('\n');
    s
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    write_atomic(path, &graph_text(g))
}
