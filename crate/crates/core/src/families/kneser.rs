use crate::error::{Error, Result};
use crate::graph::Graph;

/// The Kneser graph `K(m, h)`: `h`-subsets of `{1..m}` in lexicographic
/// order, adjacent when disjoint. Vertices are labeled like `{1,2}`.
pub fn kneser(m: usize, h: usize) -> Result<Graph> {
    if h == 0 || m < 2 * h + 1 {
        return Err(Error::InvalidParameters(format!(
            "K({m},{h}) needs h >= 1 and m >= 2h + 1"
        )));
    }
    if m > 64 {
        return Err(Error::InvalidParameters(format!("m = {m} exceeds 64")));
    }
    let subsets = subsets_lex(m, h);
    let masks: Vec<u64> = subsets
        .iter()
        .map(|s| s.iter().fold(0u64, |acc, &x| acc | (1u64 << (x - 1))))
        .collect();
    let mut edges = Vec::new();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                edges.push((i, j));
            }
        }
    }
    let labels = subsets
        .iter()
        .map(|s| {
            let inner: Vec<String> = s.iter().map(usize::to_string).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    Graph::with_labels(subsets.len(), &edges, labels)
}

/// The `h`-subsets of `{1..m}` in lexicographic order.
pub fn subsets_lex(m: usize, h: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=h).collect();
    if h > m {
        return out;
    }
    loop {
        out.push(current.clone());
        // Find the rightmost element that can still grow.
        let Some(i) = (0..h).rev().find(|&i| current[i] < m - (h - 1 - i)) else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..h {
            current[j] = current[j - 1] + 1;
        }
    }
}
