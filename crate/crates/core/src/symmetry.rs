//! Automorphisms of small graphs and the orbits they induce on demands.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Hard cap on the group size; enough for the Kneser graphs used here.
pub const MAX_AUTOMORPHISMS: usize = 1 << 20;

/// All automorphisms as image vectors (`p[v]` is the image of `v`), the
/// identity first and the rest in lexicographic order.
pub fn automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let profile: Vec<Vec<u32>> = (0..n)
        .map(|v| {
            let mut row = g.metrics().row(v).to_vec();
            row.sort_unstable();
            row
        })
        .collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(g, &profile, 0, &mut image, &mut used, &mut out)?;
    Ok(out)
}

fn extend(
    g: &Graph,
    profile: &[Vec<u32>],
    v: usize,
    image: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let n = g.n();
    if v == n {
        if out.len() == MAX_AUTOMORPHISMS {
            return Err(Error::BudgetExceeded {
                budget: MAX_AUTOMORPHISMS as u64,
            });
        }
        out.push(image.to_vec());
        return Ok(());
    }
    for w in 0..n {
        if used[w] || profile[w] != profile[v] {
            continue;
        }
        // Automorphisms preserve distances, which subsumes adjacency.
        if (0..v).any(|u| g.dist(u, v) != g.dist(image[u], w)) {
            continue;
        }
        image[v] = w;
        used[w] = true;
        extend(g, profile, v + 1, image, used, out)?;
        used[w] = false;
        image[v] = usize::MAX;
    }
    Ok(())
}

/// The automorphisms fixing every vertex in `fixed`.
pub fn stabilizer(group: &[Vec<usize>], fixed: &[usize]) -> Vec<Vec<usize>> {
    group
        .iter()
        .filter(|p| fixed.iter().all(|&v| p[v] == v))
        .cloned()
        .collect()
}

/// Vertex orbits, each sorted, ordered by least element.
pub fn vertex_orbits(group: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let orbit: BTreeSet<usize> = group.iter().map(|p| p[v]).chain([v]).collect();
        for &w in &orbit {
            seen[w] = true;
        }
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    let group = automorphisms(g)?;
    Ok(vertex_orbits(&group, g.n()).len() == 1)
}

/// Orbits of unordered pairs `{u, v}` with `u <= v` (so `u == v` stands for
/// two pebbles on one vertex), each sorted, ordered by least element.
pub fn pair_orbits(group: &[Vec<usize>], n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for u in 0..n {
        for v in u..n {
            if seen.contains(&(u, v)) {
                continue;
            }
            let orbit: BTreeSet<(usize, usize)> = group
                .iter()
                .map(|p| (p[u].min(p[v]), p[u].max(p[v])))
                .chain([(u, v)])
                .collect();
            seen.extend(orbit.iter().copied());
            orbits.push(orbit.into_iter().collect());
        }
    }
    orbits
}

/// Applies `p` to a count vector: the count on `v` moves to `p[v]`.
pub fn permute_counts(p: &[usize], counts: &[u32]) -> Vec<u32> {
    let mut out = vec![0; counts.len()];
    for (v, &c) in counts.iter().enumerate() {
        out[p[v]] = c;
    }
    out
}
