//! Spinal trees: distance-preserving spanning trees of a 2-path built as
//! unions of caterpillars around a chosen root.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::tree::RootedTree;
use crate::families::two_path::TwoPath;

/// How a root sits in its 2-path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    /// One of the two simplicial vertices.
    Simplicial,
    /// On the spine of some representation.
    Spinal,
    /// Off every spine, in two fans.
    NonSpinalTwoFans,
    /// Off every spine, in a single fan.
    NonSpinalOneFan,
}

impl RootKind {
    pub fn is_spinal(self) -> bool {
        matches!(self, Self::Simplicial | Self::Spinal)
    }
}

/// The spinal tree `T_r` with its caterpillar decomposition.
#[derive(Debug, Clone)]
pub struct SpinalTree {
    pub tree: RootedTree,
    pub kind: RootKind,
    /// The representation used: spine through `r` when `r` is spinal.
    pub representation: TwoPath,
    /// Caterpillars whose union is the tree, as edge lists `(parent, child)`.
    /// Simplicial roots have one part; spinal roots have one part per end
    /// plus one single edge per fan vertex unique to the root's fan.
    pub parts: Vec<Vec<(usize, usize)>>,
}

/// Builds `T_r` for the 2-path `tp`.
pub fn spinal_tree(tp: &TwoPath, r: usize) -> Result<SpinalTree> {
    let g = tp.graph();
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r, n: g.n() });
    }
    let d = tp.diameter();
    let (s1, s2) = tp.ends();
    let spinal = (g.dist(s1, r) + g.dist(r, s2)) as usize == d;

    let rep = if spinal && tp.spine_index(r).is_none() {
        let spine = geodesic_through(tp, r);
        TwoPath::from_spine(g.clone(), spine)?
    } else {
        tp.clone()
    };
    let kind = if r == s1 || r == s2 {
        RootKind::Simplicial
    } else if spinal {
        RootKind::Spinal
    } else {
        match rep.fans_containing(r).len() {
            2 => RootKind::NonSpinalTwoFans,
            1 => RootKind::NonSpinalOneFan,
            k => {
                return Err(Error::NotTwoPath(format!(
                    "non-spinal vertex {r} lies in {k} fans"
                )))
            }
        }
    };

    let (leg1, leg2) = find_legs(&rep, r).ok_or_else(|| {
        Error::NotTwoPath(format!("no caterpillar legs from {r}"))
    })?;
    let n = g.n();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut on_leg = vec![false; n];
    for leg in [&leg1, &leg2] {
        on_leg[leg[0]] = true;
        for w in leg.windows(2) {
            parent[w[1]] = Some(w[0]);
            on_leg[w[1]] = true;
        }
    }
    let dist_r = g.metrics().row(r);
    for v in 0..n {
        if !on_leg[v] {
            parent[v] = g
                .neighbors(v)
                .iter()
                .copied()
                .find(|&u| on_leg[u] && dist_r[u] + 1 == dist_r[v]);
        }
    }
    let tree = RootedTree::from_parents(&parent)?;
    let parts = caterpillar_parts(&rep, r, kind, &parent, &leg1, &leg2);
    Ok(SpinalTree {
        tree,
        kind,
        representation: rep,
        parts,
    })
}

/// Shortest paths from `r` to `end`, spine vertices of `tp` tried first.
fn geodesics(tp: &TwoPath, r: usize, end: usize, limit: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = vec![r];
    fn walk(tp: &TwoPath, end: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let g = tp.graph();
        let v = *path.last().expect("nonempty");
        if v == end {
            out.push(path.clone());
            return;
        }
        let mut next: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| g.dist(u, end) + 1 == g.dist(v, end))
            .collect();
        next.sort_by_key(|&u| (tp.spine_index(u).is_none(), u));
        for u in next {
            path.push(u);
            walk(tp, end, path, out, limit);
            path.pop();
        }
    }
    walk(tp, end, &mut path, &mut out, limit);
    out
}

/// Two geodesics from `r` to the ends that form a tree together (a common
/// prefix, then disjoint) and carry every other vertex as a leaf one step
/// farther from `r`. Among those, the pair with the shortest branches.
fn find_legs(tp: &TwoPath, r: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    const LIMIT: usize = 1 << 12;
    let g = tp.graph();
    let (s1, s2) = tp.ends();
    let dist_r = g.metrics().row(r);
    let firsts = geodesics(tp, r, s1, LIMIT);
    let seconds = geodesics(tp, r, s2, LIMIT);
    let mut on_leg = vec![false; g.n()];
    let mut best: Option<((usize, usize), usize, usize)> = None;
    for (i, a) in firsts.iter().enumerate() {
        for (j, b) in seconds.iter().enumerate() {
            let shared = a.iter().zip(b).take_while(|(x, y)| x == y).count();
            if a[shared..].iter().any(|v| b[shared..].contains(v)) {
                continue;
            }
            on_leg.iter_mut().for_each(|x| *x = false);
            for &v in a.iter().chain(b) {
                on_leg[v] = true;
            }
            let covered = (0..g.n()).all(|v| {
                on_leg[v]
                    || g.neighbors(v)
                        .iter()
                        .any(|&u| on_leg[u] && dist_r[u] + 1 == dist_r[v])
            });
            if !covered {
                continue;
            }
            // Branch lengths below the divergence point, larger first.
            let (la, lb) = (a.len() - 1, b.len() - 1);
            let key = (la.max(lb), la.min(lb) + 1 - shared);
            if best.map_or(true, |(k, _, _)| key < k) {
                best = Some((key, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (firsts[i].clone(), seconds[j].clone()))
}

/// A shortest `x_0, x_d` path through `r`, preferring the given spine and
/// then smaller indices.
fn geodesic_through(tp: &TwoPath, r: usize) -> Vec<usize> {
    let g = tp.graph();
    let (s1, s2) = tp.ends();
    let mut path = vec![r];
    for (end, front) in [(s1, true), (s2, false)] {
        let mut leg = Vec::new();
        let mut v = r;
        while v != end {
            let next = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| g.dist(u, end) + 1 == g.dist(v, end))
                .min_by_key(|&u| (tp.spine_index(u).is_none(), u))
                .expect("geodesic step");
            leg.push(next);
            v = next;
        }
        if front {
            leg.reverse();
            leg.extend(path);
            path = leg;
        } else {
            path.extend(leg);
        }
    }
    path
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    First,
    Second,
    Both,
    Own,
}

fn caterpillar_parts(
    rep: &TwoPath,
    r: usize,
    kind: RootKind,
    parent: &[Option<usize>],
    leg1: &[usize],
    leg2: &[usize],
) -> Vec<Vec<(usize, usize)>> {
    let n = parent.len();
    let tree_edges = (0..n).filter_map(|v| parent[v].map(|p| (p, v)));
    if kind == RootKind::Simplicial {
        return vec![tree_edges.collect()];
    }
    let shared = leg1.iter().zip(leg2).take_while(|(x, y)| x == y).count();
    // Which side a leaf hanging directly on r belongs to.
    let side_of_root_leaf = |v: usize| -> Side {
        let fans = rep.fans_containing(v);
        let lo = fans.iter().min().copied();
        match kind {
            RootKind::Spinal => {
                let i = rep.spine_index(r).expect("spinal root on spine");
                if let Some(j) = rep.spine_index(v) {
                    return if j < i { Side::First } else { Side::Second };
                }
                if fans == [i] {
                    Side::Own
                } else if lo.unwrap_or(i) < i {
                    Side::First
                } else {
                    Side::Second
                }
            }
            _ => {
                let i = *rep.fans_containing(r).first().expect("root fans");
                match rep.spine_index(v) {
                    Some(j) if j <= i => Side::First,
                    Some(_) => Side::Second,
                    None if lo.unwrap_or(i) < i => Side::First,
                    None => Side::Second,
                }
            }
        }
    };
    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut own = Vec::new();
    for (p, v) in tree_edges {
        let side = if leg1[..shared].contains(&v) {
            Side::Both
        } else if leg1.contains(&v) {
            Side::First
        } else if leg2.contains(&v) {
            Side::Second
        } else if p == r {
            side_of_root_leaf(v)
        } else if leg1.contains(&p) {
            Side::First
        } else {
            Side::Second
        };
        match side {
            Side::First => first.push((p, v)),
            Side::Second => second.push((p, v)),
            Side::Both => {
                first.push((p, v));
                second.push((p, v));
            }
            Side::Own => own.push(vec![(p, v)]),
        }
    }
    let mut parts = vec![first, second];
    parts.extend(own);
    parts
}
