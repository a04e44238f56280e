//! Independent reference implementations used as test oracles. None of
//! these share code with the library beyond the graph type.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use pebblekit::families::RootedTree;
use pebblekit::Graph;
use rand::Rng;

/// Plain memoized search over every legal step, no pruning at all.
pub fn naive_solvable(g: &Graph, c: &[u32], d: &[u32]) -> bool {
    fn go(g: &Graph, c: &mut Vec<u32>, d: &[u32], memo: &mut HashMap<Vec<u32>, bool>) -> bool {
        if c.iter().zip(d).all(|(a, b)| a >= b) {
            return true;
        }
        if let Some(&v) = memo.get(c.as_slice()) {
            return v;
        }
        let mut ok = false;
        'outer: for u in 0..g.n() {
            if c[u] < 2 {
                continue;
            }
            for &v in g.neighbors(u) {
                c[u] -= 2;
                c[v] += 1;
                let r = go(g, c, d, memo);
                c[u] += 2;
                c[v] -= 1;
                if r {
                    ok = true;
                    break 'outer;
                }
            }
        }
        memo.insert(c.clone(), ok);
        ok
    }
    go(g, &mut c.to_vec(), d, &mut HashMap::new())
}

/// Fewest steps putting a pebble on `r`, by breadth-first search over
/// configurations.
pub fn naive_min_moves(g: &Graph, c: &[u32], r: usize) -> Option<usize> {
    let mut seen = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(c.to_vec(), 0usize);
    queue.push_back(c.to_vec());
    while let Some(cur) = queue.pop_front() {
        let depth = seen[&cur];
        if cur[r] >= 1 {
            return Some(depth);
        }
        for u in 0..g.n() {
            if cur[u] < 2 {
                continue;
            }
            for &v in g.neighbors(u) {
                let mut next = cur.clone();
                next[u] -= 2;
                next[v] += 1;
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), depth + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

/// All weak compositions of `m` into `n` parts, built recursively.
pub fn naive_compositions(n: usize, m: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![m]];
    }
    let mut out = Vec::new();
    for first in (0..=m).rev() {
        for rest in naive_compositions(n - 1, m - first) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// Every root-path partition of a rooted tree, each as a non-increasing
/// length vector. A partition is fixed by which child (if any) each
/// non-root vertex continues its path through.
pub fn all_path_partitions(t: &RootedTree) -> Vec<Vec<u32>> {
    let n = t.n();
    let inner: Vec<usize> = (0..n).filter(|&v| v != t.root()).collect();
    let mut choice = vec![0usize; inner.len()];
    let mut out = Vec::new();
    loop {
        // choice[i] = 0 ends the path at inner[i]; k > 0 continues into
        // the k-th child.
        let mut cont = vec![None; n];
        for (i, &v) in inner.iter().enumerate() {
            if choice[i] > 0 {
                cont[v] = Some(t.children(v)[choice[i] - 1]);
            }
        }
        let mut continued = vec![false; n];
        for c in cont.iter().flatten() {
            continued[*c] = true;
        }
        let mut lengths = Vec::new();
        for &v in &inner {
            if continued[v] {
                continue;
            }
            // v starts a path hanging from its parent.
            let mut len = 1;
            let mut cur = v;
            while let Some(next) = cont[cur] {
                len += 1;
                cur = next;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        out.push(lengths);
        let mut i = 0;
        loop {
            if i == inner.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] <= t.children(inner[i]).len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Size of a smallest vertex set whose removal disconnects the graph, or
/// `n - 1` for complete graphs. Tries subsets in order of size.
pub fn brute_vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if g.is_complete() {
        return n - 1;
    }
    for k in 0..n {
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let mut removed = vec![false; n];
            for &v in &subset {
                removed[v] = true;
            }
            if !connected_without(g, &removed) {
                return k;
            }
            // Next k-subset in lexicographic order.
            let Some(i) = (0..k).rev().find(|&i| subset[i] < n - k + i) else {
                break;
            };
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    n - 1
}

fn connected_without(g: &Graph, removed: &[bool]) -> bool {
    let Some(start) = (0..g.n()).find(|&v| !removed[v]) else {
        return true;
    };
    let mut seen = removed.to_vec();
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Every vertex permutation preserving adjacency, by trying all `n!`.
pub fn brute_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    fn permute(k: usize, p: &mut Vec<usize>, g: &Graph, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            if g.edges().iter().all(|&(u, v)| g.adjacent(p[u], p[v])) {
                out.push(p.clone());
            }
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(k + 1, p, g, out);
            p.swap(k, i);
        }
    }
    let mut out = Vec::new();
    permute(0, &mut (0..g.n()).collect(), g, &mut out);
    out.sort();
    out
}

/// A connected graph: a random spanning tree plus extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges, None).expect("connected").0
}

pub fn random_counts(rng: &mut impl Rng, n: usize, max: u32) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..=max)).collect()
}

/// `m` pebbles dropped on uniformly random vertices.
pub fn random_config_of_size(rng: &mut impl Rng, n: usize, m: u32) -> Vec<u32> {
    let mut c = vec![0u32; n];
    for _ in 0..m {
        c[rng.gen_range(0..n)] += 1;
    }
    c
}
