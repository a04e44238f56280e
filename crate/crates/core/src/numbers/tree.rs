//! Exact `pi_t(T, r)` on trees without enumeration.
//!
//! On a tree the most pebbles that can reach the root is obtained by pushing
//! everything toward it: a vertex holding `a` (its own pebbles plus what its
//! children send) forwards `floor(a / 2)`. The largest configuration that
//! delivers fewer than `t` is then a knapsack over subtrees.

use crate::engine::Configuration;
use crate::error::{Error, Result};
use crate::families::RootedTree;

/// Pebbles reaching the root when every vertex forwards all it can.
pub fn tree_reach(tree: &RootedTree, counts: &[u32]) -> u64 {
    let mut order: Vec<usize> = (0..tree.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(tree.depth(v)));
    let mut a: Vec<u64> = counts.iter().map(|&c| u64::from(c)).collect();
    for v in order {
        if let Some(p) = tree.parent(v) {
            a[p] += a[v] / 2;
        }
    }
    a[tree.root()]
}

struct Table {
    // best[k]: most pebbles in the subtree with at most k arriving at its top.
    best: Vec<u64>,
    // prefix[i][k]: best split of budget k among the first i children.
    prefix: Vec<Vec<u64>>,
}

fn solve(tree: &RootedTree, v: usize, cap: usize, tables: &mut Vec<Option<Table>>) {
    let children = tree.children(v).to_vec();
    let child_cap = 2 * cap + 1;
    for &w in &children {
        solve(tree, w, child_cap, tables);
    }
    // Sending j pebbles up from child w costs j of our budget and lets w's
    // subtree hold best_w(2j + 1).
    let mut prefix = vec![vec![0u64; cap + 1]];
    for &w in &children {
        let bw = &tables[w].as_ref().expect("child solved").best;
        let prev = prefix.last().expect("base row");
        let mut row = vec![0u64; cap + 1];
        for k in 0..=cap {
            row[k] = (0..=k)
                .map(|j| prev[k - j] + bw[2 * j + 1] - j as u64)
                .max()
                .expect("nonempty range");
        }
        prefix.push(row);
    }
    let last = prefix.last().expect("base row");
    let best = (0..=cap).map(|k| k as u64 + last[k]).collect();
    tables[v] = Some(Table { best, prefix });
}

fn rebuild(tree: &RootedTree, v: usize, k: usize, tables: &[Option<Table>], out: &mut [u32]) {
    let table = tables[v].as_ref().expect("solved");
    let children = tree.children(v);
    let mut budget = k;
    let mut sends = vec![0usize; children.len()];
    for i in (0..children.len()).rev() {
        let bw = &tables[children[i]].as_ref().expect("solved").best;
        let target = table.prefix[i + 1][budget];
        let j = (0..=budget)
            .find(|&j| table.prefix[i][budget - j] + bw[2 * j + 1] - j as u64 == target)
            .expect("knapsack choice");
        sends[i] = j;
        budget -= j;
    }
    out[v] = (k - sends.iter().sum::<usize>()) as u32;
    for (i, &w) in children.iter().enumerate() {
        rebuild(tree, w, 2 * sends[i] + 1, tables, out);
    }
}

/// A largest configuration from which fewer than `t` pebbles reach the root.
pub fn tree_max_unsolvable(tree: &RootedTree, t: u32) -> Result<Configuration> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    let height = tree.heights()[tree.root()];
    if height >= 24 || u64::from(t) << height > 1 << 26 {
        return Err(Error::InvalidParameters("tree too deep for the exact table".into()));
    }
    let cap = (t - 1) as usize;
    let mut tables = (0..tree.n()).map(|_| None).collect();
    solve(tree, tree.root(), cap, &mut tables);
    let mut out = vec![0u32; tree.n()];
    rebuild(tree, tree.root(), cap, &tables, &mut out);
    Ok(Configuration::new(out))
}

/// Exact `pi_t(T, r)`: one more than the largest unsolvable configuration.
pub fn tree_pi_exact(tree: &RootedTree, t: u32) -> Result<u64> {
    Ok(tree_max_unsolvable(tree, t)?.size() + 1)
}
