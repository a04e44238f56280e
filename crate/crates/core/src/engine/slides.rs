use crate::engine::config::Configuration;
use crate::graph::Graph;

/// All maximal slides with at most `max_len` vertices (defaults to `n`).
///
/// A slide is a simple path `v_1..v_k`, `k >= 2`, with `C(v_1) >= 2` and
/// `C(v_i) >= 1` for every interior vertex. It is maximal when it cannot be
/// extended past `v_k`. Output is ordered by start vertex, then by
/// neighbor index along the path.
pub fn find_slides(g: &Graph, c: &Configuration, max_len: Option<usize>) -> Vec<Vec<usize>> {
    let cap = max_len.unwrap_or(g.n()).max(2);
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    for start in 0..g.n() {
        if c[start] < 2 {
            continue;
        }
        let mut path = vec![start];
        on_path[start] = true;
        extend(g, c, cap, &mut path, &mut on_path, &mut out);
        on_path[start] = false;
    }
    out
}

fn extend(
    g: &Graph,
    c: &Configuration,
    cap: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("nonempty path");
    let can_continue = path.len() == 1 || c[last] >= 1;
    let mut extended = false;
    if can_continue && path.len() < cap {
        for &v in g.neighbors(last) {
            if on_path[v] {
                continue;
            }
            extended = true;
            path.push(v);
            on_path[v] = true;
            extend(g, c, cap, path, on_path, out);
            on_path[v] = false;
            path.pop();
        }
    }
    if !extended && path.len() >= 2 {
        out.push(path.clone());
    }
}
