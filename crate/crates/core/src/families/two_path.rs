//! 2-paths (overlapping fan graphs).
//!
//! A fan `F_i` is the path `Q = x_{i-1}, v_{i,1}, .., v_{i,k_i}, x_{i+1}`
//! together with the center `x_i`, which is adjacent to all of `Q`. The
//! spine `x_0..x_d` joins the two simplicial vertices.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Fan sizes `k_1..k_{d-1}` and whether consecutive fans share a fan vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FanSpec {
    pub k: Vec<usize>,
    #[serde(default)]
    pub overlap: Vec<bool>,
}

impl FanSpec {
    pub fn new(k: Vec<usize>, overlap: Vec<bool>) -> Self {
        Self { k, overlap }
    }

    pub fn without_overlaps(k: Vec<usize>) -> Self {
        let overlap = vec![false; k.len().saturating_sub(1)];
        Self { k, overlap }
    }

    /// Diameter of the 2-path this spec describes.
    pub fn diameter(&self) -> usize {
        self.k.len() + 1
    }

    /// Vertex count: spine plus fan vertices minus shared ones.
    pub fn vertex_count(&self) -> usize {
        self.diameter() + 1 + self.k.iter().sum::<usize>() - self.shared()
    }

    fn shared(&self) -> usize {
        self.overlap.iter().filter(|&&o| o).count()
    }

    fn overlaps(&self, i: usize) -> bool {
        self.overlap.get(i).copied().unwrap_or(false)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k.is_empty() {
            return Err(Error::InvalidParameters("a 2-path spec needs at least one fan".into()));
        }
        if self.k.contains(&0) {
            return Err(Error::InvalidParameters("fan sizes must be positive".into()));
        }
        if !self.overlap.is_empty() && self.overlap.len() != self.k.len() - 1 {
            return Err(Error::InvalidParameters(format!(
                "{} fans need {} overlap flags, got {}",
                self.k.len(),
                self.k.len() - 1,
                self.overlap.len()
            )));
        }
        Ok(())
    }

    /// Every valid spec with diameter `d` and exactly `n` vertices.
    pub fn enumerate(d: usize, n: usize) -> Vec<FanSpec> {
        let mut out = Vec::new();
        if d < 2 || n < d + 2 {
            return out;
        }
        let fans = d - 1;
        for mask in 0u32..(1 << (fans - 1)) {
            let overlap: Vec<bool> = (0..fans - 1).map(|i| mask >> i & 1 == 1).collect();
            let shared = overlap.iter().filter(|&&o| o).count();
            let Some(total) = (n + shared).checked_sub(d + 1) else {
                continue;
            };
            for k in compositions(total, fans) {
                let spec = FanSpec::new(k, overlap.clone());
                if TwoPath::from_spec(&spec).is_ok() {
                    out.push(spec);
                }
            }
        }
        out
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A 2-path together with one spine and its fan decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPath {
    graph: Graph,
    spine: Vec<usize>,
    fans: Vec<Vec<usize>>,
}

impl TwoPath {
    /// Builds the overlapping fan graph described by `spec`.
    ///
    /// Spine vertices are `0..=d`; fan vertices follow in fan order.
    pub fn from_spec(spec: &FanSpec) -> Result<Self> {
        spec.validate()?;
        let d = spec.diameter();
        let mut labels: Vec<String> = (0..=d).map(|i| format!("x{i}")).collect();
        let mut edges = Vec::new();
        let mut fans: Vec<Vec<usize>> = Vec::with_capacity(d - 1);
        for i in 1..d {
            let ki = spec.k[i - 1];
            let mut members = Vec::with_capacity(ki);
            for j in 1..=ki {
                let shared_with_previous = j == 1 && i >= 2 && spec.overlaps(i - 2);
                if shared_with_previous {
                    let prev: &Vec<usize> = &fans[i - 2];
                    members.push(*prev.last().expect("nonempty fan"));
                } else {
                    members.push(labels.len());
                    labels.push(format!("v{i}.{j}"));
                }
            }
            let mut q = Vec::with_capacity(ki + 2);
            q.push(i - 1);
            q.extend(&members);
            q.push(i + 1);
            for w in q.windows(2) {
                edges.push((w[0], w[1]));
            }
            for &v in &q {
                edges.push((i, v));
            }
            fans.push(members);
        }
        let graph = Graph::with_labels(labels.len(), &edges, labels)?;
        let spine: Vec<usize> = (0..=d).collect();
        let tp = Self { graph, spine, fans };
        tp.check()?;
        Ok(tp)
    }

    /// Recovers the fans of `graph` relative to the given spine: fan `F_i`
    /// is the path from `x_{i-1}` to `x_{i+1}` through the neighborhood of
    /// `x_i`.
    pub fn from_spine(graph: Graph, spine: Vec<usize>) -> Result<Self> {
        if spine.len() < 3 {
            return Err(Error::NotTwoPath("spine needs at least 3 vertices".into()));
        }
        let d = spine.len() - 1;
        let on_spine: HashSet<usize> = spine.iter().copied().collect();
        let mut fans = Vec::with_capacity(d - 1);
        for i in 1..d {
            let center = spine[i];
            let allowed = |v: usize| {
                v == spine[i - 1] || v == spine[i + 1] || (!on_spine.contains(&v) && graph.adjacent(center, v))
            };
            let q = shortest_path_within(&graph, spine[i - 1], spine[i + 1], allowed).ok_or_else(
                || Error::NotTwoPath(format!("no fan around spine vertex {center}")),
            )?;
            fans.push(q[1..q.len() - 1].to_vec());
        }
        let tp = Self { graph, spine, fans };
        tp.check()?;
        Ok(tp)
    }

    /// Recognizes a 2-path and returns it with its canonical spine.
    pub fn recognize(g: &Graph) -> Result<Self> {
        let spine = is_two_path(g).ok_or_else(|| Error::NotTwoPath("recognition failed".into()))?;
        Self::from_spine(g.clone(), spine)
    }

    fn check(&self) -> Result<()> {
        let g = &self.graph;
        let d = self.spine.len() - 1;
        let (r, s) = (self.spine[0], self.spine[d]);
        let simplicial = g.simplicial_vertices();
        if simplicial != sorted(vec![r, s]) {
            return Err(Error::NotTwoPath(format!(
                "simplicial vertices are {simplicial:?}, expected spine ends {r} and {s}"
            )));
        }
        if g.dist(r, s) as usize != d || g.diameter() as usize != d {
            return Err(Error::NotTwoPath(format!(
                "spine length {d} but dist(r,s) = {} and diameter = {}",
                g.dist(r, s),
                g.diameter()
            )));
        }
        if self.spine.windows(2).any(|w| !g.adjacent(w[0], w[1])) {
            return Err(Error::NotTwoPath("spine is not a path".into()));
        }
        let mut covered: HashSet<usize> = self.spine.iter().copied().collect();
        for fan in &self.fans {
            covered.extend(fan);
        }
        if covered.len() != g.n() {
            return Err(Error::NotTwoPath("some vertex lies in no fan".into()));
        }
        for w in self.fans.windows(2) {
            let shared = w[0].iter().filter(|v| w[1].contains(v)).count();
            if shared > 1 {
                return Err(Error::NotTwoPath("consecutive fans share more than one vertex".into()));
            }
        }
        if is_two_path(g).is_none() {
            return Err(Error::NotTwoPath("simplicial elimination fails".into()));
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// `x_0..x_d`.
    pub fn spine(&self) -> &[usize] {
        &self.spine
    }

    pub fn diameter(&self) -> usize {
        self.spine.len() - 1
    }

    /// Fan vertices of `F_i` in path order, for `i` in `1..d`.
    pub fn fan(&self, i: usize) -> &[usize] {
        &self.fans[i - 1]
    }

    pub fn fans(&self) -> &[Vec<usize>] {
        &self.fans
    }

    /// The two simplicial vertices `(x_0, x_d)`.
    pub fn ends(&self) -> (usize, usize) {
        (self.spine[0], self.spine[self.spine.len() - 1])
    }

    /// Position of `v` on the spine.
    pub fn spine_index(&self, v: usize) -> Option<usize> {
        self.spine.iter().position(|&x| x == v)
    }

    /// Indices `i` of the fans `F_i` that have `v` as a fan vertex.
    pub fn fans_containing(&self, v: usize) -> Vec<usize> {
        (1..self.spine.len() - 1)
            .filter(|&i| self.fans[i - 1].contains(&v))
            .collect()
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// BFS path from `a` to `b` using only vertices accepted by `allowed`,
/// preferring smaller indices.
fn shortest_path_within(
    g: &Graph,
    a: usize,
    b: usize,
    allowed: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.n()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for &v in g.neighbors(u) {
            if prev[v] == usize::MAX && allowed(v) {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    if prev[b] == usize::MAX {
        return None;
    }
    let mut path = vec![b];
    while *path.last()? != a {
        path.push(prev[*path.last()?]);
    }
    path.reverse();
    Some(path)
}

/// Decides whether `g` is a 2-path by repeated simplicial elimination and
/// returns a spine (the BFS shortest path between the two simplicial
/// vertices, ties to smaller indices).
pub fn is_two_path(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let mut alive = vec![true; n];
    let mut failed = HashSet::new();
    if !eliminate(g, &mut alive, n, &mut failed) {
        return None;
    }
    let simplicial = g.simplicial_vertices();
    let (r, s) = match simplicial.len() {
        2 => (simplicial[0], simplicial[1]),
        // K2 and K3: every vertex is simplicial; take the two smallest.
        _ if g.is_complete() => (0, 1),
        _ => return None,
    };
    shortest_path_within(g, r, s, |_| true)
}

fn eliminate(g: &Graph, alive: &mut [bool], count: usize, failed: &mut HashSet<Vec<bool>>) -> bool {
    let live: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    let is_clique = live
        .iter()
        .enumerate()
        .all(|(i, &a)| live[i + 1..].iter().all(|&b| g.adjacent(a, b)));
    if count == 2 || count == 3 {
        return is_clique;
    }
    if count < 2 {
        return false;
    }
    if failed.contains(alive) {
        return false;
    }
    let simplicial: Vec<usize> = live
        .iter()
        .copied()
        .filter(|&v| {
            let nb: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
            nb.iter()
                .enumerate()
                .all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.adjacent(a, b)))
        })
        .collect();
    if simplicial.len() != 2 {
        failed.insert(alive.to_vec());
        return false;
    }
    for &v in &simplicial {
        if g.neighbors(v).iter().filter(|&&w| alive[w]).count() != 2 {
            continue;
        }
        alive[v] = false;
        let ok = eliminate(g, alive, count - 1, failed);
        alive[v] = true;
        if ok {
            return true;
        }
    }
    failed.insert(alive.to_vec());
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_fan() {
        let tp = TwoPath::from_spec(&FanSpec::without_overlaps(vec![1])).unwrap();
        assert_eq!(tp.graph().n(), 4);
        assert_eq!(tp.graph().diameter(), 2);
        assert_eq!(tp.graph().simplicial_vertices(), vec![0, 2]);
        assert_eq!(tp.fan(1), &[3]);
    }

    #[test]
    fn drawn_figure_instance() {
        let spec = FanSpec::without_overlaps(vec![3, 4, 2]);
        let tp = TwoPath::from_spec(&spec).unwrap();
        assert_eq!(tp.graph().n(), 14);
        assert_eq!(spec.vertex_count(), 14);
        assert_eq!(tp.graph().diameter(), 4);
        assert_eq!(is_two_path(tp.graph()), Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn overlap_shares_one_vertex() {
        let spec = FanSpec::new(vec![2, 2], vec![true]);
        let tp = TwoPath::from_spec(&spec).unwrap();
        assert_eq!(tp.graph().n(), 7);
        let shared: Vec<_> = tp.fan(1).iter().filter(|v| tp.fan(2).contains(v)).collect();
        assert_eq!(shared.len(), 1);
        assert_eq!(tp.fans_containing(*shared[0]), vec![1, 2]);
    }

    #[test]
    fn overlap_of_two_singleton_fans_collapses_the_diameter() {
        // The shared vertex would be adjacent to the whole spine.
        let spec = FanSpec::new(vec![1, 1], vec![true]);
        assert!(matches!(TwoPath::from_spec(&spec), Err(Error::NotTwoPath(_))));
    }

    #[test]
    fn recognizes_small_cases() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_two_path(&k3).is_some());
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(is_two_path(&k2).is_some());
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(is_two_path(&c5).is_none());
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_two_path(&k4).is_none());
        let p4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(is_two_path(&p4).is_none());
    }

    #[test]
    fn from_spine_recovers_fans() {
        let spec = FanSpec::new(vec![3, 2, 2], vec![true, false]);
        let tp = TwoPath::from_spec(&spec).unwrap();
        let back = TwoPath::from_spine(tp.graph().clone(), tp.spine().to_vec()).unwrap();
        assert_eq!(back.fans(), tp.fans());
        let again = TwoPath::recognize(tp.graph()).unwrap();
        assert_eq!(again.spine(), tp.spine());
    }

    #[test]
    fn enumerates_specs() {
        // d = 2: a single fan with n - 3 vertices.
        assert_eq!(FanSpec::enumerate(2, 6), vec![FanSpec::new(vec![3], vec![])]);
        for spec in FanSpec::enumerate(3, 8) {
            assert_eq!(spec.vertex_count(), 8);
        }
        assert!(!FanSpec::enumerate(3, 8).is_empty());
    }

    #[test]
    fn spec_validation() {
        assert!(FanSpec::new(vec![], vec![]).validate().is_err());
        assert!(FanSpec::new(vec![1, 0], vec![]).validate().is_err());
        assert!(FanSpec::new(vec![1, 2], vec![true, true]).validate().is_err());
        let spec: FanSpec = serde_json::from_str(r#"{"k":[2,3]}"#).unwrap();
        assert_eq!(spec.overlap, Vec::<bool>::new());
        assert!(spec.validate().is_ok());
    }
}
