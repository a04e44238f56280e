use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A tree with a distinguished root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<u32>,
}

impl RootedTree {
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        let n = graph.n();
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        if graph.edge_count() != n - 1 {
            return Err(Error::InvalidParameters(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                graph.edge_count()
            )));
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        let mut order = vec![root];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &v in graph.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    children[u].push(v);
                    depth[v] = depth[u] + 1;
                    order.push(v);
                }
            }
        }
        Ok(Self {
            graph,
            root,
            parent,
            children,
            depth,
        })
    }

    /// Builds the tree from a parent array (`None` exactly at the root).
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        let roots: Vec<usize> = (0..parents.len()).filter(|&v| parents[v].is_none()).collect();
        let [root] = roots[..] else {
            return Err(Error::InvalidParameters("parent array needs exactly one root".into()));
        };
        let edges: Vec<(usize, usize)> = parents
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
            .collect();
        Self::new(Graph::new(parents.len(), &edges)?, root)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children in ascending index order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> u32 {
        self.depth[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        self.graph.edges()
    }

    /// Longest downward path length from each vertex.
    pub fn heights(&self) -> Vec<u32> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.depth[v]));
        let mut height = vec![0u32; self.n()];
        for v in order {
            if let Some(p) = self.parent[v] {
                height[p] = height[p].max(height[v] + 1);
            }
        }
        height
    }

    /// Re-roots the same tree at `root`.
    pub fn rerooted(&self, root: usize) -> Result<Self> {
        Self::new(self.graph.clone(), root)
    }
}

/// Non-increasing path lengths of a maximum root-path partition.
///
/// Greedy long-path decomposition: from each path start, follow the child
/// with the greatest height (ties to the smaller index); every other child
/// begins a new path at its parent.
pub fn max_path_partition(t: &RootedTree) -> Vec<u32> {
    let height = t.heights();
    let mut lengths = Vec::new();
    // First vertex below the start of each pending path.
    let mut starts: Vec<usize> = t.children(t.root()).to_vec();
    while let Some(first) = starts.pop() {
        let mut len = 1;
        let mut v = first;
        loop {
            let Some(&next) = t
                .children(v)
                .iter()
                .max_by(|&&a, &&b| height[a].cmp(&height[b]).then(b.cmp(&a)))
            else {
                break;
            };
            for &c in t.children(v) {
                if c != next {
                    starts.push(c);
                }
            }
            len += 1;
            v = next;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

/// A uniformly random labeled tree on `n` vertices decoded from a Prüfer
/// sequence; the root is vertex 0.
pub fn random_tree(n: usize, seed: u64) -> Result<RootedTree> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n <= 2 {
        let edges: Vec<(usize, usize)> = if n == 2 { vec![(0, 1)] } else { vec![] };
        return RootedTree::new(Graph::new(n, &edges)?, 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    RootedTree::new(Graph::new(n, &prufer_decode(n, &code))?, 0)
}

fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in code {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}
