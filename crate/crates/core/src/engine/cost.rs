use rustc_hash::FxHashMap;

use crate::engine::config::{weight, Configuration, Distribution};
use crate::engine::search::{is_solvable, SearchMode, Solution};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A minimum-cost single-target solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheapestSolution {
    pub solution: Solution,
    /// Cost at most `2^ecc(r)`.
    pub is_cheap: bool,
}

/// Minimum-cost `r`-solution by iterative deepening on the number of
/// steps; `None` when `c` is `r`-unsolvable.
pub fn min_cost_solution(g: &Graph, c: &Configuration, r: usize) -> Result<Option<CheapestSolution>> {
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r, n: g.n() });
    }
    let d = Distribution::stacked(g.n(), r, 1);
    if !is_solvable(g, c, &d, SearchMode::Unrestricted)?.solvable {
        return Ok(None);
    }
    let mut search = Deepening {
        g,
        r,
        counts: c.counts().iter().map(|&x| x as u16).collect(),
        path: Vec::new(),
        seen: FxHashMap::default(),
    };
    for limit in 0..=c.size() as u32 {
        search.seen.clear();
        if search.run(limit) {
            let moves: Vec<(usize, usize)> = search.path.clone();
            let cost = moves.len() as u64 + 1;
            let cheap_bound = 1u64.checked_shl(g.ecc(r)).unwrap_or(u64::MAX);
            return Ok(Some(CheapestSolution {
                is_cheap: cost <= cheap_bound,
                solution: Solution {
                    moves,
                    cost: Some(cost),
                },
            }));
        }
    }
    unreachable!("solvable configuration without a solution of bounded length")
}

/// Whether `c` has an `r`-solution of cost at most `max_cost`.
pub fn has_solution_within(g: &Graph, c: &Configuration, r: usize, max_cost: u64) -> Result<bool> {
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r, n: g.n() });
    }
    let mut search = Deepening {
        g,
        r,
        counts: c.counts().iter().map(|&x| x as u16).collect(),
        path: Vec::new(),
        seen: FxHashMap::default(),
    };
    Ok(max_cost >= 1 && search.run((max_cost - 1) as u32))
}

struct Deepening<'g> {
    g: &'g Graph,
    r: usize,
    counts: Vec<u16>,
    path: Vec<(usize, usize)>,
    seen: FxHashMap<Box<[u16]>, u32>,
}

impl Deepening<'_> {
    fn run(&mut self, budget: u32) -> bool {
        if self.counts[self.r] >= 1 {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let counts32: Vec<u32> = self.counts.iter().map(|&x| u32::from(x)).collect();
        if weight(&counts32, self.r, self.g).floor() < 1 {
            return false;
        }
        // Every step moves at most one pebble one hop closer.
        let closest_big = (0..self.counts.len())
            .filter(|&v| self.counts[v] >= 2)
            .map(|v| self.g.dist(v, self.r))
            .min();
        match closest_big {
            None => return false,
            Some(d) if d > budget => return false,
            _ => {}
        }
        match self.seen.get(self.counts.as_slice()) {
            Some(&tried) if tried >= budget => return false,
            _ => {}
        }
        self.seen
            .insert(self.counts.clone().into_boxed_slice(), budget);
        for u in 0..self.counts.len() {
            if self.counts[u] < 2 {
                continue;
            }
            for &v in self.g.neighbors(u) {
                self.counts[u] -= 2;
                self.counts[v] += 1;
                self.path.push((u, v));
                if self.run(budget - 1) {
                    return true;
                }
                self.path.pop();
                self.counts[v] -= 1;
                self.counts[u] += 2;
            }
        }
        false
    }
}
