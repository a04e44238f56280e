//! Exact D-solvability by depth-first search over pebbling steps.
//!
//! Every step removes a pebble, so the state graph is acyclic and the search
//! terminates. Failed states are remembered in a transposition set that
//! persists across calls on the same [`Solver`] (same graph, demand, mode).

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::engine::config::{Configuration, Distribution};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which pebbling steps the search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    #[default]
    Unrestricted,
    /// Each step strictly decreases the distance to some unmet target.
    Greedy,
    /// Each step does not increase the distance to some unmet target.
    SemiGreedy,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unrestricted" => Ok(Self::Unrestricted),
            "greedy" => Ok(Self::Greedy),
            "semi_greedy" | "semi-greedy" => Ok(Self::SemiGreedy),
            other => Err(Error::InvalidParameters(format!("unknown mode {other:?}"))),
        }
    }
}

/// An ordered list of pebbling steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub moves: Vec<(usize, usize)>,
    /// Pebbles consumed, only defined for single-target demands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<u64>,
}

impl Solution {
    /// Replays the steps from `c`, failing on the first illegal one.
    pub fn replay(&self, g: &Graph, c: &Configuration) -> Result<Configuration> {
        self.moves
            .iter()
            .try_fold(c.clone(), |acc, &(u, v)| super::apply_move(&acc, u, v, g))
    }

    /// True when the steps replay legally and end dominating `d`.
    pub fn solves(&self, g: &Graph, c: &Configuration, d: &Distribution) -> bool {
        matches!(self.replay(g, c), Ok(end) if end.covers(d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub solvable: bool,
    pub solution: Option<Solution>,
    pub states_explored: u64,
}

// Bound above which the persistent failure set is dropped.
const DEFAULT_CACHE_LIMIT: usize = 1 << 22;

/// Reusable exact solver for one graph, demand and mode.
pub struct Solver<'g> {
    g: &'g Graph,
    mode: SearchMode,
    n: usize,
    demand: Vec<u16>,
    demand_total: u64,
    targets: Vec<usize>,
    pow: Vec<u128>,
    demand_weight: Vec<u128>,
    counts: Vec<u16>,
    weight: Vec<u128>,
    unmet: u32,
    pot: u32,
    path: Vec<(u16, u16)>,
    frontier: Vec<(u16, u16)>,
    ranking: Vec<u128>,
    narrow: bool,
    failed_narrow: FxHashSet<u128>,
    failed_wide: FxHashSet<Box<[u16]>>,
    cache_limit: usize,
    explored: u64,
}

impl<'g> Solver<'g> {
    pub fn new(g: &'g Graph, demand: &Distribution, mode: SearchMode) -> Result<Self> {
        let n = g.n();
        if demand.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: demand.len(),
            });
        }
        if demand.size() == 0 {
            return Err(Error::InvalidParameters("demand must be nonempty".into()));
        }
        let diam = g.diameter();
        let pow: Vec<u128> = (0..=diam).map(|d| 1u128 << (diam - d)).collect();
        let demand16: Vec<u16> = demand
            .counts()
            .iter()
            .map(|&x| u16::try_from(x).map_err(|_| too_large()))
            .collect::<Result<_>>()?;
        let targets: Vec<usize> = (0..n).filter(|&v| demand16[v] > 0).collect();
        let demand_weight = (0..n)
            .map(|r| {
                targets
                    .iter()
                    .map(|&t| u128::from(demand16[t]) * pow[g.dist(t, r) as usize])
                    .sum()
            })
            .collect();
        Ok(Self {
            g,
            mode,
            n,
            demand: demand16,
            demand_total: demand.size(),
            targets,
            pow,
            demand_weight,
            counts: vec![0; n],
            weight: vec![0; n],
            unmet: 0,
            pot: 0,
            path: Vec::new(),
            frontier: Vec::new(),
            ranking: vec![0; n],
            narrow: false,
            failed_narrow: FxHashSet::default(),
            failed_wide: FxHashSet::default(),
            cache_limit: DEFAULT_CACHE_LIMIT,
            explored: 0,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn mode(&self) -> SearchMode {
        self.mode
    }

    /// Caps the number of remembered failed states (0 disables caching).
    pub fn set_cache_limit(&mut self, limit: usize) {
        self.cache_limit = limit;
        self.clear_cache();
    }

    pub fn clear_cache(&mut self) {
        self.failed_narrow.clear();
        self.failed_wide.clear();
    }

    /// Decides solvability without materializing the step sequence.
    pub fn decide(&mut self, counts: &[u32]) -> Result<bool> {
        self.load(counts)?;
        Ok(self.dfs())
    }

    pub fn solve(&mut self, c: &Configuration) -> Result<SolveOutcome> {
        let solvable = self.decide(c.counts())?;
        let solution = solvable.then(|| {
            let moves: Vec<(usize, usize)> = self
                .path
                .iter()
                .map(|&(u, v)| (usize::from(u), usize::from(v)))
                .collect();
            let cost = (self.demand_total == 1).then_some(moves.len() as u64 + 1);
            Solution { moves, cost }
        });
        Ok(SolveOutcome {
            solvable,
            solution,
            states_explored: self.explored,
        })
    }

    /// States expanded by the most recent call.
    pub fn states_explored(&self) -> u64 {
        self.explored
    }

    fn load(&mut self, counts: &[u32]) -> Result<()> {
        if counts.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: counts.len(),
            });
        }
        let total: u64 = counts.iter().map(|&x| u64::from(x)).sum();
        if total > u64::from(u16::MAX) {
            return Err(too_large());
        }
        let narrow = self.n <= 16 && total <= 255;
        if narrow != self.narrow {
            self.narrow = narrow;
        }
        for (dst, &src) in self.counts.iter_mut().zip(counts) {
            *dst = src as u16;
        }
        self.unmet = (0..self.n)
            .map(|v| u32::from(self.demand[v].saturating_sub(self.counts[v])))
            .sum();
        self.pot = self.counts.iter().map(|&c| u32::from(c / 2)).sum();
        for r in 0..self.n {
            let row = self.g.metrics().row(r);
            self.weight[r] = self
                .counts
                .iter()
                .zip(row)
                .map(|(&c, &d)| u128::from(c) * self.pow[d as usize])
                .sum();
        }
        self.path.clear();
        self.frontier.clear();
        self.explored = 0;
        if self.failed_narrow.len() + self.failed_wide.len() > self.cache_limit {
            self.clear_cache();
        }
        Ok(())
    }

    fn pack(&self) -> u128 {
        self.counts
            .iter()
            .fold(0u128, |acc, &c| (acc << 8) | u128::from(c))
    }

    fn is_failed(&self) -> bool {
        if self.narrow {
            self.failed_narrow.contains(&self.pack())
        } else {
            self.failed_wide.contains(self.counts.as_slice())
        }
    }

    fn mark_failed(&mut self) {
        if self.cache_limit == 0 {
            return;
        }
        if self.narrow {
            let key = self.pack();
            self.failed_narrow.insert(key);
        } else {
            self.failed_wide.insert(self.counts.clone().into_boxed_slice());
        }
    }

    #[inline]
    fn deficit(&self, v: usize) -> u32 {
        u32::from(self.demand[v].saturating_sub(self.counts[v]))
    }

    fn step(&mut self, u: usize, v: usize) {
        let before = self.deficit(u) + self.deficit(v);
        let odd_v = self.counts[v] % 2 == 1;
        self.counts[u] -= 2;
        self.counts[v] += 1;
        self.unmet = self.unmet + self.deficit(u) + self.deficit(v) - before;
        self.pot = self.pot - 1 + u32::from(odd_v);
        let (ru, rv) = (self.g.metrics().row(u), self.g.metrics().row(v));
        for r in 0..self.n {
            self.weight[r] =
                self.weight[r] + self.pow[rv[r] as usize] - 2 * self.pow[ru[r] as usize];
        }
    }

    fn unstep(&mut self, u: usize, v: usize) {
        let before = self.deficit(u) + self.deficit(v);
        self.counts[v] -= 1;
        self.counts[u] += 2;
        let odd_v = self.counts[v] % 2 == 1;
        self.unmet = self.unmet + self.deficit(u) + self.deficit(v) - before;
        self.pot = self.pot + 1 - u32::from(odd_v);
        let (ru, rv) = (self.g.metrics().row(u), self.g.metrics().row(v));
        for r in 0..self.n {
            self.weight[r] =
                self.weight[r] + 2 * self.pow[ru[r] as usize] - self.pow[rv[r] as usize];
        }
    }

    fn allowed(&self, u: usize, v: usize) -> bool {
        match self.mode {
            SearchMode::Unrestricted => true,
            SearchMode::Greedy => self
                .targets
                .iter()
                .any(|&t| self.deficit(t) > 0 && self.g.dist(v, t) < self.g.dist(u, t)),
            SearchMode::SemiGreedy => self
                .targets
                .iter()
                .any(|&t| self.deficit(t) > 0 && self.g.dist(v, t) <= self.g.dist(u, t)),
        }
    }

    fn dfs(&mut self) -> bool {
        if self.unmet == 0 {
            return true;
        }
        if self.pot == 0 {
            return false;
        }
        if (0..self.n).any(|r| self.weight[r] < self.demand_weight[r]) {
            return false;
        }
        if self.is_failed() {
            return false;
        }
        self.explored += 1;

        // Rank destinations by weighted remaining deficit.
        for v in 0..self.n {
            let row = self.g.metrics().row(v);
            self.ranking[v] = self
                .targets
                .iter()
                .map(|&t| u128::from(self.deficit(t)) * self.pow[row[t] as usize])
                .sum();
        }
        let start = self.frontier.len();
        for u in 0..self.n {
            if self.counts[u] >= 2 {
                for &v in self.g.neighbors(u) {
                    if self.allowed(u, v) {
                        self.frontier.push((u as u16, v as u16));
                    }
                }
            }
        }
        {
            let counts = &self.counts;
            let ranking = &self.ranking;
            self.frontier[start..].sort_unstable_by(|a, b| {
                counts[b.0 as usize]
                    .cmp(&counts[a.0 as usize])
                    .then(a.0.cmp(&b.0))
                    .then(ranking[b.1 as usize].cmp(&ranking[a.1 as usize]))
                    .then(a.1.cmp(&b.1))
            });
        }
        let end = self.frontier.len();
        for i in start..end {
            let (u, v) = self.frontier[i];
            let (u, v) = (usize::from(u), usize::from(v));
            self.step(u, v);
            self.path.push((u as u16, v as u16));
            if self.dfs() {
                self.frontier.truncate(start);
                return true;
            }
            self.path.pop();
            self.unstep(u, v);
        }
        self.frontier.truncate(start);
        self.mark_failed();
        false
    }
}

fn too_large() -> Error {
    Error::InvalidParameters("pebble counts above 65535 are not supported".into())
}

/// One-shot exact solvability query.
pub fn is_solvable(
    g: &Graph,
    c: &Configuration,
    d: &Distribution,
    mode: SearchMode,
) -> Result<SolveOutcome> {
    if c.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: c.len(),
        });
    }
    let mut solver = Solver::new(g, d, mode)?;
    solver.solve(c)
}

/// Largest `t` such that `c` solves `t` pebbles stacked on `r`.
pub fn max_fold(g: &Graph, c: &Configuration, r: usize) -> Result<u32> {
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r, n: g.n() });
    }
    let hi = super::weight(c.counts(), r, g).floor();
    let mut hi = u32::try_from(hi).unwrap_or(u32::MAX).min(u32::from(u16::MAX));
    let mut lo = 0u32;
    // Invariant: lo is solvable (t = 0 trivially), hi + 1 is not.
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        let d = Distribution::stacked(g.n(), r, mid);
        if is_solvable(g, c, &d, SearchMode::Unrestricted)?.solvable {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::config::weight;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn four_pebbles_two_away() {
        let g = path(3);
        let c = Configuration::new(vec![0, 0, 4]);
        let d = Distribution::stacked(3, 0, 1);
        let out = is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap();
        assert!(out.solvable);
        let sol = out.solution.unwrap();
        assert_eq!(sol.moves.len(), 3);
        assert_eq!(sol.cost, Some(4));
        assert!(sol.solves(&g, &c, &d));
    }

    #[test]
    fn three_pebbles_two_away_fail() {
        let g = path(3);
        let c = Configuration::new(vec![0, 0, 3]);
        let d = Distribution::stacked(3, 0, 1);
        let out = is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap();
        assert!(!out.solvable);
        assert!(out.solution.is_none());
    }

    #[test]
    fn already_satisfied_needs_no_moves() {
        let g = path(2);
        let c = Configuration::new(vec![1, 5]);
        let d = Distribution::stacked(2, 0, 1);
        let out = is_solvable(&g, &c, &d, SearchMode::Greedy).unwrap();
        assert_eq!(out.solution.unwrap().moves, vec![]);
    }

    #[test]
    fn multi_target_on_path() {
        // Two targets at both ends of a 3-path from 6 pebbles in the middle.
        let g = path(3);
        let c = Configuration::new(vec![0, 4, 0]);
        let d = Distribution::from_targets(3, &[0, 2]);
        let out = is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap();
        assert!(out.solvable);
        assert_eq!(out.solution.as_ref().unwrap().cost, None);
        assert!(out.solution.unwrap().solves(&g, &c, &d));
        let c = Configuration::new(vec![0, 3, 0]);
        assert!(!is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap().solvable);
    }

    #[test]
    fn greedy_refuses_backward_steps() {
        // Path 0-1-2 with target 2: moving away from 2 is not greedy.
        let g = path(3);
        let c = Configuration::new(vec![0, 3, 0]);
        let d = Distribution::stacked(3, 2, 1);
        assert!(is_solvable(&g, &c, &d, SearchMode::Greedy).unwrap().solvable);
        let d = Distribution::from_targets(3, &[2, 2]);
        assert!(!is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap().solvable);
    }

    #[test]
    fn solver_reuse_matches_one_shot() {
        let g = path(4);
        let d = Distribution::stacked(4, 0, 1);
        let mut solver = Solver::new(&g, &d, SearchMode::Unrestricted).unwrap();
        for a in 0..6u32 {
            for b in 0..6u32 {
                let c = Configuration::new(vec![0, 0, a, b]);
                let fresh = is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap();
                assert_eq!(solver.decide(c.counts()).unwrap(), fresh.solvable);
                // weight is the exact criterion on paths
                let w = weight(c.counts(), 0, &g);
                assert_eq!(fresh.solvable, w.floor() >= 1, "{c}");
            }
        }
    }

    #[test]
    fn max_fold_on_stacks() {
        let g = path(4);
        let c = Configuration::new(vec![0, 0, 0, 3 * 8]);
        assert_eq!(max_fold(&g, &c, 0).unwrap(), 3);
        let c = Configuration::new(vec![0, 0, 0, 3 * 8 - 1]);
        assert_eq!(max_fold(&g, &c, 0).unwrap(), 2);
    }

    #[test]
    fn rejects_mismatched_lengths() {
        let g = path(3);
        let d = Distribution::stacked(2, 0, 1);
        assert!(Solver::new(&g, &d, SearchMode::Unrestricted).is_err());
        let d = Distribution::zeros(3);
        assert!(Solver::new(&g, &d, SearchMode::Unrestricted).is_err());
    }
}
