//! Exhaustive witness search and the pebbling numbers built on it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{config_count, multisets, next_composition, unrank};
use crate::engine::{Configuration, Distribution, SearchMode, Solver};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symmetry;

/// Default cap on configuration checks per pebbling-number computation.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

// Configurations per work unit handed to the thread pool.
const CHUNK: u128 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    /// Maximum configurations enumerated per call.
    pub budget: u64,
    /// Automorphisms fixing the demand. When set, only the first
    /// configuration of each orbit (in enumeration order) is solved.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<Vec<Vec<usize>>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            budget: DEFAULT_BUDGET,
            symmetry: None,
        }
    }
}

impl SearchOptions {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_symmetry(mut self, group: Vec<Vec<usize>>) -> Self {
        self.symmetry = Some(group);
        self
    }
}

/// Outcome of scanning one configuration size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessResult {
    pub size: u64,
    pub witness: Option<Configuration>,
    /// Configurations covered in enumeration order, up to and including the
    /// witness when one is found.
    pub configs_checked: u64,
}

/// Every unsolvable configuration of one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub size: u64,
    pub witnesses: Vec<Configuration>,
    pub configs_checked: u64,
}

/// Per-worker state: a solver with its own failure cache plus a cheap
/// certificate that settles most configurations without search.
struct Checker<'g> {
    solver: Solver<'g>,
    demand: Vec<u32>,
    targets: Vec<usize>,
    // Non-target vertices, farthest from their nearest target first.
    order: Vec<usize>,
    // Neighbors one step closer to the same nearest target.
    preds: Vec<Vec<usize>>,
    flow: Vec<u64>,
    inverses: Vec<Vec<usize>>,
}

impl<'g> Checker<'g> {
    fn new(g: &'g Graph, d: &Distribution, symmetry: Option<&[Vec<usize>]>) -> Result<Self> {
        let solver = Solver::new(g, d, SearchMode::Unrestricted)?;
        let n = g.n();
        let targets: Vec<usize> = (0..n).filter(|&v| d.get(v) > 0).collect();
        // Each vertex joins its nearest target, ties to the earlier one. A
        // shortest-path predecessor toward that target lands in the same
        // region, so the regions carry disjoint shortest-path forests.
        let home: Vec<usize> = (0..n)
            .map(|v| {
                *targets
                    .iter()
                    .min_by_key(|&&r| g.dist(v, r))
                    .expect("nonempty demand")
            })
            .collect();
        let mut order: Vec<usize> = (0..n).filter(|&v| d.get(v) == 0).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(g.dist(v, home[v])));
        let preds = (0..n)
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&u| home[u] == home[v] && g.dist(u, home[v]) + 1 == g.dist(v, home[v]))
                    .collect()
            })
            .collect();
        let inverses = symmetry
            .unwrap_or(&[])
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                for (v, &w) in p.iter().enumerate() {
                    inv[w] = v;
                }
                inv
            })
            .collect();
        Ok(Self {
            solver,
            demand: d.counts().to_vec(),
            targets,
            order,
            preds,
            flow: vec![0; n],
            inverses,
        })
    }

    /// False when some automorphism maps `c` to an earlier configuration.
    fn is_representative(&self, c: &[u32]) -> bool {
        self.inverses.iter().all(|inv| {
            for w in 0..c.len() {
                let image = c[inv[w]];
                if image != c[w] {
                    // Earlier in the enumeration means larger at the first
                    // difference.
                    return image < c[w];
                }
            }
            true
        })
    }

    /// Funnels pebbles toward each target inside its region, along
    /// shortest-path trees whose parents are the best-stocked closer
    /// neighbors. Meeting every demand this way proves solvability.
    fn tree_certificate(&mut self, c: &[u32]) -> bool {
        self.flow.iter_mut().for_each(|f| *f = 0);
        for &v in &self.order {
            let a = u64::from(c[v]) + self.flow[v];
            if a >= 2 {
                let p = *self.preds[v]
                    .iter()
                    .max_by_key(|&&u| (c[u], std::cmp::Reverse(u)))
                    .expect("closer neighbor");
                self.flow[p] += a / 2;
            }
        }
        self.targets
            .iter()
            .all(|&r| u64::from(c[r]) + self.flow[r] >= u64::from(self.demand[r]))
    }

    fn is_unsolvable(&mut self, c: &[u32]) -> Result<bool> {
        if self.tree_certificate(c) {
            return Ok(false);
        }
        Ok(!self.solver.decide(c)?)
    }

    /// Scans positions `start..end`, returning the first witness.
    fn first_in(&mut self, n: usize, size: u32, start: u128, end: u128) -> Result<Option<(u128, Vec<u32>)>> {
        let mut c = unrank(n, size, start).expect("chunk start in range");
        let mut idx = start;
        loop {
            if self.is_representative(&c) && self.is_unsolvable(&c)? {
                return Ok(Some((idx, c)));
            }
            idx += 1;
            if idx == end || !next_composition(&mut c) {
                return Ok(None);
            }
        }
    }

    fn all_in(&mut self, n: usize, size: u32, start: u128, end: u128) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        let mut c = unrank(n, size, start).expect("chunk start in range");
        let mut idx = start;
        loop {
            if self.is_representative(&c) && self.is_unsolvable(&c)? {
                out.push(c.clone());
            }
            idx += 1;
            if idx == end || !next_composition(&mut c) {
                return Ok(out);
            }
        }
    }
}

fn check_inputs(g: &Graph, d: &Distribution, size: u64, opts: &SearchOptions) -> Result<(u128, u32)> {
    if d.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: d.len(),
        });
    }
    if let Some(group) = &opts.symmetry {
        for p in group {
            if p.len() != g.n() || (0..g.n()).any(|v| d.get(p[v]) != d.get(v)) {
                return Err(Error::InvalidParameters(
                    "symmetry group must fix the demand".into(),
                ));
            }
        }
    }
    let size32 = u32::try_from(size).map_err(|_| Error::InvalidParameters("size too large".into()))?;
    let total = config_count(g.n(), size);
    if total > u128::from(opts.budget) {
        return Err(Error::BudgetExceeded { budget: opts.budget });
    }
    Ok((total, size32))
}

fn chunks(total: u128) -> Vec<(u128, u128)> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + CHUNK).min(total);
        out.push((start, end));
        start = end;
    }
    out
}

fn run_pooled<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// The first `d`-unsolvable configuration of `size` pebbles in enumeration
/// order. Parallel runs report the same witness as serial ones.
pub fn find_unsolvable_witness(
    g: &Graph,
    d: &Distribution,
    size: u64,
    opts: &SearchOptions,
) -> Result<WitnessResult> {
    let (total, size32) = check_inputs(g, d, size, opts)?;
    let n = g.n();
    let symmetry = opts.symmetry.as_deref();
    let found = if opts.jobs == 1 {
        let mut checker = Checker::new(g, d, symmetry)?;
        checker.first_in(n, size32, 0, total)?
    } else {
        let work = chunks(total);
        run_pooled(opts.jobs, || {
            work.par_iter()
                .map_init(
                    || Checker::new(g, d, symmetry),
                    |checker, &(start, end)| match checker {
                        Ok(checker) => checker.first_in(n, size32, start, end).transpose(),
                        Err(e) => Some(Err(e.clone())),
                    },
                )
                .find_map_first(|x| x)
                .transpose()
        })??
    };
    Ok(match found {
        Some((idx, counts)) => WitnessResult {
            size,
            witness: Some(Configuration::new(counts)),
            configs_checked: (idx + 1) as u64,
        },
        None => WitnessResult {
            size,
            witness: None,
            configs_checked: total as u64,
        },
    })
}

/// Every `d`-unsolvable configuration of `size` pebbles, in enumeration
/// order (orbit representatives only when a symmetry group is given).
pub fn scan_unsolvable(
    g: &Graph,
    d: &Distribution,
    size: u64,
    opts: &SearchOptions,
) -> Result<ScanResult> {
    let (total, size32) = check_inputs(g, d, size, opts)?;
    let n = g.n();
    let symmetry = opts.symmetry.as_deref();
    let work = chunks(total);
    let per_chunk: Vec<Vec<Vec<u32>>> = run_pooled(opts.jobs, || {
        work.par_iter()
            .map_init(
                || Checker::new(g, d, symmetry),
                |checker, &(start, end)| match checker {
                    Ok(checker) => checker.all_in(n, size32, start, end),
                    Err(e) => Err(e.clone()),
                },
            )
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(ScanResult {
        size,
        witnesses: per_chunk
            .into_iter()
            .flatten()
            .map(Configuration::new)
            .collect(),
        configs_checked: total as u64,
    })
}

/// `pi(G, D)` with the unsolvable witness one size below it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiResult {
    pub value: u64,
    pub witness: Configuration,
    pub configs_checked: u64,
}

struct Probe<'a> {
    g: &'a Graph,
    d: &'a Distribution,
    opts: &'a SearchOptions,
    spent: u64,
}

impl Probe<'_> {
    fn witness_at(&mut self, size: u64) -> Result<Option<Configuration>> {
        if size < self.d.size() {
            // Too few pebbles to cover the demand even without moving.
            let mut c = Configuration::zeros(self.g.n());
            c.add(0, size as u32);
            return Ok(Some(c));
        }
        let left = self.opts.budget.saturating_sub(self.spent);
        let total = config_count(self.g.n(), size);
        if total > u128::from(left) {
            return Err(Error::BudgetExceeded {
                budget: self.opts.budget,
            });
        }
        let res = find_unsolvable_witness(self.g, self.d, size, self.opts)?;
        self.spent += res.configs_checked;
        Ok(res.witness)
    }

    fn finish(self, value: u64, witness: Configuration) -> PiResult {
        PiResult {
            value,
            witness,
            configs_checked: self.spent,
        }
    }
}

/// Smallest size with no `d`-unsolvable configuration. With a hint the
/// search walks down (or up) from it; without one it doubles and then
/// bisects. Both rely on solvability being monotone in the size.
pub fn pi_d(g: &Graph, d: &Distribution, hint: Option<u64>, opts: &SearchOptions) -> Result<PiResult> {
    if d.size() == 0 {
        return Err(Error::InvalidParameters("demand must be nonempty".into()));
    }
    let mut probe = Probe {
        g,
        d,
        opts,
        spent: 0,
    };
    match hint {
        Some(h) => {
            let h = h.max(d.size());
            match probe.witness_at(h)? {
                Some(mut w) => {
                    let mut m = h + 1;
                    while let Some(next) = probe.witness_at(m)? {
                        w = next;
                        m += 1;
                    }
                    Ok(probe.finish(m, w))
                }
                None => {
                    let mut m = h - 1;
                    loop {
                        if let Some(w) = probe.witness_at(m)? {
                            return Ok(probe.finish(m + 1, w));
                        }
                        m -= 1;
                    }
                }
            }
        }
        None => {
            // Invariant: a witness exists at lo, none at hi.
            let mut lo = d.size() - 1;
            let mut lo_witness = probe.witness_at(lo)?.expect("too few pebbles");
            let mut hi = d.size();
            loop {
                match probe.witness_at(hi)? {
                    Some(w) => {
                        lo = hi;
                        lo_witness = w;
                        hi *= 2;
                    }
                    None => break,
                }
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                match probe.witness_at(mid)? {
                    Some(w) => {
                        lo = mid;
                        lo_witness = w;
                    }
                    None => hi = mid,
                }
            }
            Ok(probe.finish(hi, lo_witness))
        }
    }
}

/// `pi(G, D)` by walking up one size at a time from `|D|`. Only practical on
/// small inputs; used to cross-check [`pi_d`].
pub fn pi_d_ascending(g: &Graph, d: &Distribution, opts: &SearchOptions) -> Result<PiResult> {
    if d.size() == 0 {
        return Err(Error::InvalidParameters("demand must be nonempty".into()));
    }
    let mut probe = Probe {
        g,
        d,
        opts,
        spent: 0,
    };
    let mut m = d.size();
    let mut last = probe.witness_at(m - 1)?.expect("too few pebbles");
    while let Some(w) = probe.witness_at(m)? {
        last = w;
        m += 1;
    }
    Ok(probe.finish(m, last))
}

/// Which roots `pi_t` maximizes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Roots {
    All,
    Single(usize),
    /// One root stands for all; rejected unless the graph is vertex
    /// transitive.
    Transitive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiTResult {
    pub value: u64,
    /// A root attaining the maximum and its witness of size `value - 1`.
    pub root: usize,
    pub witness: Configuration,
    pub configs_checked: u64,
}

fn resolve_roots(g: &Graph, roots: Roots) -> Result<Vec<usize>> {
    match roots {
        Roots::All => Ok((0..g.n()).collect()),
        Roots::Single(r) if r < g.n() => Ok(vec![r]),
        Roots::Single(r) => Err(Error::VertexOutOfRange { vertex: r, n: g.n() }),
        Roots::Transitive => {
            if symmetry::is_vertex_transitive(g)? {
                Ok(vec![0])
            } else {
                Err(Error::InvalidParameters("graph is not vertex transitive".into()))
            }
        }
    }
}

/// `pi_t(G) = max_r pi(G, t.r)` over the requested roots.
///
/// With a hint `h` every root is first checked at size `h`; the answer is
/// then found by stepping down while no root has a witness below, or up
/// while some root still has one.
pub fn pi_t(g: &Graph, t: u32, roots: Roots, hint: Option<u64>, opts: &SearchOptions) -> Result<PiTResult> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be at least 1".into()));
    }
    let roots = resolve_roots(g, roots)?;
    let n = g.n();
    let mut spent = 0u64;
    let witness_at = |size: u64, spent: &mut u64| -> Result<Option<(usize, Configuration)>> {
        for &r in &roots {
            let d = Distribution::stacked(n, r, t);
            if size < u64::from(t) {
                let mut c = Configuration::zeros(n);
                c.add(0, size as u32);
                return Ok(Some((r, c)));
            }
            let left = opts.budget.saturating_sub(*spent);
            let o = SearchOptions {
                budget: left,
                ..opts.clone()
            };
            let res = find_unsolvable_witness(g, &d, size, &o)?;
            *spent += res.configs_checked;
            if let Some(w) = res.witness {
                return Ok(Some((r, w)));
            }
        }
        Ok(None)
    };
    let Some(h) = hint else {
        // Per-root values, then the maximum.
        let mut best: Option<(u64, usize, Configuration)> = None;
        for &r in &roots {
            let d = Distribution::stacked(n, r, t);
            let o = SearchOptions {
                budget: opts.budget.saturating_sub(spent),
                ..opts.clone()
            };
            let res = pi_d(g, &d, None, &o)?;
            spent += res.configs_checked;
            if best.as_ref().map_or(true, |b| res.value > b.0) {
                best = Some((res.value, r, res.witness));
            }
        }
        let (value, root, witness) = best.expect("at least one root");
        return Ok(PiTResult {
            value,
            root,
            witness,
            configs_checked: spent,
        });
    };
    let mut m = h.max(u64::from(t));
    if let Some((mut root, mut w)) = witness_at(m, &mut spent)? {
        m += 1;
        while let Some((r, next)) = witness_at(m, &mut spent)? {
            root = r;
            w = next;
            m += 1;
        }
        return Ok(PiTResult {
            value: m,
            root,
            witness: w,
            configs_checked: spent,
        });
    }
    loop {
        m -= 1;
        if let Some((root, witness)) = witness_at(m, &mut spent)? {
            return Ok(PiTResult {
                value: m + 1,
                root,
                witness,
                configs_checked: spent,
            });
        }
    }
}

/// Demands checked by [`verify_target_conjecture`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DemandClasses {
    /// Every multiset of `t` target vertices.
    All,
    Explicit(Vec<Distribution>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetReport {
    pub t: u32,
    pub pi_t: u64,
    pub demands_checked: usize,
    pub configs_checked: u64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(Configuration, Distribution)>,
}

/// Checks `pi(G, D) <= pi_t(G)` for the requested demands of size `t`.
pub fn verify_target_conjecture(
    g: &Graph,
    t: u32,
    classes: &DemandClasses,
    roots: Roots,
    hint: Option<u64>,
    opts: &SearchOptions,
) -> Result<TargetReport> {
    let pit = pi_t(g, t, roots, hint, opts)?;
    let demands: Vec<Distribution> = match classes {
        DemandClasses::All => multisets(g.n(), t as usize)
            .iter()
            .map(|m| Distribution::from_targets(g.n(), m))
            .collect(),
        DemandClasses::Explicit(list) => list.clone(),
    };
    let mut spent = pit.configs_checked;
    for d in &demands {
        if d.size() != u64::from(t) {
            return Err(Error::InvalidParameters(format!(
                "demand {d} does not have size {t}"
            )));
        }
        let o = SearchOptions {
            budget: opts.budget,
            symmetry: None,
            ..opts.clone()
        };
        let res = find_unsolvable_witness(g, d, pit.value, &o)?;
        spent += res.configs_checked;
        if let Some(c) = res.witness {
            return Ok(TargetReport {
                t,
                pi_t: pit.value,
                demands_checked: demands.len(),
                configs_checked: spent,
                passed: false,
                counterexample: Some((c, d.clone())),
            });
        }
    }
    Ok(TargetReport {
        t,
        pi_t: pit.value,
        demands_checked: demands.len(),
        configs_checked: spent,
        passed: true,
        counterexample: None,
    })
}
