//! Campaigns: one registry claim checked over a parameter grid.

use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use pebblekit::engine::{apply_move, is_solvable, min_cost_solution, potential, stats, weight};
use pebblekit::families::{kneser, max_path_partition, random_tree, spinal_tree, FanSpec, TwoPath};
use pebblekit::formulas::*;
use pebblekit::numbers::*;
use pebblekit::symmetry::{automorphisms, pair_orbits};
use pebblekit::{Configuration, Distribution, Graph, SearchMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::registry::Registry;
use crate::report::{ExperimentReport, Provenance, Row};

/// Everything needed to replay a campaign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub claim: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<FanSpec>,
    /// Tree size for `tree-pi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Largest 2-path when no spec is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
    /// Number of seeded trees for `tree-pi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trees: Option<usize>,
    /// Instances per property for `engine-properties`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cases: Option<usize>,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

fn default_jobs() -> usize {
    1
}

impl CampaignConfig {
    pub fn new(claim: &str) -> Self {
        Self {
            claim: claim.to_string(),
            m: None,
            t: None,
            spec: None,
            n: None,
            max_n: None,
            trees: None,
            cases: None,
            budget: DEFAULT_BUDGET,
            jobs: 1,
            seed: 0,
        }
    }

    fn opts(&self) -> SearchOptions {
        SearchOptions::default().with_budget(self.budget).with_jobs(self.jobs)
    }

    fn ms(&self, default: &[u64]) -> Vec<u64> {
        self.m.clone().unwrap_or_else(|| default.to_vec())
    }

    fn ts(&self, default: &[u32]) -> Vec<u32> {
        self.t.clone().unwrap_or_else(|| default.to_vec())
    }
}

fn config_json(c: &Configuration) -> Value {
    serde_json::to_value(c).expect("configuration json")
}

fn kneser_graph(m: u64) -> Result<Graph> {
    Ok(kneser(usize::try_from(m)?, 2)?)
}

/// Runs `config.claim` and returns its report with wall time filled in.
pub fn run_campaign(config: &CampaignConfig) -> Result<ExperimentReport> {
    let registry = Registry::builtin();
    let claim = registry.get(&config.claim).ok_or_else(|| {
        anyhow!(
            "unknown claim {:?}; known claims: {}",
            config.claim,
            registry.ids().join(", ")
        )
    })?;
    let start = Instant::now();
    let mut report = ExperimentReport::new("verify", serde_json::to_value(config)?, config.seed);
    report.claim = Some(claim.id.clone());
    report.statement = Some(claim.statement.clone());
    let p = claim.provenance;
    match claim.id.as_str() {
        "kneser-pi" => kneser_pi(config, p, &mut report)?,
        "petersen-unique-witness" => petersen_unique_witness(config, p, &mut report)?,
        "kneser-pi-t" => kneser_pi_t(config, p, &mut report)?,
        "kneser-target" => kneser_target(config, p, &mut report)?,
        "two-path-pi-t" => two_path_pi(config, p, &mut report)?,
        "two-path-target" => two_path_target(config, p, &mut report)?,
        "tree-pi" => tree_pi_claim(config, p, &mut report)?,
        "spinal-tree" => spinal(config, p, &mut report)?,
        "kneser-connectivity" => connectivity(config, p, &mut report)?,
        "kneser-extremal" => extremal(config, p, &mut report)?,
        "petersen-cheap" => cheap(p, &mut report)?,
        "engine-properties" => properties(config, p, &mut report)?,
        other => bail!("claim {other:?} has no runner"),
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

fn kneser_pi(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    for m in cfg.ms(&[5]) {
        let g = kneser_graph(m)?;
        let want = KneserParams::new(m, 1)?.n();
        let res = pi_t(&g, 1, Roots::Transitive, Some(want), &cfg.opts())?;
        report.configs_checked += res.configs_checked;
        report.witnesses.push(config_json(&res.witness));
        report.push(Row::check(format!("m={m}"), want, p, res.value));
    }
    Ok(())
}

fn petersen_unique_witness(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    let g = kneser(5, 2)?;
    let d = Distribution::stacked(10, 0, 1);
    let scan = scan_unsolvable(&g, &d, 9, &cfg.opts())?;
    report.configs_checked += scan.configs_checked;
    report.witnesses = scan.witnesses.iter().map(config_json).collect();
    report.push(Row::check("size-9 configurations", 48_620u64, Provenance::Derived, scan.configs_checked));
    report.push(Row::check("unsolvable at size 9", 1u64, p, scan.witnesses.len() as u64));
    let jr = build_j_r(&g, 0)?;
    report.push(Row::check("witness is J_r", true, p, scan.witnesses == vec![jr]));
    Ok(())
}

fn kneser_pi_t(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    for m in cfg.ms(&[5]) {
        let g = kneser_graph(m)?;
        for t in cfg.ts(&[2]) {
            let want = kneser_p(KneserParams::new(m, u64::from(t))?).p;
            let res = pi_t(&g, t, Roots::Transitive, Some(want), &cfg.opts())?;
            report.configs_checked += res.configs_checked;
            report.witnesses.push(config_json(&res.witness));
            report.push(Row::check(format!("m={m} t={t}"), want, p, res.value));
        }
    }
    Ok(())
}

/// Demand representatives: pair orbits for `t = 2`, every multiset otherwise.
fn kneser_demands(g: &Graph, t: u32) -> Result<DemandClasses> {
    if t != 2 {
        return Ok(DemandClasses::All);
    }
    let group = automorphisms(g)?;
    let reps = pair_orbits(&group, g.n())
        .iter()
        .map(|orbit| {
            let &(u, v) = orbit.iter().find(|&&(u, _)| u == 0).unwrap_or(&orbit[0]);
            Distribution::from_targets(g.n(), &[u, v])
        })
        .collect();
    Ok(DemandClasses::Explicit(reps))
}

fn kneser_target(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    for m in cfg.ms(&[5]) {
        let g = kneser_graph(m)?;
        for t in cfg.ts(&[2]) {
            let hint = kneser_p(KneserParams::new(m, u64::from(t))?).p;
            let classes = kneser_demands(&g, t)?;
            let rep = verify_target_conjecture(&g, t, &classes, Roots::Transitive, Some(hint), &cfg.opts())?;
            report.configs_checked += rep.configs_checked;
            if let Some((c, d)) = &rep.counterexample {
                report.witnesses.push(json!({"configuration": c, "demand": d}));
            }
            report.push(Row::record(format!("m={m} t={t} pi_t"), rep.pi_t));
            report.push(Row::record(format!("m={m} t={t} demands"), rep.demands_checked));
            report.push(Row::check(format!("m={m} t={t} passed"), true, p, rep.passed));
        }
    }
    Ok(())
}

fn two_path_specs(cfg: &CampaignConfig) -> Vec<FanSpec> {
    match &cfg.spec {
        Some(s) => vec![s.clone()],
        None => {
            let max_n = cfg.max_n.unwrap_or(8);
            (2..max_n)
                .flat_map(|d| (d + 1..=max_n).flat_map(move |n| FanSpec::enumerate(d, n)))
                .collect()
        }
    }
}

fn spec_label(s: &FanSpec) -> String {
    let k: Vec<String> = s.k.iter().map(|x| x.to_string()).collect();
    let o: Vec<&str> = s.overlap.iter().map(|&b| if b { "1" } else { "0" }).collect();
    if o.is_empty() {
        format!("k={}", k.join(","))
    } else {
        format!("k={};overlap={}", k.join(","), o.join(","))
    }
}

fn two_path_pi(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    for spec in two_path_specs(cfg) {
        let tp = TwoPath::from_spec(&spec)?;
        let g = tp.graph();
        for t in cfg.ts(&[1, 2, 3]) {
            let want = two_path_pi_t(g.n() as u64, g.diameter(), u64::from(t))? as u64;
            let res = pi_t(g, t, Roots::All, Some(want), &cfg.opts())?;
            report.configs_checked += res.configs_checked;
            report.push(Row::check(format!("{} t={t}", spec_label(&spec)), want, p, res.value));
        }
    }
    Ok(())
}

fn two_path_target(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    for spec in two_path_specs(cfg) {
        let tp = TwoPath::from_spec(&spec)?;
        let g = tp.graph();
        for t in cfg.ts(&[2]) {
            let hint = two_path_pi_t(g.n() as u64, g.diameter(), u64::from(t))? as u64;
            let rep = verify_target_conjecture(g, t, &DemandClasses::All, Roots::All, Some(hint), &cfg.opts())?;
            report.configs_checked += rep.configs_checked;
            if let Some((c, d)) = &rep.counterexample {
                report.witnesses.push(json!({"spec": spec, "configuration": c, "demand": d}));
            }
            report.push(Row::check(format!("{} t={t}", spec_label(&spec)), true, p, rep.passed));
        }
    }
    Ok(())
}

fn tree_pi_claim(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    let n = cfg.n.unwrap_or(7);
    for i in 0..cfg.trees.unwrap_or(1) as u64 {
        let seed = cfg.seed.wrapping_add(i);
        let tree = random_tree(n, seed)?;
        if n == 1 {
            bail!("tree-pi needs at least two vertices");
        }
        let partition = max_path_partition(&tree);
        for t in cfg.ts(&[1, 2, 3]) {
            let want = tree_pi(&partition, u64::from(t))? as u64;
            let d = Distribution::stacked(n, tree.root(), t);
            let label = format!("seed={seed} partition={partition:?} t={t}");
            match pi_d(tree.graph(), &d, Some(want), &cfg.opts()) {
                Ok(res) => {
                    report.configs_checked += res.configs_checked;
                    report.push(Row::check(label, want, p, res.value));
                }
                Err(pebblekit::Error::BudgetExceeded { .. }) => {
                    report.warnings.push(format!("{label}: enumeration over budget, used the exact tree table"));
                    report.push(Row::check(label, want, p, tree_pi_exact(&tree, t)?));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}

fn spinal(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    for spec in two_path_specs(cfg) {
        let tp = TwoPath::from_spec(&spec)?;
        let g = tp.graph();
        let (n, d) = (g.n() as u64, g.diameter());
        let bound = spinal_bound(n, d)?;
        for r in 0..g.n() {
            let st = spinal_tree(&tp, r)?;
            let got = tree_pi(&max_path_partition(&st.tree), 1)?;
            let want = spinal_pi(n, d, g.ecc(r), st.kind.is_spinal())?;
            let label = format!("{} r={r} {:?}", spec_label(&spec), st.kind);
            report.push(Row::check(format!("{label} closed form"), want as u64, p, got as u64));
            report.push(Row::check(format!("{label} within bound"), true, p, got <= bound));
        }
    }
    Ok(())
}

fn connectivity(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    for m in cfg.ms(&[5, 6, 7]) {
        let g = kneser_graph(m)?;
        let want = (m - 2) * (m - 3) / 2;
        report.push(Row::check(format!("m={m}"), want, p, g.vertex_connectivity() as u64));
    }
    Ok(())
}

fn extremal(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    for m in cfg.ms(&[5, 6]) {
        let g = kneser_graph(m)?;
        for t in cfg.ts(&[1, 2, 3]) {
            let ps = kneser_p(KneserParams::new(m, u64::from(t))?);
            let d = Distribution::stacked(g.n(), 0, t);
            for (name, c, size) in [
                ("C_(t,1)", build_c_t1(&g, 0, t)?, ps.p1 - 1),
                ("C_(t,2)", build_c_t2(&g, 0, t)?, ps.p2 - 1),
            ] {
                let stuck = !is_solvable(&g, &c, &d, SearchMode::Unrestricted)?.solvable;
                report.push(Row::check(format!("m={m} t={t} {name} size"), size, p, c.size()));
                report.push(Row::check(format!("m={m} t={t} {name} unsolvable"), true, p, stuck));
                report.witnesses.push(config_json(&c));
            }
        }
    }
    Ok(())
}

fn cheap(p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    let g = kneser(5, 2)?;
    let mut worst = 0u64;
    let mut unsolvable = 0u64;
    for counts in enumerate_configs(10, 13) {
        report.configs_checked += 1;
        match min_cost_solution(&g, &Configuration::new(counts), 0)? {
            Some(best) => worst = worst.max(best.solution.cost.unwrap_or(0)),
            None => unsolvable += 1,
        }
    }
    report.push(Row::check("size-13 configurations", 497_420u64, Provenance::Derived, report.configs_checked));
    report.push(Row::check("unsolvable", 0u64, p, unsolvable));
    report.push(Row::check("every minimum cost at most 4", true, p, worst <= 4));
    report.push(Row::record("largest minimum cost", worst));
    Ok(())
}

fn random_graph(rng: &mut ChaCha8Rng) -> Result<Graph> {
    let n = rng.gen_range(2..=7);
    let tree = random_tree(n, rng.gen())?;
    let mut edges = tree.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.3) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::build(n, &edges, None)?.0)
}

fn random_counts(rng: &mut ChaCha8Rng, n: usize, max: u32) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..=max)).collect()
}

fn random_of_size(rng: &mut ChaCha8Rng, n: usize, size: u32) -> Vec<u32> {
    let mut c = vec![0; n];
    for _ in 0..size {
        c[rng.gen_range(0..n)] += 1;
    }
    c
}

fn properties(cfg: &CampaignConfig, p: Provenance, report: &mut ExperimentReport) -> Result<()> {
    let cases = cfg.cases.unwrap_or(10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failures = [0u64; 5];
    let free = |g: &Graph, c: &Configuration, d: &Distribution| -> Result<bool> {
        Ok(is_solvable(g, c, d, SearchMode::Unrestricted)?.solvable)
    };
    for _ in 0..cases {
        let g = random_graph(&mut rng)?;
        let n = g.n();
        let c = Configuration::new(random_counts(&mut rng, n, 4));
        let k = rng.gen_range(1..=3);
        let d = Distribution::new(random_of_size(&mut rng, n, k));
        let out = is_solvable(&g, &c, &d, SearchMode::Unrestricted)?;

        let mut bigger = c.clone();
        bigger.add(rng.gen_range(0..n), 1);
        if out.solvable && !free(&g, &bigger, &d)? {
            failures[0] += 1;
        }

        let moves: Vec<(usize, usize)> = (0..n)
            .filter(|&u| c[u] >= 2)
            .flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v)))
            .collect();
        if !moves.is_empty() {
            let (u, v) = moves[rng.gen_range(0..moves.len())];
            let next = apply_move(&c, u, v, &g)?;
            if (0..n).any(|r| weight(next.counts(), r, &g) > weight(c.counts(), r, &g)) {
                failures[1] += 1;
            }
        }

        let s = stats(&c);
        let lower = (c.size() as i64 - n as i64 + s.zeros as i64 + 1).div_euclid(2);
        let disjoint = (0..n).all(|v| c[v] == 0 || d[v] == 0);
        if (s.potential as i64) < lower || (disjoint && out.solvable && potential(&c) < d.size()) {
            failures[2] += 1;
        }

        let tn = rng.gen_range(2..=8);
        let tree = random_tree(tn, rng.gen())?;
        let r = rng.gen_range(0..tn);
        let floor = tree_pi(&max_path_partition(&tree.rerooted(r)?), 1)? as u32;
        let size = rng.gen_range(floor..=floor + 3);
        let tc = Configuration::new(random_of_size(&mut rng, tn, size));
        let td = Distribution::stacked(tn, r, 1);
        let tree_free = free(tree.graph(), &tc, &td)?;
        let greedy = is_solvable(tree.graph(), &tc, &td, SearchMode::Greedy)?.solvable;
        if !tree_free || !greedy {
            failures[3] += 1;
        }

        let replay_ok = match &out.solution {
            Some(sol) => sol.solves(&g, &c, &d),
            None => !out.solvable,
        };
        if !replay_ok {
            failures[4] += 1;
        }
    }
    for (name, f) in ["monotonicity", "weight monotonicity", "potential lemma", "greedy trees", "solution replay"]
        .iter()
        .zip(failures)
    {
        report.push(Row::check(format!("{name} failures in {cases}"), 0u64, p, f));
    }
    Ok(())
}
