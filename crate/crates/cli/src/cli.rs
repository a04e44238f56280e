//! Argument parsing and dispatch for the `pebblekit` binary.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pebblekit::engine::{is_solvable, min_cost_solution};
use pebblekit::formulas::*;
use pebblekit::numbers::*;
use pebblekit::{Configuration, Distribution, Graph, SearchMode};
use serde_json::{json, Value};

use crate::campaign::{run_campaign, CampaignConfig};
use crate::graph_io::{graph_text, read_graph};
use crate::input::{parse_counts, parse_family, parse_range, parse_spec, Family};
use crate::registry::Registry;
use crate::report::{ExperimentReport, Provenance, Row};

#[derive(Parser, Debug)]
#[command(name = "pebblekit", version, about = "Exact graph pebbling experiments")]
pub struct Cli {
    /// Configuration checks allowed per search.
    #[arg(long, global = true, env = "PEBBLEKIT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads for enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write output here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct GraphSource {
    /// Graph JSON file.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    /// Family expression such as `kneser:5`, `two-path:k=1,2;overlap=1`,
    /// `tree:7:42`, `path:4`, `complete:4`, `cycle:5`.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct DemandArgs {
    /// Demand as per-vertex counts.
    #[arg(long, conflicts_with = "root")]
    pub demand: Option<String>,
    /// Stack the demand on this vertex.
    #[arg(long)]
    pub root: Option<usize>,
    /// Pebbles demanded on `--root`.
    #[arg(long, default_value_t = 1)]
    pub t: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a family graph.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Decide solvability of one configuration.
    Solve {
        #[command(flatten)]
        source: GraphSource,
        /// Configuration as per-vertex counts.
        #[arg(long)]
        config: String,
        #[command(flatten)]
        demand: DemandArgs,
        #[arg(long, default_value = "unrestricted")]
        mode: SearchMode,
        /// Also report a minimum-cost solution (single target only).
        #[arg(long)]
        cheapest: bool,
    },
    /// Exact pi(G, D) or pi_t(G).
    Pi {
        #[command(flatten)]
        source: GraphSource,
        /// Demand counts; otherwise `t` stacked on the roots.
        #[arg(long)]
        demand: Option<String>,
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Restrict to one root.
        #[arg(long, conflicts_with = "transitive")]
        root: Option<usize>,
        /// Check root 0 only; rejected unless the graph is vertex transitive.
        #[arg(long)]
        transitive: bool,
        /// Starting guess; the answer is exact either way.
        #[arg(long)]
        hint: Option<u64>,
        /// Expected value, compared exactly.
        #[arg(long)]
        expect: Option<u64>,
    },
    /// Search for an unsolvable configuration of a given size.
    Witness {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        demand: DemandArgs,
        #[arg(long)]
        size: u64,
        /// List every unsolvable configuration instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Check pi(G, D) <= pi_t(G) for every demand of size t.
    VerifyTarget {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long)]
        hint: Option<u64>,
        #[arg(long)]
        transitive: bool,
    },
    /// Run a registry claim.
    Verify {
        /// Claim id; see `pebblekit claims`.
        claim: Option<String>,
        /// Campaign file; flags given here override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Kneser ground set sizes, e.g. `5` or `5..7`.
        #[arg(long)]
        m: Option<String>,
        /// Demand sizes, e.g. `2` or `1..3`.
        #[arg(long)]
        t: Option<String>,
        /// 2-path spec, e.g. `k=3,4,2;overlap=0,1`.
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        trees: Option<usize>,
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Evaluate a closed form.
    #[command(subcommand)]
    Formula(FormulaCommand),
    /// List the claim registry.
    Claims,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    Kneser {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        h: usize,
    },
    TwoPath {
        #[arg(long)]
        spec: String,
    },
    /// Random tree from `--seed`.
    Tree {
        #[arg(long)]
        n: usize,
    },
    /// Every valid 2-path spec with diameter `d` on `n` vertices.
    TwoPathSpecs {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FormulaCommand {
    Tree {
        /// Path lengths, non-increasing.
        #[arg(long)]
        partition: String,
        #[arg(long, default_value_t = 1)]
        t: u64,
    },
    TwoPath {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        t: u64,
    },
    Spinal {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ecc: u32,
        #[arg(long)]
        non_spinal: bool,
    },
    SpinalBound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u32,
    },
    Kneser {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        t: u64,
    },
}

/// What a command produced.
#[derive(Debug)]
pub enum Output {
    Report(ExperimentReport),
    Json(Value),
    Text(String),
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String> {
        match (self, format) {
            (Output::Report(r), Format::Json) => Ok(r.to_json()),
            (Output::Report(r), Format::Csv) => r.to_csv(),
            (Output::Json(v), Format::Json) => Ok(format!("{}\n", serde_json::to_string_pretty(v)?)),
            (Output::Text(s), Format::Json) => Ok(s.clone()),
            _ => bail!("csv output is only available for reports"),
        }
    }

    /// Exit status: 0 pass, 1 fail.
    pub fn passed(&self) -> bool {
        match self {
            Output::Report(r) => r.passed(),
            _ => true,
        }
    }
}

fn load(source: &GraphSource, warnings: &mut Vec<String>) -> Result<(Graph, Value)> {
    match (&source.graph, &source.family) {
        (Some(path), None) => {
            let loaded = read_graph(path)?;
            warnings.extend(loaded.warnings);
            Ok((loaded.graph, json!({"file": path.display().to_string()})))
        }
        (None, Some(expr)) => Ok((parse_family(expr)?.build()?, json!({"family": expr}))),
        _ => bail!("give exactly one of --graph or --family"),
    }
}

fn demand_of(g: &Graph, args: &DemandArgs) -> Result<Distribution> {
    match (&args.demand, args.root) {
        (Some(s), _) => Ok(Distribution::for_graph(g, parse_counts(s)?)?),
        (None, Some(r)) => {
            if r >= g.n() {
                bail!("root {r} out of range for {} vertices", g.n());
            }
            Ok(Distribution::stacked(g.n(), r, args.t))
        }
        (None, None) => bail!("give --demand or --root"),
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let opts = SearchOptions::default().with_budget(cli.budget).with_jobs(cli.jobs.max(1));
    let mut warnings = Vec::new();
    let out = match &cli.command {
        Command::Gen(cmd) => Output::Text(match cmd {
            GenCommand::Kneser { m, h } => graph_text(&pebblekit::families::kneser(*m, *h)?),
            GenCommand::TwoPath { spec } => graph_text(&Family::TwoPath(parse_spec(spec)?).build()?),
            GenCommand::Tree { n } => graph_text(&Family::Tree { n: *n, seed: cli.seed }.build()?),
            GenCommand::TwoPathSpecs { d, n } => {
                let specs = pebblekit::families::FanSpec::enumerate(*d, *n);
                format!("{}\n", serde_json::to_string(&specs)?)
            }
        }),
        Command::Solve { source, config, demand, mode, cheapest } => {
            let (g, _) = load(source, &mut warnings)?;
            let c = Configuration::for_graph(&g, parse_counts(config)?)?;
            let d = demand_of(&g, demand)?;
            let outcome = is_solvable(&g, &c, &d, *mode)?;
            let mut v = serde_json::to_value(&outcome)?;
            if *cheapest {
                let r = d
                    .single_target()
                    .filter(|_| d.size() == 1)
                    .ok_or_else(|| anyhow!("--cheapest needs a demand of one pebble"))?;
                v["cheapest"] = match min_cost_solution(&g, &c, r)? {
                    Some(best) => json!({"solution": best.solution, "is_cheap": best.is_cheap}),
                    None => Value::Null,
                };
            }
            if !warnings.is_empty() {
                v["warnings"] = json!(warnings);
            }
            Output::Json(v)
        }
        Command::Pi { source, demand, t, root, transitive, hint, expect } => {
            let (g, origin) = load(source, &mut warnings)?;
            let params = json!({"graph": origin, "demand": demand, "t": t, "root": root,
                "transitive": transitive, "hint": hint, "budget": cli.budget, "jobs": cli.jobs});
            let mut report = ExperimentReport::new("pi", params, cli.seed);
            let (value, checked, witness) = match demand {
                Some(s) => {
                    let d = Distribution::for_graph(&g, parse_counts(s)?)?;
                    let res = pi_d(&g, &d, *hint, &opts)?;
                    (res.value, res.configs_checked, json!(res.witness))
                }
                None => {
                    let roots = match (root, transitive) {
                        (Some(r), _) => Roots::Single(*r),
                        (None, true) => Roots::Transitive,
                        (None, false) => Roots::All,
                    };
                    let res = pi_t(&g, *t, roots, *hint, &opts)?;
                    (res.value, res.configs_checked, json!({"root": res.root, "configuration": res.witness}))
                }
            };
            report.configs_checked = checked;
            report.witnesses.push(witness);
            report.push(match expect {
                Some(e) => Row::check("pi", *e, Provenance::Derived, value),
                None => Row::record("pi", value),
            });
            report.warnings = warnings.clone();
            Output::Report(report)
        }
        Command::Witness { source, demand, size, all } => {
            let (g, origin) = load(source, &mut warnings)?;
            let d = demand_of(&g, demand)?;
            let params = json!({"graph": origin, "demand": d, "size": size, "all": all,
                "budget": cli.budget, "jobs": cli.jobs});
            let mut report = ExperimentReport::new("witness", params, cli.seed);
            if *all {
                let res = scan_unsolvable(&g, &d, *size, &opts)?;
                report.configs_checked = res.configs_checked;
                report.push(Row::record("unsolvable", res.witnesses.len()));
                report.witnesses = res.witnesses.iter().map(|c| json!(c)).collect();
            } else {
                let res = find_unsolvable_witness(&g, &d, *size, &opts)?;
                report.configs_checked = res.configs_checked;
                report.push(Row::record("witness found", res.witness.is_some()));
                report.witnesses.extend(res.witness.map(|c| json!(c)));
            }
            report.warnings = warnings.clone();
            Output::Report(report)
        }
        Command::VerifyTarget { source, t, hint, transitive } => {
            let (g, origin) = load(source, &mut warnings)?;
            let params = json!({"graph": origin, "t": t, "hint": hint, "transitive": transitive,
                "budget": cli.budget, "jobs": cli.jobs});
            let mut report = ExperimentReport::new("verify-target", params, cli.seed);
            let roots = if *transitive { Roots::Transitive } else { Roots::All };
            let rep = verify_target_conjecture(&g, *t, &DemandClasses::All, roots, *hint, &opts)?;
            report.configs_checked = rep.configs_checked;
            report.push(Row::record("pi_t", rep.pi_t));
            report.push(Row::record("demands", rep.demands_checked));
            report.push(Row::check("passed", true, Provenance::Derived, rep.passed));
            if let Some((c, d)) = rep.counterexample {
                report.witnesses.push(json!({"configuration": c, "demand": d}));
            }
            report.warnings = warnings.clone();
            Output::Report(report)
        }
        Command::Verify { claim, config, m, t, spec, n, max_n, trees, cases } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str::<CampaignConfig>(&text)
                        .with_context(|| format!("parsing {}", path.display()))?
                }
                None => CampaignConfig::new(
                    claim.as_deref().ok_or_else(|| anyhow!("give a claim id or --config"))?,
                ),
            };
            if let Some(c) = claim {
                cfg.claim = c.clone();
            }
            if let Some(m) = m {
                cfg.m = Some(parse_range(m)?.into_iter().map(u64::from).collect());
            }
            if let Some(t) = t {
                cfg.t = Some(parse_range(t)?);
            }
            if let Some(s) = spec {
                cfg.spec = Some(parse_spec(s)?);
            }
            cfg.n = n.or(cfg.n);
            cfg.max_n = max_n.or(cfg.max_n);
            cfg.trees = trees.or(cfg.trees);
            cfg.cases = cases.or(cfg.cases);
            if config.is_none() {
                cfg.budget = cli.budget;
                cfg.jobs = cli.jobs.max(1);
                cfg.seed = cli.seed;
            }
            Output::Report(run_campaign(&cfg)?)
        }
        Command::Formula(cmd) => Output::Json(formula(cmd)?),
        Command::Claims => Output::Json(serde_json::to_value(Registry::builtin())?),
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    Ok(out)
}

// Exact integers; values past u64 are written as decimal strings.
fn big(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| json!(v.to_string()), |x| json!(x))
}

fn formula(cmd: &FormulaCommand) -> Result<Value> {
    Ok(match cmd {
        FormulaCommand::Tree { partition, t } => {
            let parts = parse_counts(partition)?;
            json!({"formula": "tree_pi", "params": {"partition": parts, "t": t},
                "value": big(tree_pi(&parts, *t)?)})
        }
        FormulaCommand::TwoPath { n, d, t } => json!({"formula": "two_path_pi_t",
            "params": {"n": n, "d": d, "t": t}, "value": big(two_path_pi_t(*n, *d, *t)?)}),
        FormulaCommand::Spinal { n, d, ecc, non_spinal } => json!({"formula": "spinal_pi",
            "params": {"n": n, "d": d, "ecc": ecc, "spinal": !non_spinal},
            "value": big(spinal_pi(*n, *d, *ecc, !non_spinal)?)}),
        FormulaCommand::SpinalBound { n, d } => json!({"formula": "spinal_bound",
            "params": {"n": n, "d": d}, "value": big(spinal_bound(*n, *d)?)}),
        FormulaCommand::Kneser { m, t } => {
            let params = KneserParams::new(*m, *t)?;
            json!({"formula": "kneser_p", "params": {"m": m, "t": t, "n": params.n(), "t0": params.t0()},
                "value": kneser_p(params)})
        }
    })
}
