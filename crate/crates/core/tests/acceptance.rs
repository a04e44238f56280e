//! One line per acceptance criterion. Run with
//! `cargo test -p pebblekit --test acceptance`.
//! Set `PEBBLEKIT_FULL=1` to exhaust every size-15 configuration of K(6,2).

mod common;

use std::process::ExitCode;
use std::time::Instant;

use pebblekit::engine::{
    apply_move, is_solvable, min_cost_solution, potential, stats, weight,
};
use pebblekit::families::{
    kneser, max_path_partition, random_tree, spinal_tree, FanSpec, RootKind, TwoPath,
};
use pebblekit::formulas::*;
use pebblekit::numbers::*;
use pebblekit::symmetry::{automorphisms, pair_orbits};
use pebblekit::{Configuration, Distribution, SearchMode, Solver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
    /// A failure that matches a documented gap in the source claim.
    documented: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
            documented: false,
        }
    }
}

fn two_path_specs(ds: &[usize], max_n: usize) -> Vec<FanSpec> {
    ds.iter()
        .flat_map(|&d| (d + 1..=max_n).flat_map(move |n| FanSpec::enumerate(d, n)))
        .collect()
}

fn petersen_pi() -> Outcome {
    let g = kneser(5, 2).unwrap();
    let d = Distribution::stacked(10, 0, 1);
    let opts = SearchOptions::default();
    let at9 = scan_unsolvable(&g, &d, 9, &opts).unwrap();
    let at10 = find_unsolvable_witness(&g, &d, 10, &opts).unwrap();
    let jr = build_j_r(&g, 0).unwrap();
    let pass = at9.configs_checked == 48_620
        && at9.witnesses == vec![jr]
        && at10.witness.is_none()
        && at10.configs_checked == 92_378;
    Outcome::new(
        pass,
        format!(
            "size 9: {} checked, {} unsolvable (J_r); size 10: {} checked, none unsolvable",
            at9.configs_checked,
            at9.witnesses.len(),
            at10.configs_checked
        ),
    )
}

fn petersen_pi2() -> Outcome {
    let g = kneser(5, 2).unwrap();
    let d = Distribution::stacked(10, 0, 2);
    let c = build_c_t2(&g, 0, 2).unwrap();
    let stuck = !is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap().solvable;
    let scan = find_unsolvable_witness(&g, &d, 13, &SearchOptions::default()).unwrap();
    let p = kneser_p(KneserParams::new(5, 2).unwrap()).p;
    let pass = stuck && c.size() == 12 && scan.witness.is_none() && scan.configs_checked == 497_420 && p == 13;
    Outcome::new(
        pass,
        format!(
            "C_(2,2) size {} unsolvable={stuck}; size 13: {} checked, witness={}",
            c.size(),
            scan.configs_checked,
            scan.witness.is_some()
        ),
    )
}

fn petersen_target() -> Outcome {
    let g = kneser(5, 2).unwrap();
    let group = automorphisms(&g).unwrap();
    let orbits = pair_orbits(&group, 10);
    let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    // One representative per orbit, each containing vertex 0.
    let mut demands = Vec::new();
    let mut dists = Vec::new();
    for orbit in &orbits {
        let &(u, v) = orbit.iter().find(|&&(u, _)| u == 0).expect("orbit meets vertex 0");
        dists.push(g.dist(u, v));
        demands.push(Distribution::from_targets(10, &[u, v]));
    }
    dists.sort_unstable();
    let report = verify_target_conjecture(
        &g,
        2,
        &DemandClasses::Explicit(demands),
        Roots::Transitive,
        Some(13),
        &SearchOptions::default(),
    )
    .unwrap();
    let pass = sizes == [10, 15, 30] && dists == [0, 1, 2] && report.passed && report.pi_t == 13;
    Outcome::new(
        pass,
        format!(
            "pair orbits {sizes:?} at distances {dists:?}; pi_2 = {}; {} demands, {} configurations, passed={}",
            report.pi_t, report.demands_checked, report.configs_checked, report.passed
        ),
    )
}

fn two_path_pi_t_check() -> Outcome {
    let opts = SearchOptions::default();
    let specs = two_path_specs(&[2, 3], 8);
    let mut bad = Vec::new();
    let mut rows = 0;
    for spec in &specs {
        let tp = TwoPath::from_spec(spec).unwrap();
        let g = tp.graph();
        let (n, d) = (g.n() as u64, g.diameter());
        for t in 1..=3u32 {
            let want = two_path_pi_t(n, d, u64::from(t)).unwrap() as u64;
            let got = pi_t(g, t, Roots::All, Some(want), &opts).unwrap().value;
            rows += 1;
            if got != want {
                bad.push(format!("{spec:?} t={t}: {got} != {want}"));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{} graphs, {rows} (graph, t) rows, mismatches {bad:?}", specs.len()),
    )
}

fn two_path_target() -> Outcome {
    let opts = SearchOptions::default();
    let specs = two_path_specs(&[2, 3], 8);
    let mut failed = Vec::new();
    let mut demands = 0;
    for spec in &specs {
        let tp = TwoPath::from_spec(spec).unwrap();
        let g = tp.graph();
        let hint = two_path_pi_t(g.n() as u64, g.diameter(), 2).unwrap() as u64;
        let rep = verify_target_conjecture(g, 2, &DemandClasses::All, Roots::All, Some(hint), &opts).unwrap();
        demands += rep.demands_checked;
        if !rep.passed {
            failed.push(format!("{spec:?}"));
        }
    }
    Outcome::new(
        failed.is_empty(),
        format!("{} graphs, {demands} demands at size pi_2, failures {failed:?}", specs.len()),
    )
}

fn tree_formula() -> Outcome {
    let opts = SearchOptions::default();
    let mut problems = Vec::new();
    let (mut rows, mut enumerated) = (0, 0);
    for seed in 0..50u64 {
        let n = 2 + (seed as usize % 8);
        let tree = random_tree(n, 1000 + seed).unwrap();
        let partition = max_path_partition(&tree);
        let best = all_path_partitions(&tree).into_iter().max().unwrap();
        if partition != best {
            problems.push(format!("seed {seed}: partition {partition:?} vs {best:?}"));
        }
        for t in 1..=3u32 {
            rows += 1;
            let formula = tree_pi(&partition, u64::from(t)).unwrap() as u64;
            let exact = tree_pi_exact(&tree, t).unwrap();
            let extremal = tree_max_unsolvable(&tree, t).unwrap();
            let d = Distribution::stacked(n, tree.root(), t);
            let stuck = !is_solvable(tree.graph(), &extremal, &d, SearchMode::Unrestricted)
                .unwrap()
                .solvable;
            if exact != formula || extremal.size() + 1 != exact || !stuck {
                problems.push(format!("seed {seed} t={t}: table {exact} formula {formula}"));
            }
            if config_count(n, formula) + config_count(n, formula - 1) <= 2_000_000 {
                enumerated += 1;
                let got = pi_d(tree.graph(), &d, Some(formula), &opts).unwrap().value;
                if got != formula {
                    problems.push(format!("seed {seed} t={t}: enumeration {got} formula {formula}"));
                }
            }
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!("50 trees, {rows} rows, {enumerated} also enumerated, problems {problems:?}"),
    )
}

fn spinal_trees() -> Outcome {
    let mut roots = 0;
    let mut failures = Vec::new();
    let mut over_bound = 0;
    for spec in two_path_specs(&(2..=11).collect::<Vec<_>>(), 12) {
        let tp = TwoPath::from_spec(&spec).unwrap();
        let g = tp.graph();
        let (n, d) = (g.n() as u64, g.diameter());
        let (s1, s2) = tp.ends();
        for r in 0..g.n() {
            roots += 1;
            let st = spinal_tree(&tp, r).unwrap();
            let got = tree_pi(&max_path_partition(&st.tree), 1).unwrap();
            let want = spinal_pi(n, d, g.ecc(r), st.kind.is_spinal()).unwrap();
            let bound = spinal_bound(n, d).unwrap();
            if got > bound {
                over_bound += 1;
            }
            if got != want || got > bound {
                failures.push((st.kind, g.dist(r, s1) + g.dist(r, s2) - d, spec.clone(), r));
            }
        }
    }
    let documented = !failures.is_empty()
        && failures
            .iter()
            .all(|(kind, excess, _, _)| *kind == RootKind::NonSpinalOneFan && *excess == 2);
    let first = failures
        .first()
        .map(|(_, _, spec, r)| format!("; first {spec:?} root {r}"))
        .unwrap_or_default();
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "{roots} roots, {} off the closed form, {over_bound} above 2^d+n-d-1{}{first}",
            failures.len(),
            if documented {
                ", all one-fan roots with dist(r,s1)+dist(r,s2) = d+2"
            } else {
                ""
            }
        ),
        documented,
    }
}

fn kneser_connectivity() -> Outcome {
    let got: Vec<(usize, usize)> = (5..=7)
        .map(|m| (kneser(m, 2).unwrap().vertex_connectivity(), (m - 2) * (m - 3) / 2))
        .collect();
    Outcome::new(got.iter().all(|(a, b)| a == b), format!("(computed, binom(m-2,2)) for m=5..7: {got:?}"))
}

fn extremal_configs() -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for m in [5usize, 6] {
        let g = kneser(m, 2).unwrap();
        let n = g.n() as u64;
        for t in 1..=3u32 {
            let tt = u64::from(t);
            let d = Distribution::stacked(g.n(), 0, t);
            let c1 = build_c_t1(&g, 0, t).unwrap();
            let c2 = build_c_t2(&g, 0, t).unwrap();
            let u1 = !is_solvable(&g, &c1, &d, SearchMode::Unrestricted).unwrap().solvable;
            let u2 = !is_solvable(&g, &c2, &d, SearchMode::Unrestricted).unwrap().solvable;
            let ok = u1
                && u2
                && c1.size() == n + 2 * tt - 3
                && c2.size() == 4 * tt + 2 * (m as u64 - 2) - 2;
            pass &= ok;
            rows.push(format!("m={m} t={t}: |C1|={} |C2|={}", c1.size(), c2.size()));
        }
    }
    Outcome::new(pass, format!("all unsolvable with formula sizes: {}", rows.join(", ")))
}

fn petersen_cheap() -> Outcome {
    let g = kneser(5, 2).unwrap();
    let mut worst = 0;
    let mut count = 0u64;
    let mut unsolved = 0u64;
    for counts in enumerate_configs(10, 13) {
        count += 1;
        match min_cost_solution(&g, &Configuration::new(counts), 0).unwrap() {
            Some(best) => worst = worst.max(best.solution.cost.unwrap()),
            None => unsolved += 1,
        }
    }
    Outcome::new(
        count == 497_420 && unsolved == 0 && worst <= 4,
        format!("{count} configurations, largest minimum cost {worst}, unsolvable {unsolved}"),
    )
}

fn kneser6_pi() -> Outcome {
    let g = kneser(6, 2).unwrap();
    let d = Distribution::stacked(15, 0, 1);
    let c = build_c_t1(&g, 0, 1).unwrap();
    let stuck = !is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap().solvable;
    let total = config_count(15, 15);
    let mut solver = Solver::new(&g, &d, SearchMode::Unrestricted).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6e);
    let mut bad = 0;
    for _ in 0..1_000_000 {
        let idx = rng.gen_range(0..total);
        let counts = unrank(15, 15, idx).unwrap();
        if !solver.decide(&counts).unwrap() {
            bad += 1;
        }
    }
    let mut detail = format!(
        "C_(1,1) size {} unsolvable={stuck}; 10^6 random size-15 configurations, {bad} unsolvable",
        c.size()
    );
    let mut pass = stuck && c.size() == 14 && bad == 0;
    if std::env::var("PEBBLEKIT_FULL").is_ok_and(|v| v == "1") {
        let full = find_unsolvable_witness(&g, &d, 15, &SearchOptions::default()).unwrap();
        pass &= full.witness.is_none();
        detail += &format!("; full scan {} checked, witness={}", full.configs_checked, full.witness.is_some());
    }
    Outcome::new(pass, detail)
}

fn random_instance(rng: &mut ChaCha8Rng) -> (pebblekit::Graph, Vec<u32>, Vec<u32>) {
    let n = rng.gen_range(2..=7);
    let g = random_connected_graph(rng, n, 0.3);
    let c = random_counts(rng, n, 4);
    let k = rng.gen_range(1..=3);
    let d = random_config_of_size(rng, n, k);
    (g, c, d)
}

fn engine_properties() -> Outcome {
    const CASES: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut failures = [0usize; 5];
    let solvable = |g: &pebblekit::Graph, c: &[u32], d: &[u32]| {
        is_solvable(g, &Configuration::new(c.to_vec()), &Distribution::new(d.to_vec()), SearchMode::Unrestricted)
            .unwrap()
    };
    // Monotonicity.
    for _ in 0..CASES {
        let (g, c, d) = random_instance(&mut rng);
        let mut bigger = c.clone();
        bigger[rng.gen_range(0..g.n())] += 1;
        if solvable(&g, &c, &d).solvable && !solvable(&g, &bigger, &d).solvable {
            failures[0] += 1;
        }
    }
    // Weight never increases under a random step.
    for _ in 0..CASES {
        let (g, c, _) = random_instance(&mut rng);
        let c = Configuration::new(c);
        let moves: Vec<(usize, usize)> = (0..g.n())
            .filter(|&u| c[u] >= 2)
            .flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v)))
            .collect();
        if moves.is_empty() {
            continue;
        }
        let (u, v) = moves[rng.gen_range(0..moves.len())];
        let next = apply_move(&c, u, v, &g).unwrap();
        if (0..g.n()).any(|r| weight(next.counts(), r, &g) > weight(c.counts(), r, &g)) {
            failures[1] += 1;
        }
    }
    // Potential Lemma, both parts.
    for _ in 0..CASES {
        let (g, c, d) = random_instance(&mut rng);
        let conf = Configuration::new(c.clone());
        let s = stats(&conf);
        let lower = (conf.size() as i64 - g.n() as i64 + s.zeros as i64 + 1).div_euclid(2);
        let disjoint = (0..g.n()).all(|v| c[v] == 0 || d[v] == 0);
        let needed = d.iter().map(|&x| u64::from(x)).sum::<u64>();
        if (s.potential as i64) < lower
            || (disjoint && solvable(&g, &c, &d).solvable && potential(&conf) < needed)
        {
            failures[2] += 1;
        }
    }
    // Greedy completeness on trees at and above the pebbling number.
    for i in 0..CASES {
        let n = rng.gen_range(2..=8);
        let tree = random_tree(n, 0x7ee + i as u64).unwrap();
        let r = rng.gen_range(0..n);
        let rooted = tree.rerooted(r).unwrap();
        let floor = tree_pi(&max_path_partition(&rooted), 1).unwrap() as u32;
        let size = rng.gen_range(floor..=floor + 3);
        let c = Configuration::new(random_config_of_size(&mut rng, n, size));
        let d = Distribution::stacked(n, r, 1);
        let free = is_solvable(tree.graph(), &c, &d, SearchMode::Unrestricted).unwrap().solvable;
        let greedy = is_solvable(tree.graph(), &c, &d, SearchMode::Greedy).unwrap().solvable;
        if !free || free != greedy {
            failures[3] += 1;
        }
    }
    // Returned solutions replay and meet the demand.
    for _ in 0..CASES {
        let (g, c, d) = random_instance(&mut rng);
        let (c, d) = (Configuration::new(c), Distribution::new(d));
        let out = is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap();
        let ok = match &out.solution {
            Some(sol) => sol.solves(&g, &c, &d) && sol.replay(&g, &c).is_ok(),
            None => !out.solvable,
        };
        if !ok {
            failures[4] += 1;
        }
    }
    Outcome::new(
        failures.iter().all(|&f| f == 0),
        format!(
            "{CASES} instances each; failures monotonicity {}, weight {}, potential {}, greedy trees {}, replay {}",
            failures[0], failures[1], failures[2], failures[3], failures[4]
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("pi(K(5,2)) = 10, J_r the unique size-9 witness", petersen_pi),
        ("pi_2(K(5,2)) = 13 = p(5,2)", petersen_pi2),
        ("Target Conjecture on K(5,2), t = 2", petersen_target),
        ("2-path pi_t = t 2^d + n - 2d", two_path_pi_t_check),
        ("Target Conjecture on 2-paths, t = 2", two_path_target),
        ("tree pi_t from the maximum path partition", tree_formula),
        ("spinal trees meet the closed form and bound", spinal_trees),
        ("connectivity of K(m,2) is binom(m-2,2)", kneser_connectivity),
        ("C_(t,1) and C_(t,2) are t-fold unsolvable", extremal_configs),
        ("every size-13 configuration on K(5,2) is cheap", petersen_cheap),
        ("pi(K(6,2)) = 15 (witness plus sampling)", kneser6_pi),
        ("engine property suites", engine_properties),
    ];
    let mut unexpected = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let verdict = match (out.pass, out.documented) {
            (true, _) => "PASS",
            (false, true) => "FAIL (documented)",
            (false, false) => "FAIL",
        };
        if !out.pass && !out.documented {
            unexpected += 1;
        }
        println!(
            "criterion {:>2} {verdict}: {title} | {} | {:.1}s",
            i + 1,
            out.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
