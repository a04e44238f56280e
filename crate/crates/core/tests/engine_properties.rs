mod common;

use pebblekit::engine::{
    apply_move, find_slides, has_solution_within, is_solvable, max_fold, min_cost_solution,
    potential, stats, weight,
};
use pebblekit::families::{kneser, max_path_partition, random_tree};
use pebblekit::formulas::tree_pi;
use pebblekit::{Configuration, Distribution, SearchMode, Solver};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn instance(seed: u64) -> (pebblekit::Graph, Vec<u32>, Vec<u32>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=6);
    let g = random_connected_graph(&mut rng, n, 0.3);
    let c = random_counts(&mut rng, n, 4);
    let targets = rng.gen_range(1..=3);
    let d = random_config_of_size(&mut rng, n, targets);
    (g, c, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn solver_agrees_with_naive_search(seed in any::<u64>()) {
        let (g, c, d) = instance(seed);
        let expected = naive_solvable(&g, &c, &d);
        let out = is_solvable(&g, &Configuration::new(c.clone()), &Distribution::new(d.clone()), SearchMode::Unrestricted).unwrap();
        prop_assert_eq!(out.solvable, expected);
        prop_assert_eq!(out.solution.is_some(), expected);
    }

    #[test]
    fn restricted_modes_are_weaker(seed in any::<u64>()) {
        let (g, c, d) = instance(seed);
        let (c, d) = (Configuration::new(c), Distribution::new(d));
        let free = is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap().solvable;
        let semi = is_solvable(&g, &c, &d, SearchMode::SemiGreedy).unwrap().solvable;
        let greedy = is_solvable(&g, &c, &d, SearchMode::Greedy).unwrap().solvable;
        prop_assert!(!greedy || semi);
        prop_assert!(!semi || free);
    }

    #[test]
    fn solutions_replay(seed in any::<u64>()) {
        let (g, c, d) = instance(seed);
        let (c, d) = (Configuration::new(c), Distribution::new(d));
        for mode in [SearchMode::Unrestricted, SearchMode::SemiGreedy, SearchMode::Greedy] {
            let out = is_solvable(&g, &c, &d, mode).unwrap();
            if let Some(sol) = out.solution {
                prop_assert!(sol.solves(&g, &c, &d));
                let end = sol.replay(&g, &c).unwrap();
                prop_assert_eq!(end.size(), c.size() - sol.moves.len() as u64);
                if d.size() == 1 {
                    prop_assert_eq!(end.size(), c.size() - sol.cost.unwrap() + 1);
                }
            }
        }
    }

    #[test]
    fn adding_a_pebble_keeps_solvability(seed in any::<u64>(), extra in 0usize..6) {
        let (g, c, d) = instance(seed);
        let d = Distribution::new(d);
        let before = is_solvable(&g, &Configuration::new(c.clone()), &d, SearchMode::Unrestricted).unwrap().solvable;
        let mut bigger = c;
        bigger[extra % g.n()] += 1;
        let after = is_solvable(&g, &Configuration::new(bigger), &d, SearchMode::Unrestricted).unwrap().solvable;
        prop_assert!(!before || after);
    }

    #[test]
    fn weight_never_increases(seed in any::<u64>()) {
        let (g, c, _) = instance(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut cur = Configuration::new(c);
        for _ in 0..10 {
            let moves: Vec<(usize, usize)> = (0..g.n())
                .filter(|&u| cur[u] >= 2)
                .flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v)))
                .collect();
            if moves.is_empty() {
                break;
            }
            let (u, v) = moves[rng.gen_range(0..moves.len())];
            let next = apply_move(&cur, u, v, &g).unwrap();
            for r in 0..g.n() {
                prop_assert!(weight(next.counts(), r, &g) <= weight(cur.counts(), r, &g));
            }
            cur = next;
        }
    }

    #[test]
    fn potential_lemma(seed in any::<u64>()) {
        let (g, c, d) = instance(seed);
        let c = Configuration::new(c);
        let s = stats(&c);
        let n = g.n() as i64;
        let lower = (c.size() as i64 - n + s.zeros as i64 + 1).div_euclid(2);
        prop_assert!(s.potential as i64 >= lower);
        let d = Distribution::new(d);
        let disjoint = (0..g.n()).all(|v| c[v] == 0 || d[v] == 0);
        if disjoint && is_solvable(&g, &c, &d, SearchMode::Unrestricted).unwrap().solvable {
            prop_assert!(potential(&c) >= d.size());
        }
    }

    #[test]
    fn cheapest_solution_matches_breadth_first(seed in any::<u64>()) {
        let (g, c, _) = instance(seed);
        let r = (seed % g.n() as u64) as usize;
        let expected = naive_min_moves(&g, &c, r);
        let c = Configuration::new(c);
        let got = min_cost_solution(&g, &c, r).unwrap();
        prop_assert_eq!(got.as_ref().map(|s| s.solution.moves.len()), expected);
        if let Some(best) = got {
            let cost = best.solution.cost.unwrap();
            prop_assert_eq!(best.is_cheap, cost <= 1 << g.ecc(r));
            prop_assert!(has_solution_within(&g, &c, r, cost).unwrap());
            prop_assert!(!has_solution_within(&g, &c, r, cost - 1).unwrap());
            prop_assert!(best.solution.solves(&g, &c, &Distribution::stacked(g.n(), r, 1)));
        }
    }

    #[test]
    fn max_fold_is_tight(seed in any::<u64>()) {
        let (g, c, _) = instance(seed);
        let r = (seed % g.n() as u64) as usize;
        let t = max_fold(&g, &Configuration::new(c.clone()), r).unwrap();
        let mut d = vec![0u32; g.n()];
        d[r] = t;
        prop_assert!(t == 0 || naive_solvable(&g, &c, &d));
        d[r] = t + 1;
        prop_assert!(!naive_solvable(&g, &c, &d));
    }

    #[test]
    fn slides_are_valid(seed in any::<u64>()) {
        let (g, c, _) = instance(seed);
        let c = Configuration::new(c);
        for s in find_slides(&g, &c, None) {
            prop_assert!(s.len() >= 2);
            prop_assert!(c[s[0]] >= 2);
            prop_assert!(s[1..s.len() - 1].iter().all(|&v| c[v] >= 1));
            prop_assert!(s.windows(2).all(|w| g.adjacent(w[0], w[1])));
        }
    }

    #[test]
    fn trees_are_greedy(seed in any::<u64>(), n in 2usize..8) {
        let tree = random_tree(n, seed).unwrap();
        let g = tree.graph();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.gen_range(0..n);
        let rooted = tree.rerooted(r).unwrap();
        let floor = tree_pi(&max_path_partition(&rooted), 1).unwrap() as u32;
        let size = rng.gen_range(floor..=floor + 3);
        let c = Configuration::new(random_config_of_size(&mut rng, n, size));
        let d = Distribution::stacked(n, r, 1);
        let free = is_solvable(g, &c, &d, SearchMode::Unrestricted).unwrap().solvable;
        let greedy = is_solvable(g, &c, &d, SearchMode::Greedy).unwrap().solvable;
        prop_assert!(free);
        prop_assert_eq!(free, greedy);
    }
}

#[test]
fn reused_solver_matches_fresh_solver() {
    // The failure cache persists across calls; verdicts must not drift.
    let g = kneser(5, 2).unwrap();
    let d = Distribution::stacked(10, 3, 2);
    let mut shared = Solver::new(&g, &d, SearchMode::Unrestricted).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let size = rng.gen_range(8..14);
        let c = random_config_of_size(&mut rng, 10, size);
        let fresh = is_solvable(&g, &Configuration::new(c.clone()), &d, SearchMode::Unrestricted)
            .unwrap()
            .solvable;
        assert_eq!(shared.decide(&c).unwrap(), fresh, "{c:?}");
    }
}

#[test]
fn spec_examples() {
    let g = kneser(5, 2).unwrap();
    let mut j = vec![1u32; 10];
    j[0] = 0;
    let jr = Configuration::new(j);
    let d = Distribution::stacked(10, 0, 1);
    assert!(!is_solvable(&g, &jr, &d, SearchMode::Unrestricted).unwrap().solvable);
    assert_eq!(weight(jr.counts(), 0, &g).as_f64(), 3.0);
    assert_eq!(max_fold(&g, &jr, 0).unwrap(), 0);
    assert!(find_slides(&g, &jr, None).is_empty());
    let c = pebblekit::formulas::build_c_t2(&g, 0, 2).unwrap();
    assert!(!is_solvable(&g, &c, &Distribution::stacked(10, 0, 2), SearchMode::Unrestricted)
        .unwrap()
        .solvable);
    for t in 1..=3 {
        // t 2^d pebbles stacked at distance d solve exactly t.
        let mut counts = vec![0u32; 10];
        counts[g.metrics().layer(0, 2)[0]] = 4 * t;
        assert_eq!(max_fold(&g, &Configuration::new(counts), 0).unwrap(), t);
    }
}
