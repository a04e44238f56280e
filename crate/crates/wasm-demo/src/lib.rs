//! Browser bindings for the pebblekit demo page.

use pebblekit::engine::{is_solvable, min_cost_solution};
use pebblekit::families::{kneser, max_path_partition, random_tree, spinal_tree, FanSpec, TwoPath};
use pebblekit::formulas::{spinal_bound, spinal_pi, tree_pi};
use pebblekit::{Configuration, Distribution, Graph, SearchMode};
use serde::Serialize;
use wasm_bindgen::prelude::*;

type Res<T> = Result<T, String>;

#[derive(Serialize)]
struct GraphView {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Vec<String>,
    diameter: u32,
    /// Spine of a 2-path, empty for other families.
    spine: Vec<usize>,
}

fn view(g: &Graph, spine: Vec<usize>) -> GraphView {
    GraphView {
        n: g.n(),
        edges: g.edges().to_vec(),
        labels: (0..g.n()).map(|v| g.label(v)).collect(),
        diameter: g.diameter(),
        spine,
    }
}

fn to_json<T: Serialize>(v: &T) -> Res<String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn spec(k: &[u32], overlap: &[u8]) -> FanSpec {
    let k = k.iter().map(|&x| x as usize).collect();
    if overlap.is_empty() {
        FanSpec::without_overlaps(k)
    } else {
        FanSpec::new(k, overlap.iter().map(|&o| o != 0).collect())
    }
}

fn graph_from(family: &str, a: u32, b: u32, k: &[u32], overlap: &[u8]) -> Res<(Graph, Vec<usize>)> {
    let err = |e: pebblekit::Error| e.to_string();
    match family {
        "kneser" => Ok((kneser(a as usize, 2).map_err(err)?, Vec::new())),
        "two-path" => {
            let tp = TwoPath::from_spec(&spec(k, overlap)).map_err(err)?;
            let spine = tp.spine().to_vec();
            Ok((tp.into_graph(), spine))
        }
        "tree" => Ok((random_tree(a as usize, u64::from(b)).map_err(err)?.graph().clone(), Vec::new())),
        other => Err(format!("unknown family {other:?}")),
    }
}

pub fn generate_json(family: &str, a: u32, b: u32, k: &[u32], overlap: &[u8]) -> Res<String> {
    let (g, spine) = graph_from(family, a, b, k, overlap)?;
    to_json(&view(&g, spine))
}

#[derive(Serialize)]
struct Trace {
    solvable: bool,
    moves: Vec<(usize, usize)>,
    /// Counts before the first move and after every move.
    steps: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_cost: Option<u64>,
    states_explored: u64,
}

pub fn solve_json(family: &str, a: u32, b: u32, k: &[u32], overlap: &[u8], config: &[u32], demand: &[u32]) -> Res<String> {
    let (g, _) = graph_from(family, a, b, k, overlap)?;
    let err = |e: pebblekit::Error| e.to_string();
    let c = Configuration::for_graph(&g, config.to_vec()).map_err(err)?;
    let d = Distribution::for_graph(&g, demand.to_vec()).map_err(err)?;
    if d.size() == 0 {
        return Err("place at least one target pebble".into());
    }
    let out = is_solvable(&g, &c, &d, SearchMode::Unrestricted).map_err(err)?;
    let mut moves = out.solution.map(|s| s.moves).unwrap_or_default();
    let mut min_cost = None;
    if let (Some(r), true) = (d.single_target(), d.size() == 1 && out.solvable) {
        if let Some(best) = min_cost_solution(&g, &c, r).map_err(err)? {
            min_cost = best.solution.cost;
            moves = best.solution.moves;
        }
    }
    let mut steps = vec![c.counts().to_vec()];
    let mut cur = c;
    for &(u, v) in &moves {
        cur = pebblekit::engine::apply_move(&cur, u, v, &g).map_err(err)?;
        steps.push(cur.counts().to_vec());
    }
    to_json(&Trace {
        solvable: out.solvable,
        moves,
        steps,
        min_cost,
        states_explored: out.states_explored,
    })
}

#[derive(Serialize)]
struct SpinalView {
    kind: String,
    tree_edges: Vec<(usize, usize)>,
    partition: Vec<u32>,
    pi: String,
    closed_form: String,
    bound: String,
}

pub fn spinal_json(k: &[u32], overlap: &[u8], root: u32) -> Res<String> {
    let err = |e: pebblekit::Error| e.to_string();
    let tp = TwoPath::from_spec(&spec(k, overlap)).map_err(err)?;
    let st = spinal_tree(&tp, root as usize).map_err(err)?;
    let g = tp.graph();
    let (n, d) = (g.n() as u64, g.diameter());
    let partition = max_path_partition(&st.tree);
    to_json(&SpinalView {
        kind: format!("{:?}", st.kind),
        tree_edges: st.tree.edges().to_vec(),
        pi: tree_pi(&partition, 1).map_err(err)?.to_string(),
        closed_form: spinal_pi(n, d, g.ecc(root as usize), st.kind.is_spinal())
            .map_err(err)?
            .to_string(),
        bound: spinal_bound(n, d).map_err(err)?.to_string(),
        partition,
    })
}

#[wasm_bindgen]
pub fn generate(family: &str, a: u32, b: u32, k: Vec<u32>, overlap: Vec<u8>) -> Result<String, JsError> {
    generate_json(family, a, b, &k, &overlap).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn solve(family: &str, a: u32, b: u32, k: Vec<u32>, overlap: Vec<u8>, config: Vec<u32>, demand: Vec<u32>) -> Result<String, JsError> {
    solve_json(family, a, b, &k, &overlap, &config, &demand).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn spinal(k: Vec<u32>, overlap: Vec<u8>, root: u32) -> Result<String, JsError> {
    spinal_json(&k, &overlap, root).map_err(|e| JsError::new(&e))
}
