import init, { generate, solve, spinal } from "./pkg/pebblekit_wasm.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
let graph = null;
let pebbles = [];
let demand = [];
let treeEdges = [];
let rootVertex = null;
let timer = null;

function params() {
  const family = document.querySelector("input[name=family]:checked").value;
  const nums = (s) => s.split(",").map((x) => x.trim()).filter((x) => x !== "").map(Number);
  const a = family === "kneser" ? Number($("m").value) : Number($("tn").value);
  const b = Number($("seed").value);
  return [family, a, b, new Uint32Array(nums($("k").value)), new Uint8Array(nums($("overlap").value))];
}

function layout(g) {
  const [w, h] = [940, 420];
  if (g.spine.length > 0) {
    const d = g.spine.length - 1;
    const x = new Array(g.n).fill(0);
    const y = new Array(g.n).fill(h * 0.8);
    g.spine.forEach((v, i) => { x[v] = 60 + (i * (w - 120)) / d; });
    const onSpine = new Set(g.spine);
    const adj = Array.from({ length: g.n }, () => []);
    for (const [u, v] of g.edges) { adj[u].push(v); adj[v].push(u); }
    const rows = {};
    for (let v = 0; v < g.n; v++) {
      if (onSpine.has(v)) continue;
      const near = adj[v].filter((u) => onSpine.has(u)).map((u) => x[u]);
      x[v] = near.reduce((s, t) => s + t, 0) / near.length;
      const key = Math.round(x[v]);
      rows[key] = (rows[key] || 0) + 1;
      y[v] = h * 0.8 - 70 * rows[key];
    }
    return x.map((xi, v) => [xi, y[v]]);
  }
  const r = Math.min(w, h) / 2 - 40;
  return Array.from({ length: g.n }, (_, v) => {
    const t = (2 * Math.PI * v) / g.n - Math.PI / 2;
    return [w / 2 + r * Math.cos(t), h / 2 + r * Math.sin(t)];
  });
}

function draw() {
  const svg = $("canvas");
  svg.replaceChildren();
  if (!graph) return;
  const pos = layout(graph);
  const inTree = new Set(treeEdges.map(([u, v]) => `${Math.min(u, v)}-${Math.max(u, v)}`));
  for (const [u, v] of graph.edges) {
    const line = document.createElementNS(SVG, "line");
    line.setAttribute("x1", pos[u][0]); line.setAttribute("y1", pos[u][1]);
    line.setAttribute("x2", pos[v][0]); line.setAttribute("y2", pos[v][1]);
    line.setAttribute("class", inTree.has(`${Math.min(u, v)}-${Math.max(u, v)}`) ? "edge tree" : "edge");
    svg.append(line);
  }
  for (let v = 0; v < graph.n; v++) {
    const c = document.createElementNS(SVG, "circle");
    c.setAttribute("cx", pos[v][0]); c.setAttribute("cy", pos[v][1]); c.setAttribute("r", 16);
    let cls = "vertex";
    if (demand[v] > 0) cls += " target";
    if (v === rootVertex) cls += " root";
    c.setAttribute("class", cls);
    const title = document.createElementNS(SVG, "title");
    title.textContent = `${v} ${graph.labels[v]}`;
    c.append(title);
    c.addEventListener("click", (e) => edit(v, e));
    svg.append(c);
    const t = document.createElementNS(SVG, "text");
    t.setAttribute("x", pos[v][0]); t.setAttribute("y", pos[v][1]);
    t.setAttribute("class", "count");
    t.textContent = pebbles[v] > 0 ? pebbles[v] : "";
    svg.append(t);
    if (demand[v] > 0) {
      const dt = document.createElementNS(SVG, "text");
      dt.setAttribute("x", pos[v][0]); dt.setAttribute("y", pos[v][1] + 28);
      dt.setAttribute("class", "demand");
      dt.textContent = `need ${demand[v]}`;
      svg.append(dt);
    }
  }
}

function edit(v, e) {
  stop();
  const arr = e.altKey || $("targets").checked ? demand : pebbles;
  arr[v] = Math.max(0, arr[v] + (e.shiftKey ? -1 : 1));
  draw();
}

function stop() {
  if (timer) clearInterval(timer);
  timer = null;
}

function show(text) { $("out").textContent = text; }

function doGenerate() {
  stop();
  try {
    graph = JSON.parse(generate(...params()));
  } catch (err) {
    show(String(err));
    return;
  }
  pebbles = new Array(graph.n).fill(0);
  demand = new Array(graph.n).fill(0);
  treeEdges = [];
  rootVertex = null;
  $("status").textContent = `n = ${graph.n}, ${graph.edges.length} edges, diameter ${graph.diameter}`;
  show("");
  draw();
}

function doSolve() {
  stop();
  if (!graph) return;
  let trace;
  try {
    trace = JSON.parse(solve(...params(), new Uint32Array(pebbles), new Uint32Array(demand)));
  } catch (err) {
    show(String(err));
    return;
  }
  if (!trace.solvable) {
    show(`unsolvable (${trace.states_explored} states explored)`);
    return;
  }
  const cost = trace.min_cost ? `, minimum cost ${trace.min_cost}` : "";
  show(`solvable in ${trace.moves.length} step(s)${cost}\n` +
    trace.moves.map(([u, v], i) => `${i + 1}. ${u} -> ${v}`).join("\n"));
  let i = 0;
  timer = setInterval(() => {
    pebbles = trace.steps[i].slice();
    draw();
    i += 1;
    if (i === trace.steps.length) stop();
  }, 700);
}

function doSpinal() {
  stop();
  const [family, , , k, overlap] = params();
  if (family !== "two-path" || !graph) {
    show("generate a 2-path first");
    return;
  }
  try {
    const r = Number($("root").value);
    const view = JSON.parse(spinal(k, overlap, r));
    treeEdges = view.tree_edges;
    rootVertex = r;
    draw();
    const verdict = view.pi === view.closed_form ? "matches" : "differs from";
    show(`root ${r}: ${view.kind}\npath partition ${JSON.stringify(view.partition)}\n` +
      `pi(T_r, r) = ${view.pi} ${verdict} the closed form ${view.closed_form}; bound ${view.bound}`);
  } catch (err) {
    show(String(err));
  }
}

await init();
$("generate").addEventListener("click", doGenerate);
$("solve").addEventListener("click", doSolve);
$("spinal").addEventListener("click", doSpinal);
$("clear").addEventListener("click", () => { stop(); if (graph) { pebbles.fill(0); demand.fill(0); draw(); } });
$("jr").addEventListener("click", () => {
  if (!graph) return;
  stop();
  pebbles = pebbles.map((_, v) => (v === 0 ? 0 : 1));
  demand = demand.map((_, v) => (v === 0 ? 1 : 0));
  draw();
});
doGenerate();
