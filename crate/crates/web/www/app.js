import init, { fixture, simulate, mine, knn } from "./pkg/tint_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
let trace = null;

const SAMPLE_VECTORS = `6 3
wing 0.9 0.1 0.2
sail 0.8 0.3 0.1
yacht 0.6 0.7 0.1
sea 0.2 0.9 0.3
ant 0.7 0.0 0.6
soil 0.1 0.4 0.9
`;

function showError(e) {
  $("error").textContent = e ? String(e.message ?? e) : "";
}

function config() {
  const num = (id) => Number($(id).value);
  return JSON.stringify({
    max_steps: num("max_steps"),
    seed: num("seed"),
    fork_depth: num("fork_depth"),
    relax_every: num("relax_every"),
    grace: num("grace"),
    temperature: num("temperature"),
    theta: num("theta"),
    deterministic: $("deterministic").checked,
  });
}

function el(name, attrs, text) {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

// The graph in a trace omits a metaphor generator the run had to create.
function generators(t) {
  const gens = t.graph.generators.map((g) => ({ ...g }));
  if (t.metaphor.created) {
    gens.push({ dom: t.metaphor.target, cod: t.metaphor.source, weight: t.config.epsilon });
  }
  return gens;
}

function draw(step) {
  const svg = $("view");
  svg.replaceChildren();
  const defs = el("defs", {});
  const marker = el("marker", { id: "arrow", viewBox: "0 0 10 10", refX: 10, refY: 5, markerWidth: 6, markerHeight: 6, orient: "auto-start-reverse" });
  marker.append(el("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "context-stroke" }));
  defs.append(marker);
  svg.append(defs);

  const objects = trace.graph.objects;
  const r = 240;
  const pos = new Map(objects.map((o, i) => {
    const a = (2 * Math.PI * i) / objects.length - Math.PI / 2;
    return [o, [r * Math.cos(a), r * Math.sin(a)]];
  }));
  const excited = new Set(trace.snapshots[step]);
  const relaxed = new Set(trace.events.filter((e) => e.step === step && e.kind === "relaxed").map((e) => e.generator));

  generators(trace).forEach((g, id) => {
    const [x1, y1] = pos.get(g.dom);
    const [x2, y2] = pos.get(g.cod);
    const len = Math.hypot(x2 - x1, y2 - y1);
    const [ux, uy] = [(x2 - x1) / len, (y2 - y1) / len];
    const pad = 28;
    let style = { stroke: "#bbb", "stroke-dasharray": "2 4", "stroke-width": 1 };
    if (excited.has(id)) style = { stroke: "#1565c0", "stroke-width": id === trace.metaphor.generator ? 4 : 2 };
    else if (relaxed.has(id)) style = { stroke: "#c62828", "stroke-dasharray": "8 5", "stroke-width": 2 };
    svg.append(el("line", { x1: x1 + ux * pad, y1: y1 + uy * pad, x2: x2 - ux * pad, y2: y2 - uy * pad, "marker-end": "url(#arrow)", ...style }));
    svg.append(el("text", { x: (x1 + x2) / 2 - uy * 10, y: (y1 + y2) / 2 + ux * 10, "font-size": 11, "text-anchor": "middle", fill: "#555" }, g.weight.toFixed(2)));
  });
  for (const [o, [x, y]] of pos) {
    svg.append(el("circle", { cx: x, cy: y, r: 26, fill: "#fff", stroke: "#333" }));
    svg.append(el("text", { x, y: y + 4, "font-size": 12, "text-anchor": "middle" }, o));
  }
  $("step-label").textContent = step;
}

function runSimulation() {
  showError(null);
  try {
    trace = JSON.parse(simulate($("graph").value, $("target").value, $("source").value, config()));
  } catch (e) {
    showError(e);
    return;
  }
  const slider = $("step");
  slider.max = trace.snapshots.length - 1;
  slider.value = slider.max;
  slider.disabled = false;
  $("mine").disabled = false;
  $("report").textContent = "";
  draw(Number(slider.value));
}

function mineStep() {
  showError(null);
  try {
    const report = JSON.parse(mine(JSON.stringify(trace), Number($("step").value), 32));
    const lines = report.entries.map((e, i) =>
      `#${i + 1}  comprehensiveness ${e.comprehensiveness}  survival ${e.survival}\n    ` + e.summary.join("\n    "));
    $("report").textContent = `${report.entries.length} transformations of ${report.metaphor} at step ${report.step}\n\n` + lines.join("\n");
  } catch (e) {
    showError(e);
  }
}

function buildGraph() {
  showError(null);
  try {
    $("graph").value = knn($("vectors").value, $("vocab").value, Number($("k").value), Number($("floor").value));
  } catch (e) {
    showError(e);
  }
}

await init();
$("graph").value = fixture();
$("vectors").value = SAMPLE_VECTORS;
$("vocab").value = "wing\nsail\nyacht\nsea\nant\nsoil\n";
$("load-fixture").onclick = () => { $("graph").value = fixture(); };
$("run").onclick = runSimulation;
$("mine").onclick = mineStep;
$("embed").onclick = buildGraph;
$("step").oninput = (e) => draw(Number(e.target.value));
runSimulation();
