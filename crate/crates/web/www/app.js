import init, { analyze_graph, generate_family, lorenz_document, template_boundary } from "./pkg/nsflow_web.js";

const $ = (id) => document.getElementById(id);

function el(tag, attrs = {}, ...children) {
  const node = document.createElement(tag);
  Object.assign(node, attrs);
  node.append(...children);
  return node;
}

function verdict(pass, yes = "pass", no = "fail") {
  return el("span", { className: pass ? "pass" : "fail", textContent: pass ? yes : no });
}

function details(list) {
  return list.map((d) => `[${d.code}]${d.vertex ? " vertex " + d.vertex : ""}${d.edge ? " edge " + d.edge : ""} ${d.message}`);
}

function renderAnalysis(target, json) {
  const r = JSON.parse(json);
  target.replaceChildren();
  if (r.error) {
    target.append(el("pre", { className: "fail", textContent: r.error }));
    return;
  }
  const lines = [
    `${r.vertices} vertices, ${r.edges} edges, cycle rank ${r.cycle_rank ?? "n/a (oriented cycle)"}`,
    ...details(r.diagnostics),
  ];
  const s3 = r.s3;
  const conditions = ["condition1", "condition2", "condition3"].flatMap((c) =>
    s3[c] ? [`${c}: ${s3[c].pass ? "holds" : "fails"}`, ...details(s3[c].details).map((l) => "  " + l)] : []);
  const sum = r.summands;
  const summary = el("div", {},
    el("p", {}, "Realizable on the 3-sphere: ", verdict(s3.pass, "yes", "no")),
    el("pre", { textContent: [...lines, ...details(s3.preconditions), ...conditions].join("\n") }),
    el("p", {}, `Summand lower bound: ${sum.n} `, verdict(sum.ok, "certified", "no certificate"),
      sum.certificate.length ? ` (cut ${sum.certificate.join(", ")})` : ""),
  );
  const figure = el("div", { className: "figure" });
  figure.innerHTML = r.svg;
  const dot = el("details", {}, el("summary", { textContent: "DOT" }), el("pre", { textContent: r.dot }));
  const doc = el("details", {}, el("summary", { textContent: "Document" }), el("pre", { textContent: r.document }));
  target.append(el("div", { className: "row" }, figure, summary), dot, doc);
  return r;
}

function generate() {
  const r = renderAnalysis($("family-out"), generate_family($("family").value, Number($("family-n").value)));
  if (r && r.document) $("graph-doc").value = r.document;
}

function lorenz() {
  let mask = 0;
  document.querySelectorAll("#twists input").forEach((box, i) => { if (box.checked) mask |= 1 << i; });
  $("template-doc").value = lorenz_document(mask);
  boundary();
}

function boundary() {
  const r = JSON.parse(template_boundary($("template-doc").value));
  const out = $("template-out");
  out.replaceChildren();
  if (r.error) {
    out.append(el("pre", { className: "fail", textContent: r.error }));
    return;
  }
  const rows = [...r.report.entrance, ...r.report.exit].map((c) =>
    el("tr", {}, ...[c.kind, c.euler_char, c.boundary_circles, c.capped_genus].map((v) => el("td", { textContent: v }))));
  const closed = r.report.closed_components.map((c) => `euler ${c.euler_char} [genus ${c.genus}]`).join(", ");
  out.append(
    el("table", {}, el("tr", {}, ...["side", "euler", "circles", "capped genus"].map((h) => el("th", { textContent: h }))), ...rows),
    el("p", { textContent: `Dividing curves: ${r.report.dividing_curves}. Boundary surface: ${closed}.` }),
    el("p", {}, `Entrance/exit identity: ${r.identity[0]} = ${r.identity[1]} `, verdict(r.identity[0] === r.identity[1], "holds", "fails")),
    el("p", { textContent: `Template genus g(T) = ${r.genus}` }),
  );
}

await init();
const strips = JSON.parse(lorenz_document(0)).strips;
strips.forEach((s) => {
  const box = el("input", { type: "checkbox" });
  box.addEventListener("change", lorenz);
  $("twists").append(el("label", {}, box, ` ${s.from.join(".")} → ${s.to.join(".")} `));
});
$("generate").addEventListener("click", generate);
$("analyze").addEventListener("click", () => renderAnalysis($("graph-out"), analyze_graph($("graph-doc").value)));
$("trace").addEventListener("click", boundary);
generate();
lorenz();
