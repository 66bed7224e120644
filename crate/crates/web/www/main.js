import init, { oracle, encode, pipeline } from "./pkg/hamproof_web.js";

const out = document.getElementById("out");
const graphText = () => document.getElementById("graph").value + "\n";

function show(html) {
  out.innerHTML = html;
}

function escape(s) {
  return String(s).replace(/[&<>]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;" })[c]);
}

function guarded(f) {
  return () => {
    try {
      f();
    } catch (e) {
      show(`<p class="bad">${escape(e)}</p>`);
    }
  };
}

function table(rows) {
  const body = rows.map(([k, v]) => `<tr><th>${k}</th><td>${v ?? "n/a"}</td></tr>`).join("");
  return `<table>${body}</table>`;
}

await init();

document.getElementById("oracle").onclick = guarded(() => {
  const r = JSON.parse(oracle(graphText()));
  show(table([
    ["Hamiltonian path", r.hamiltonian ? `yes, ${JSON.stringify(r.witness)}` : "no"],
    ["encoding satisfiable", r.sat_alpha ? "yes" : "no"],
  ]));
});

document.getElementById("encode").onclick = guarded(() => {
  const r = JSON.parse(encode(graphText()));
  show(table([["weight", r.weight], ["conjuncts A..E", r.conjuncts.join(", ")]]) + `<pre>${escape(r.alpha)}</pre>`);
});

document.getElementById("pipeline").onclick = guarded(() => {
  show("<p>working...</p>");
  const mode = document.getElementById("mode").value;
  // let the message paint before the synchronous run
  setTimeout(guarded(() => {
    const r = JSON.parse(pipeline(graphText(), mode));
    const dag = r.dag ?? {};
    show(table([
      ["case leaves", `${r.leaf_count} (${r.faithful ? "faithful" : "pruned"})`],
      ["tree height / weight", `${r.tree.height} / ${r.tree.weight}`],
      ["implicational conclusion weight", r.implicational.rho_weight],
      ["implicational height / weight", `${r.implicational.height} / ${r.implicational.weight}`],
      ["dag height / weight", `${dag.height} / ${dag.weight}`],
      ["compression ratio", dag.compression_ratio?.toFixed(4)],
      ["dag verified", r.verified ? "yes" : `<span class="bad">no: ${escape(r.verdict)}</span>`],
    ]));
  }), 0);
});
