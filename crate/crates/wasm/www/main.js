// Expects the wasm-pack output (--target web) in ./pkg.
import init, { analyze, generate, tag } from "./pkg/wortart_wasm.js";

const $ = (id) => document.getElementById(id);

function table(head, rows) {
  const t = document.createElement("table");
  const tr = t.insertRow();
  for (const h of head) {
    const th = document.createElement("th");
    th.textContent = h;
    tr.appendChild(th);
  }
  for (const r of rows) {
    const row = t.insertRow();
    for (const cell of r) {
      const td = row.insertCell();
      if (cell instanceof Node) td.appendChild(cell);
      else td.textContent = cell;
    }
  }
  return t;
}

function show(target, result, render) {
  const out = $(target);
  out.replaceChildren();
  const v = JSON.parse(result);
  if (v.error) {
    const p = document.createElement("p");
    p.className = "err";
    p.textContent = v.error;
    out.appendChild(p);
    return;
  }
  for (const node of render(v)) out.appendChild(node);
}

function renderAnalyze(v) {
  const rows = [];
  for (const t of v.tokens) {
    if (t.analyses.length === 0) rows.push([t.surface, "?", "", ""]);
    for (const a of t.analyses) rows.push([t.surface, a.lemma, a.tag, a.segments]);
  }
  return [table(["Form", "Lemma", "Tag", "Segmente"], rows)];
}

function renderGenerate(v) {
  return v.tables.map((t) => {
    const div = document.createElement("div");
    const h = document.createElement("h3");
    h.textContent = `${t.lemma} (${t.pos})`;
    div.append(h, table(["Form", "Tag"], t.forms.map((f) => [f.surface, f.tag])));
    return div;
  });
}

function renderTag(v) {
  return v.sentences.map((s) => {
    const rows = s.tokens.map((t) => {
      const alts = document.createElement("span");
      alts.className = "alt";
      alts.textContent = t.candidates.map((c) => `${c.tag} ${c.p.toExponential(2)}`).join(" | ");
      return [t.surface, t.tag, alts];
    });
    return table(["Form", "Tag", "Kandidaten"], rows);
  });
}

await init();
$("status").textContent = "";
$("analyze-go").onclick = () => show("analyze-out", analyze($("analyze-in").value), renderAnalyze);
$("generate-go").onclick = () => show("generate-out", generate($("generate-in").value), renderGenerate);
$("tag-go").onclick = () =>
  show("tag-out", tag($("tag-in").value, $("tag-set").value, $("tag-algo").value), renderTag);
