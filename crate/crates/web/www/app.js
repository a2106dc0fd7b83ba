// Expects the wasm-bindgen output in ./pkg (built with --target web).
import init, { dims, differential, classifyClass } from "./pkg/bookcoh_web.js";

const $ = (id) => document.getElementById(id);
const dimension = () => Number($("n").value);

function show(el, f) {
  el.classList.remove("err");
  try {
    f();
  } catch (e) {
    el.classList.add("err");
    el.textContent = String(e);
  }
}

function renderDims(table) {
  const width = Math.max(...table.entries.map((row) => row.length));
  let html = "<table><tr><th>k \\ d</th>";
  for (let d = 0; d < width; d++) html += `<th>${d}</th>`;
  html += "<th>total</th></tr>";
  table.entries.forEach((row, k) => {
    html += `<tr><th>${k}</th>`;
    for (let d = 0; d < width; d++) {
      const cell = row.find(([deg]) => deg === d);
      html += `<td>${cell ? cell[1] : ""}</td>`;
    }
    html += `<td><b>${table.totals[k]}</b></td></tr>`;
  });
  return html + "</table>";
}

function renderClass(c) {
  const lines = [];
  for (const [p, v] of Object.entries(c.dt)) lines.push(`dt^${p}: ${v}`);
  for (const [p, v] of Object.entries(c.plain)) lines.push(`${p}: ${v}`);
  return lines.length ? lines.join("\n") : `0 (exact ${c.degree}-cocycle)`;
}

await init();

$("dims-go").onclick = () =>
  show($("dims-out"), () => {
    $("dims-out").innerHTML = renderDims(JSON.parse(dims(dimension())));
  });

$("d-go").onclick = () =>
  show($("field-out"), () => {
    $("field-out").textContent = differential($("field").value, dimension());
  });

$("cls-go").onclick = () =>
  show($("field-out"), () => {
    $("field-out").textContent = renderClass(JSON.parse(classifyClass($("field").value, dimension(), $("t0").value)));
  });
