import init, { cf_expansion, family_witnesses, oracle_pairs } from "./pkg/pellkit_web.js";

function el(tag, text) {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  return node;
}

function table(headers, rows) {
  const t = el("table");
  const head = el("tr");
  headers.forEach((h) => head.appendChild(el("th", h)));
  t.appendChild(head);
  rows.forEach((row) => {
    const tr = el("tr");
    row.forEach((cell) => tr.appendChild(el("td", String(cell))));
    t.appendChild(tr);
  });
  return t;
}

function show(target, result, render) {
  const out = document.getElementById(target);
  out.replaceChildren();
  if (!result.ok) {
    out.appendChild(el("p", result.error)).className = "error";
    return;
  }
  render(out, result);
}

function bind(formId, handler) {
  const form = document.getElementById(formId);
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    handler(new FormData(form));
  });
  handler(new FormData(form));
}

function renderCf(out, r) {
  const p = el("p");
  p.appendChild(el("code", `√${r.d} = [${r.a0}; ${r.period.join(", ")}]`));
  out.appendChild(p);
  out.appendChild(el("p", `period length ${r.period.length}, fundamental solution x = ${r.x}, y = ${r.y}`));
  const rows = r.pqa.length > 40 ? r.pqa.slice(0, 40) : r.pqa;
  out.appendChild(table(["i", "s", "t", "a"], rows));
  if (rows.length < r.pqa.length) out.appendChild(el("p", `… ${r.pqa.length - rows.length} more rows`));
}

function renderFamily(out, r) {
  out.appendChild(el("p", `case ${r.case}, D = ${r.radicand}, unit (${r.unit[0]}, ${r.unit[1]})`));
  out.appendChild(table(["n", "d1", "d2", "gcd"], r.witnesses.map((w) => [w.n, w.d1, w.d2, w.gcd])));
  r.skipped.forEach((s) => out.appendChild(el("p", `skipped ${s}`)));
}

function renderOracle(out, r) {
  const factors = r.factorization.map(([p, e]) => (e > 1 ? `${p}^${e}` : p)).join(" · ");
  out.appendChild(el("p", `(n²+1)/2 = ${r.m} = ${factors}, ${r.divisor_count} divisors`));
  if (r.pairs.length === 0) {
    out.appendChild(el("p", "no pair sums to δn+ε"));
  } else {
    out.appendChild(table(["n", "d1", "d2", "gcd"], r.pairs.map((w) => [w.n, w.d1, w.d2, w.gcd])));
  }
}

await init();

bind("cf-form", (f) => show("cf-out", JSON.parse(cf_expansion(f.get("d"))), renderCf));
bind("family-form", (f) =>
  show("family-out", JSON.parse(family_witnesses(f.get("delta"), f.get("eps"), Number(f.get("count")) >>> 0)), renderFamily),
);
bind("oracle-form", (f) =>
  show("oracle-out", JSON.parse(oracle_pairs(f.get("n"), f.get("delta"), f.get("eps"))), renderOracle),
);
