import init, { sequence, roots, verify } from "./pkg/ibt_web.js";

const $ = (id) => document.getElementById(id);
const COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"];

function draw(series) {
  const canvas = $("plot");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);

  const pts = series.flatMap((s) => s.log10.filter((y) => y !== null));
  const ymax = Math.max(1, ...pts);
  const nmax = Math.max(1, ...series.map((s) => s.log10.length - 1));
  const x = (n) => pad + (n / nmax) * (w - 2 * pad);
  const y = (v) => h - pad - (v / ymax) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.fillText("log10 |term|", 4, pad - 10);
  ctx.fillText(ymax.toFixed(1), 4, pad + 4);
  ctx.fillText("n", w - pad + 8, h - pad + 4);
  ctx.fillText(String(nmax), w - pad - 10, h - pad + 16);

  series.forEach((s, i) => {
    ctx.strokeStyle = COLORS[i % COLORS.length];
    ctx.beginPath();
    let pen = false;
    s.log10.forEach((v, n) => {
      if (v === null) { pen = false; return; }
      pen ? ctx.lineTo(x(n), y(v)) : ctx.moveTo(x(n), y(v));
      pen = true;
    });
    ctx.stroke();
  });

  $("legend").innerHTML = series
    .map((s, i) => `<span style="color:${COLORS[i % COLORS.length]}">r = ${s.r}</span>`)
    .join("");
}

function refresh() {
  const family = $("family").value;
  const k = parseInt($("k").value, 10);
  const rmax = parseInt($("rmax").value, 10);
  const count = parseInt($("count").value, 10);
  $("rmax-val").textContent = rmax;
  try {
    const series = [];
    for (let r = 0; r <= rmax; r++) series.push(JSON.parse(sequence(family, k, r, count)));
    draw(series);
    $("terms").textContent = series[series.length - 1].terms.join(", ");
    const info = JSON.parse(roots(k, rmax));
    $("roots").textContent =
      `λ² − ${info.trace}λ + ${info.det} = 0,  discriminant ${info.disc}\n` +
      `λ1 = ${info.lambda1.exact}  ≈ ${info.lambda1.approx}\n` +
      `λ2 = ${info.lambda2.exact}  ≈ ${info.lambda2.approx}`;
    $("terms").classList.remove("err");
  } catch (e) {
    $("terms").textContent = String(e);
    $("terms").classList.add("err");
  }
}

function runVerify() {
  const v = (id) => parseInt($(id).value, 10);
  try {
    const rep = JSON.parse(verify($("identity").value, v("klo"), v("khi"), v("rlo"), v("rhi"), v("nmax")));
    $("report").textContent = JSON.stringify(rep, null, 2);
    $("report").classList.toggle("err", rep.failed !== "0");
  } catch (e) {
    $("report").textContent = String(e);
    $("report").classList.add("err");
  }
}

await init();
for (const id of ["family", "k", "rmax", "count"]) $(id).addEventListener("input", refresh);
$("run").addEventListener("click", runVerify);
refresh();
