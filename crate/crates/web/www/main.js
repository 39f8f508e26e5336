// Built with: wasm-pack build crates/web --target web --out-dir www/pkg
import init, { chiralCurves, disorderAverage, continuumProfile } from "./pkg/wgqed_web.js";

const COLORS = ["#1f77b4", "#555", "#d62728", "#2ca02c", "#9467bd"];
const DASHED = new Set(["N → ∞", "chiral", "Bessel field"]);
const FAINT = new Set(["+1 s.e.", "-1 s.e."]);

function draw(section, plot, { log = false, xlabel = "κt" } = {}) {
  const canvas = section.querySelector("canvas");
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, pad = 45;
  ctx.clearRect(0, 0, W, H);

  const x = plot.x();
  const names = plot.names();
  const series = names.map((_, i) => plot.series(i));
  const ty = (v) => (log ? (v > 0 ? Math.log10(v) : NaN) : v);
  const ys = series.flat().map(ty).filter(Number.isFinite);
  let lo = Math.min(...ys), hi = Math.max(...ys);
  if (log) lo = Math.max(lo, hi - 8);
  if (hi === lo) hi = lo + 1;
  const x0 = x[0], x1 = x[x.length - 1];
  const px = (v) => pad + ((v - x0) / (x1 - x0)) * (W - 2 * pad);
  const py = (v) => H - pad - ((v - lo) / (hi - lo)) * (H - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, W - 2 * pad, H - 2 * pad);
  ctx.fillStyle = "#333";
  ctx.font = "12px sans-serif";
  ctx.fillText(xlabel, W / 2, H - 10);
  ctx.fillText(x0.toPrecision(3), pad, H - pad + 15);
  ctx.fillText(x1.toPrecision(3), W - pad - 20, H - pad + 15);
  ctx.fillText(log ? `1e${hi.toFixed(1)}` : hi.toPrecision(3), 2, pad + 4);
  ctx.fillText(log ? `1e${lo.toFixed(1)}` : lo.toPrecision(3), 2, H - pad);

  const legend = section.querySelector(".legend");
  legend.innerHTML = "";
  series.forEach((ys, i) => {
    const name = names[i];
    const color = COLORS[i % COLORS.length];
    ctx.strokeStyle = color;
    ctx.globalAlpha = FAINT.has(name) ? 0.35 : 1;
    ctx.setLineDash(DASHED.has(name) ? [6, 4] : []);
    ctx.beginPath();
    let pen = false;
    ys.forEach((v, k) => {
      const y = ty(v);
      if (!Number.isFinite(y) || y < lo) { pen = false; return; }
      if (pen) ctx.lineTo(px(x[k]), py(y)); else ctx.moveTo(px(x[k]), py(y));
      pen = true;
    });
    ctx.stroke();
    const item = document.createElement("span");
    item.style.color = color;
    item.textContent = `━ ${name}`;
    legend.appendChild(item);
  });
  ctx.globalAlpha = 1;
  ctx.setLineDash([]);
}

function wire(id, run) {
  const section = document.getElementById(id);
  const error = section.querySelector(".error");
  const value = (name) => section.querySelector(`[name=${name}]`);
  const go = () => {
    error.textContent = "";
    try {
      run(section, value);
    } catch (e) {
      error.textContent = String(e.message ?? e);
    }
  };
  section.querySelector("button").addEventListener("click", go);
  go();
}

await init();

wire("chiral", (section, v) => {
  const plot = chiralCurves(Number(v("n").value), Number(v("tmax").value), 600);
  draw(section, plot, { log: v("log").checked });
});

wire("disorder", (section, v) => {
  const plot = disorderAverage(
    Number(v("n").value),
    Number(v("ksigma").value),
    Number(v("m").value),
    BigInt(v("seed").value),
    Number(v("tmax").value),
    201,
  );
  draw(section, plot);
});

wire("continuum", (section, v) => {
  const plot = continuumProfile(Number(v("t").value), Number(v("ksigma").value), 400);
  draw(section, plot, { xlabel: "x / σ" });
});
