import init, { growth, compression, norm_curve } from "./pkg/rfd_wasm.js";

const $ = (id) => document.getElementById(id);

function show(id, fn) {
  const out = $(id);
  out.classList.remove("err");
  try {
    return fn();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e);
    return null;
  }
}

function axes(ctx, w, h, pad) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#888";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
}

function bars(canvas, values) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 24;
  axes(ctx, w, h, pad);
  const top = Math.log(Math.max(...values, 2));
  const bw = (w - 2 * pad) / values.length;
  ctx.fillStyle = "#4a7bd0";
  ctx.font = "11px sans-serif";
  values.forEach((v, i) => {
    const bh = ((h - 2 * pad) * Math.log(v + 1)) / (top + 1e-9);
    ctx.fillRect(pad + i * bw + 2, h - pad - bh, bw - 4, bh);
    ctx.fillText(String(v), pad + i * bw + 4, h - pad - bh - 3);
  });
}

function grid(canvas, matrix) {
  const ctx = canvas.getContext("2d");
  const n = matrix.length;
  const cell = Math.max(2, Math.floor(canvas.width / Math.max(n, 1)));
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (let r = 0; r < n; r++) {
    for (let c = 0; c < n; c++) {
      ctx.fillStyle = matrix[r][c] ? "#222" : "#eee";
      ctx.fillRect(c * cell, r * cell, cell - 1, cell - 1);
    }
  }
}

function curve(canvas, points) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 30;
  axes(ctx, w, h, pad);
  if (points.length === 0) return;
  const xs = points.map((p) => p[0]);
  const ys = points.map((p) => p[1]);
  const [x0, x1] = [0, Math.max(...xs)];
  const [y0, y1] = [Math.min(...ys) * 0.98, Math.max(...ys) * 1.01];
  const px = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - y0) / (y1 - y0 || 1)) * (h - 2 * pad);
  ctx.strokeStyle = "#c0392b";
  ctx.beginPath();
  points.forEach(([x, y], i) => (i ? ctx.lineTo(px(x), py(y)) : ctx.moveTo(px(x), py(y))));
  ctx.stroke();
  ctx.fillStyle = "#333";
  ctx.fillText(y1.toFixed(6), 2, pad - 6);
  ctx.fillText(y0.toFixed(6), 2, h - 4);
}

function runGrowth() {
  show("g-out", () => {
    const r = JSON.parse(growth($("g-pres").value, Number($("g-len").value)));
    bars($("g-plot"), r.counts);
    $("g-out").textContent = JSON.stringify(r, null, 1);
  });
}

function runCompression() {
  show("c-out", () => {
    const r = JSON.parse(
      compression($("c-pres").value, $("c-f").value, $("c-s").value, Number($("c-l").value)),
    );
    grid($("c-plot"), r.matrix);
    $("c-out").textContent =
      "basis of Y_F: " + r.basis.map((b) => b || "e").join(", ") +
      "\nkernel set: " + (r.kernel.join(", ") || "(empty)");
  });
}

function runNorm() {
  show("n-out", () => {
    const deg = Number($("n-deg").value);
    const step = Math.max(1, Math.floor(deg / 20));
    const r = JSON.parse(
      norm_curve($("n-kernel").value, Number($("n-d").value), $("n-phi").value, deg, step, 8),
    );
    curve($("n-plot"), r.curve);
    const last = r.curve[r.curve.length - 1];
    $("n-out").textContent =
      `phi = ${r.phi}\nlower bound at D=${last[0]}: ${last[1]}\n` +
      `covariance defect over 8th roots: ${r.covariance_defect.toExponential(2)}`;
  });
}

await init();
$("g-run").onclick = runGrowth;
$("c-run").onclick = runCompression;
$("n-run").onclick = runNorm;
runGrowth();
runCompression();
runNorm();
