import init, { factorGbar, orderSeries, delangeCurve } from "./pkg/gbar_web.js";

const $ = (id) => document.getElementById(id);

// Plots (xs[i], ys[i]) as points or a polyline, with min/max axis labels.
function plot(canvas, xs, ys, { line = false } = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 70;
  ctx.clearRect(0, 0, w, h);
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys, 0), Math.max(...ys, 0)];
  if (x1 === x0) x1 = x0 + 1;
  if (y1 === y0) y1 = y0 + 1;
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(pad, py(0));
  ctx.lineTo(w - pad, py(0));
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.stroke();

  ctx.fillStyle = "#444";
  ctx.font = "24px sans-serif";
  ctx.fillText(String(+y1.toPrecision(4)), 4, pad);
  ctx.fillText(String(+y0.toPrecision(4)), 4, h - pad);
  ctx.fillText(String(+x0.toPrecision(4)), pad, h - pad + 34);
  ctx.fillText(String(+x1.toPrecision(4)), w - pad - 60, h - pad + 34);

  ctx.fillStyle = ctx.strokeStyle = "#1f5fa8";
  if (line) {
    ctx.beginPath();
    xs.forEach((x, i) => (i ? ctx.lineTo(px(x), py(ys[i])) : ctx.moveTo(px(x), py(ys[i]))));
    ctx.stroke();
  } else {
    const r = xs.length > 4000 ? 1.5 : 3;
    xs.forEach((x, i) => ctx.fillRect(px(x) - r, py(ys[i]) - r, 2 * r, 2 * r));
  }
}

function guard(errEl, f) {
  try {
    errEl.textContent = "";
    f();
  } catch (e) {
    errEl.textContent = String(e);
  }
}

function showFactor() {
  const out = $("factor-out");
  try {
    out.className = "";
    out.textContent = factorGbar(Number($("factor-n").value));
  } catch (e) {
    out.className = "err";
    out.textContent = String(e);
  }
}

function showOrders() {
  guard($("ord-err"), () => {
    const p = Number($("ord-p").value);
    const max = Number($("ord-max").value);
    const scaled = $("ord-scaled").checked;
    const ys = Array.from(orderSeries(p, max, scaled));
    const xs = ys.map((_, i) => i + 1);
    // n = 1 has no meaningful scaled value
    if (scaled) {
      xs.shift();
      ys.shift();
    }
    plot($("ord-plot"), xs, ys);
  });
}

function showDelange() {
  guard($("del-err"), () => {
    const flat = delangeCurve(Number($("del-b").value), Number($("del-grid").value));
    const xs = [];
    const ys = [];
    for (let i = 0; i < flat.length; i += 2) {
      xs.push(flat[i]);
      ys.push(flat[i + 1]);
    }
    plot($("del-plot"), xs, ys, { line: Number($("del-b").value) === 2 });
  });
}

await init();
for (const [ids, f] of [
  [["factor-n"], showFactor],
  [["ord-p", "ord-max", "ord-scaled"], showOrders],
  [["del-b", "del-grid"], showDelange],
]) {
  ids.forEach((id) => $(id).addEventListener("change", f));
  f();
}
