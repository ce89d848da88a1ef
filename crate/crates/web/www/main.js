import init, { logistic_json, stiefel_json, holder_json } from "./pkg/autocond_web.js";

const COLORS = ["#1b6ca8", "#d1495b", "#edae49", "#00798c", "#66a182", "#8d5a97", "#30343f"];

function bounds(series, logX, logY) {
  let [x0, x1, y0, y1] = [Infinity, -Infinity, Infinity, -Infinity];
  for (const s of series) {
    s.ys.forEach((y, i) => {
      const x = i + 1;
      if (!(y > 0) && logY) return;
      if (!Number.isFinite(y)) return;
      const px = logX ? Math.log10(x) : x;
      const py = logY ? Math.log10(y) : y;
      x0 = Math.min(x0, px); x1 = Math.max(x1, px);
      y0 = Math.min(y0, py); y1 = Math.max(y1, py);
    });
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  return { x0, x1, y0, y1 };
}

function plot(canvas, series, { title, logX = false, logY = true }) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, L = 56, R = 10, T = 24, B = 30;
  ctx.clearRect(0, 0, W, H);
  const b = bounds(series, logX, logY);
  const sx = (x) => L + ((x - b.x0) / (b.x1 - b.x0)) * (W - L - R);
  const sy = (y) => H - B - ((y - b.y0) / (b.y1 - b.y0)) * (H - T - B);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(L, T, W - L - R, H - T - B);
  ctx.fillStyle = "#222";
  ctx.font = "12px system-ui";
  ctx.fillText(title, L, 15);
  ctx.font = "10px system-ui";
  const fmt = (v, log) => (log ? "1e" + v.toFixed(0) : v.toPrecision(3));
  for (let t = 0; t <= 4; t++) {
    const yv = b.y0 + (t / 4) * (b.y1 - b.y0);
    ctx.fillText(fmt(yv, logY), 4, sy(yv) + 3);
    const xv = b.x0 + (t / 4) * (b.x1 - b.x0);
    ctx.fillText(logX ? "1e" + xv.toFixed(1) : Math.round(xv).toString(), sx(xv) - 10, H - B + 14);
  }

  series.forEach((s, j) => {
    ctx.strokeStyle = s.color || COLORS[j % COLORS.length];
    ctx.setLineDash(s.dash || []);
    ctx.beginPath();
    let pen = false;
    s.ys.forEach((y, i) => {
      if ((logY && !(y > 0)) || !Number.isFinite(y)) { pen = false; return; }
      const px = sx(logX ? Math.log10(i + 1) : i + 1);
      const py = sy(logY ? Math.log10(y) : y);
      if (pen) ctx.lineTo(px, py); else ctx.moveTo(px, py);
      pen = true;
    });
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = ctx.strokeStyle;
    ctx.fillText(s.label, W - R - 150, T + 14 + 12 * j);
  });
}

function table(el, runs) {
  const rows = runs.map((r) =>
    `<tr><td>${r.label}</td><td>${r.iterations}</td><td>${r.retractions ?? "-"}</td><td>${r.failures}</td></tr>`);
  el.innerHTML = "<tr><th>Algorithm</th><th>#Iter.</th><th>#Retr.</th><th>failures</th></tr>" + rows.join("");
}

function wire(id, action) {
  const section = document.getElementById(id);
  const form = section.querySelector("form");
  const status = section.querySelector(".status");
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const values = Object.fromEntries(new FormData(form).entries());
    status.textContent = "running...";
    status.classList.remove("error");
    setTimeout(() => {
      const t0 = performance.now();
      try {
        action(section, values);
        status.textContent = `done in ${((performance.now() - t0) / 1000).toFixed(2)} s`;
      } catch (e) {
        status.textContent = String(e.message || e);
        status.classList.add("error");
      }
    }, 10);
  });
}

function comparison(section, result, residualName) {
  const [left, right] = section.querySelectorAll("canvas");
  plot(left, result.runs.map((r) => ({ label: r.label, ys: r.residual })), { title: `${residualName} vs k (${result.title})` });
  plot(right, result.runs.map((r) => ({ label: r.label, ys: r.gamma })), { title: "gamma_k (inverse stepsize) vs k" });
  table(section.querySelector("table"), result.runs);
}

await init();

wire("logistic", (section, v) => {
  const result = JSON.parse(logistic_json(+v.m, +v.n, +v.seed));
  comparison(section, result, "gradient-mapping norm");
});

wire("stiefel", (section, v) => {
  const result = JSON.parse(stiefel_json(+v.n, +v.r, +v.seed, v.literal === "1"));
  comparison(section, result, "|grad f|");
});

wire("holder", (section, v) => {
  const result = JSON.parse(holder_json(+v.nu, +v.n, +v.seed, +v.iters));
  const canvas = section.querySelector("canvas");
  const k = result.min_residual.length;
  const start = result.min_residual[0];
  const reference = Array.from({ length: k }, (_, i) => start * Math.pow(i + 1, result.worst_case_slope));
  plot(canvas, [
    { label: "min residual", ys: result.min_residual },
    { label: `k^(${result.worst_case_slope.toFixed(3)})`, ys: reference, dash: [4, 3], color: "#888" },
  ], { title: "min-so-far residual, log-log", logX: true });
  const slope = result.slope === null ? "n/a (trace shorter than 50)" : result.slope.toFixed(3);
  section.querySelector(".status").textContent +=
    ` | fitted tail slope ${slope}, worst-case exponent ${result.worst_case_slope.toFixed(3)}, ${result.termination} after ${k} iterations`;
});
