import init, { transitionCurve, criticalC, slowdownCurve, simulateCycles } from "./pkg/interchange_web.js";

const PAD = 40;
const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function frame(canvas, xMax, yMax) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width - 2 * PAD;
  const h = canvas.height - 2 * PAD;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(PAD, PAD, w, h);
  ctx.fillStyle = "#555";
  ctx.font = "12px sans-serif";
  ctx.fillText("0", PAD - 12, canvas.height - PAD + 14);
  ctx.fillText(String(xMax), canvas.width - PAD - 10, canvas.height - PAD + 14);
  ctx.fillText(String(yMax), 4, PAD + 4);
  return {
    ctx,
    x: (v) => PAD + (v / xMax) * w,
    y: (v) => canvas.height - PAD - (v / yMax) * h,
  };
}

function line(p, xs, ys, color, dash = []) {
  p.ctx.strokeStyle = color;
  p.ctx.setLineDash(dash);
  p.ctx.beginPath();
  xs.forEach((x, i) => (i ? p.ctx.lineTo(p.x(x), p.y(ys[i])) : p.ctx.moveTo(p.x(x), p.y(ys[i]))));
  p.ctx.stroke();
  p.ctx.setLineDash([]);
}

function guarded(fn) {
  return () => {
    try {
      $("error").textContent = "";
      fn();
    } catch (e) {
      $("error").textContent = String(e.message ?? e);
    }
  };
}

const drawTransition = guarded(() => {
  const n = num("tc-n"), k = num("tc-k"), cMax = num("tc-c"), pts = 400;
  const v = transitionCurve(n, k, cMax, pts);
  const cs = v.subarray(0, pts), ke = v.subarray(pts, 2 * pts), giant = v.subarray(2 * pts);
  const p = frame($("tc-plot"), cMax, 1);
  line(p, cs, giant, "#aaa");
  line(p, cs, ke, "#1f5fbf");
  const cc = criticalC(n, k);
  if (Number.isFinite(cc) && cc <= cMax) {
    line(p, [cc, cc], [0, 1], "#c33", [4, 4]);
  }
  $("tc-crit").textContent = Number.isFinite(cc) ? `c = ${cc.toFixed(4)}` : "(none for k = 1 or k = n)";
});

const drawSlowdown = guarded(() => {
  const n = num("sd-n"), cMax = num("sd-c"), pts = 120;
  const v = slowdownCurve(n, cMax, pts);
  const cs = v.subarray(0, pts), u = v.subarray(pts, 2 * pts), d = v.subarray(2 * pts);
  const p = frame($("sd-plot"), cMax, 1);
  line(p, [0, Math.min(cMax, 2)], [0, Math.min(cMax, 2) / 2], "#ccc", [2, 3]);
  line(p, cs, d, "#e08a1e");
  line(p, cs, u, "#1f5fbf");
});

const drawCycles = guarded(() => {
  const n = num("mc-n"), c = num("mc-c"), seed = num("mc-seed");
  const lengths = simulateCycles(n, c, seed);
  const canvas = $("mc-plot");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  // Each cycle is a segment whose width is proportional to its length.
  const w = canvas.width - 2 * PAD;
  let x = PAD;
  lengths.forEach((len, i) => {
    const width = (len / n) * w;
    ctx.fillStyle = len >= 0.1 * n ? `hsl(${(i * 47) % 360} 60% 50%)` : "#ccc";
    ctx.fillRect(x, PAD, Math.max(width, 0.5), canvas.height - 2 * PAD);
    x += width;
  });
  const big = lengths.filter((l) => l >= 0.1 * n).reduce((a, b) => a + b, 0);
  $("mc-summary").textContent =
    `${lengths.length} cycles, longest ${lengths[0]} (${(lengths[0] / n).toFixed(3)} n), ` +
    `mass in cycles of length at least 0.1n: ${(big / n).toFixed(3)}`;
});

await init();
for (const id of ["tc-n", "tc-k", "tc-c"]) $(id).addEventListener("change", drawTransition);
for (const id of ["sd-n", "sd-c"]) $(id).addEventListener("change", drawSlowdown);
$("mc-run").addEventListener("click", drawCycles);
drawTransition();
drawSlowdown();
drawCycles();
