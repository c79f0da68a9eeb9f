// Two-panel SVG figure: capacity (left) and fairness (right) versus K or Q.
// Pure string construction; identical input yields byte-identical output.

import { InputError, SweepRow } from "./data.js";

export type XAxis = "K" | "Q";

export const SCHEME_ORDER = ["stv_opt", "rtv_rand", "pfs_full", "pfs_rand", "no_ris"];

export const SCHEME_LABELS: Record<string, string> = {
  stv_opt: "STV opt",
  rtv_rand: "RTV rand",
  pfs_full: "RTV opt w/ PFS",
  pfs_rand: "RTV rand w/ PFS",
  no_ris: "w/o RIS",
};

const SCHEME_COLORS: Record<string, string> = {
  stv_opt: "#1f77b4",
  rtv_rand: "#d62728",
  pfs_full: "#2ca02c",
  pfs_rand: "#9467bd",
  no_ris: "#7f7f7f",
};

const PANEL = { width: 380, height: 270 };
const MARGIN = { top: 58, right: 16, bottom: 48, left: 58 };
const PANEL_GAP = 72;

const fmt = (v: number) => (Object.is(v, -0) ? "0" : String(Math.round(v * 100) / 100));

interface Series {
  scheme: string;
  x: number[];
  mean: number[];
  std: number[];
}

function linearScale(d0: number, d1: number, r0: number, r1: number) {
  const span = d1 - d0 || 1;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

/** Round tick step to a 1/2/5 decade multiple covering [lo, hi] with ~n ticks. */
function niceTicks(lo: number, hi: number, n = 5): number[] {
  const raw = (hi - lo) / Math.max(n, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(raw || 1)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => (hi - lo) / s <= n) ?? mag * 10;
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-9; t += step) {
    ticks.push(Math.round(t * 1e9) / 1e9);
  }
  return ticks;
}

function collectSeries(rows: SweepRow[], xAxis: XAxis, schemes: string[],
                       value: (r: SweepRow) => [number, number]): Series[] {
  const present = new Set(rows.map((r) => r.scheme));
  const missing = schemes.filter((s) => !present.has(s));
  if (missing.length > 0) {
    throw new InputError(`scheme(s) not present in CSV: ${missing.join(", ")}`);
  }
  const series: Series[] = [];
  for (const scheme of schemes) {
    const own = rows
      .filter((r) => r.scheme === scheme)
      .sort((a, b) => a[xAxis] - b[xAxis]);
    series.push({
      scheme,
      x: own.map((r) => r[xAxis]),
      mean: own.map((r) => value(r)[0]),
      std: own.map((r) => value(r)[1]),
    });
  }
  const distinct = new Set(series.flatMap((s) => s.x));
  if (distinct.size < 2) {
    throw new InputError(`need at least 2 distinct ${xAxis} values, got ${distinct.size}`);
  }
  return series;
}

function panelSvg(series: Series[], xAxis: XAxis, originX: number, title: string,
                  yLabel: string, yDomain: [number, number] | null): string {
  const xs = [...new Set(series.flatMap((s) => s.x))].sort((a, b) => a - b);
  let lo: number; let hi: number;
  if (yDomain) {
    [lo, hi] = yDomain;
  } else {
    const tops = series.flatMap((s) => s.mean.map((m, i) => m + s.std[i]));
    const bottoms = series.flatMap((s) => s.mean.map((m, i) => m - s.std[i]));
    lo = Math.min(0, ...bottoms);
    hi = Math.max(...tops) * 1.05;
  }
  const clamp = (v: number) => Math.min(hi, Math.max(lo, v));
  const x = linearScale(xs[0], xs[xs.length - 1], originX, originX + PANEL.width);
  const y = linearScale(lo, hi, MARGIN.top + PANEL.height, MARGIN.top);
  const parts: string[] = [];

  parts.push(`<text x="${fmt(originX + PANEL.width / 2)}" y="${MARGIN.top - 26}" ` +
    `text-anchor="middle" font-size="13" font-weight="bold">${title}</text>`);

  // frame and grid
  parts.push(`<rect x="${fmt(originX)}" y="${MARGIN.top}" width="${PANEL.width}" ` +
    `height="${PANEL.height}" fill="none" stroke="#000"/>`);
  for (const t of niceTicks(lo, hi)) {
    const py = y(t);
    parts.push(`<line x1="${fmt(originX)}" y1="${fmt(py)}" x2="${fmt(originX + PANEL.width)}" ` +
      `y2="${fmt(py)}" stroke="#ddd" stroke-width="0.5"/>`);
    parts.push(`<text x="${fmt(originX - 6)}" y="${fmt(py + 3.5)}" text-anchor="end" ` +
      `font-size="10">${t}</text>`);
  }
  for (const v of xs) {
    const px = x(v);
    parts.push(`<line x1="${fmt(px)}" y1="${fmt(MARGIN.top + PANEL.height)}" x2="${fmt(px)}" ` +
      `y2="${fmt(MARGIN.top + PANEL.height + 4)}" stroke="#000"/>`);
    parts.push(`<text x="${fmt(px)}" y="${fmt(MARGIN.top + PANEL.height + 16)}" ` +
      `text-anchor="middle" font-size="10">${v}</text>`);
  }
  const xLabel = xAxis === "K" ? "Number of users K" : "Number of surface elements Q";
  parts.push(`<text x="${fmt(originX + PANEL.width / 2)}" ` +
    `y="${fmt(MARGIN.top + PANEL.height + 34)}" text-anchor="middle" font-size="11">` +
    `${xLabel}</text>`);
  parts.push(`<text transform="translate(${fmt(originX - 40)},` +
    `${fmt(MARGIN.top + PANEL.height / 2)}) rotate(-90)" text-anchor="middle" ` +
    `font-size="11">${yLabel}</text>`);

  // series: error bars under lines under markers
  for (const s of series) {
    const color = SCHEME_COLORS[s.scheme];
    for (let i = 0; i < s.x.length; i++) {
      const px = x(s.x[i]);
      const top = y(clamp(s.mean[i] + s.std[i]));
      const bottom = y(clamp(s.mean[i] - s.std[i]));
      parts.push(`<line x1="${fmt(px)}" y1="${fmt(top)}" x2="${fmt(px)}" ` +
        `y2="${fmt(bottom)}" stroke="${color}" stroke-width="1"/>`);
      for (const end of [top, bottom]) {
        parts.push(`<line x1="${fmt(px - 3)}" y1="${fmt(end)}" x2="${fmt(px + 3)}" ` +
          `y2="${fmt(end)}" stroke="${color}" stroke-width="1"/>`);
      }
    }
    const points = s.x.map((v, i) => `${fmt(x(v))},${fmt(y(clamp(s.mean[i])))}`).join(" ");
    parts.push(`<polyline points="${points}" fill="none" stroke="${color}" stroke-width="1.6"/>`);
    for (let i = 0; i < s.x.length; i++) {
      parts.push(`<circle cx="${fmt(x(s.x[i]))}" cy="${fmt(y(clamp(s.mean[i])))}" r="2.6" ` +
        `fill="${color}"/>`);
    }
  }
  return parts.join("\n");
}

/** Render the two-panel comparison figure as a standalone SVG document. */
export function renderFigure(rows: SweepRow[], xAxis: XAxis,
                             schemes: string[] = SCHEME_ORDER): string {
  const capacity = collectSeries(rows, xAxis, schemes, (r) => [r.capacityMean, r.capacityStd]);
  const fairness = collectSeries(rows, xAxis, schemes, (r) => [r.fairnessMean, r.fairnessStd]);

  const width = MARGIN.left + PANEL.width + PANEL_GAP + PANEL.width + MARGIN.right;
  const height = MARGIN.top + PANEL.height + MARGIN.bottom;
  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica,Arial,sans-serif">`);
  parts.push(`<rect width="${width}" height="${height}" fill="#fff"/>`);

  // legend across the top
  let legendX = MARGIN.left;
  for (const scheme of schemes) {
    const color = SCHEME_COLORS[scheme];
    const label = SCHEME_LABELS[scheme] ?? scheme;
    parts.push(`<line x1="${fmt(legendX)}" y1="14" x2="${fmt(legendX + 22)}" y2="14" ` +
      `stroke="${color}" stroke-width="2"/>`);
    parts.push(`<circle cx="${fmt(legendX + 11)}" cy="14" r="2.6" fill="${color}"/>`);
    parts.push(`<text x="${fmt(legendX + 27)}" y="18" font-size="11">${label}</text>`);
    legendX += 27 + 9 * label.length + 24;
  }

  parts.push(panelSvg(capacity, xAxis, MARGIN.left,
    "Sum-rate time-averaged capacity", "Capacity (bits/s/Hz)", null));
  parts.push(panelSvg(fairness, xAxis, MARGIN.left + PANEL.width + PANEL_GAP,
    "Fairness index", "Jain fairness index", [0, 1]));
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
