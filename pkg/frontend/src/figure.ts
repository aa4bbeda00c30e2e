/** 12-panel SVG figure: rows = correlation mode, columns = model x density.
 *
 * Each panel plots the three per-class mean probabilities against graph size
 * (linear axes, y fixed to [0,1]) with a +/-1 std band at low opacity, clipped
 * to [0,1]. A (mode, model, density) combination absent from the CSV renders
 * as an empty panel with a warning annotation.
 */

import type { SweepRow } from "./csv.js";

export interface FigureSpec {
  /** panel rows, top to bottom */
  modes: string[];
  /** panel columns, left to right, as [model, density] pairs */
  columns: [string, string][];
  /** per-class stroke/fill colors */
  classColors: string[];
  /** opacity of the +/-1 std band */
  bandOpacity: number;
  panelWidth: number;
  panelHeight: number;
}

export const DEFAULT_SPEC: FigureSpec = {
  modes: ["none", "simple", "rescaled"],
  columns: [
    ["gcn", "sparse"],
    ["gcn", "dense"],
    ["gat", "sparse"],
    ["gat", "dense"],
  ],
  classColors: ["#1f77b4", "#ff7f0e", "#2ca02c"],
  bandOpacity: 0.18,
  panelWidth: 240,
  panelHeight: 170,
};

const MARGIN = { left: 70, top: 50, hGap: 24, vGap: 34, right: 20, bottom: 45 };
const AXIS_PAD = { left: 38, bottom: 26, top: 14, right: 8 };

interface Series {
  n: number[];
  mean: number[][]; // [class][point]
  std: number[][];
}

function collectSeries(rows: SweepRow[], model: string, density: string, mode: string): Series | null {
  const match = rows.filter(
    (r) => r.model === model && r.density === density && r.corrMode === mode,
  );
  if (match.length === 0) return null;
  const sizes = [...new Set(match.map((r) => r.n))].sort((a, b) => a - b);
  const classes = [...new Set(match.map((r) => r.cls))].sort((a, b) => a - b);
  const mean = classes.map(() => new Array<number>(sizes.length).fill(NaN));
  const std = classes.map(() => new Array<number>(sizes.length).fill(NaN));
  for (const r of match) {
    const ci = classes.indexOf(r.cls);
    const ni = sizes.indexOf(r.n);
    mean[ci][ni] = r.meanProb;
    std[ci][ni] = r.stdProb;
  }
  return { n: sizes, mean, std };
}

const fmt = (x: number): string => (Math.round(x * 100) / 100).toString();

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function clip01(y: number): number {
  return Math.min(1, Math.max(0, y));
}

/** One panel's inner plot area in figure coordinates. */
interface Frame {
  x0: number;
  y0: number;
  w: number;
  h: number;
  nMin: number;
  nMax: number;
}

function toX(f: Frame, n: number): number {
  const span = f.nMax > f.nMin ? f.nMax - f.nMin : 1;
  return f.x0 + ((n - f.nMin) / span) * f.w;
}

function toY(f: Frame, p: number): number {
  return f.y0 + (1 - p) * f.h;
}

function panelSvg(
  spec: FigureSpec,
  frame: Frame,
  title: string,
  series: Series | null,
): string {
  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(frame.x0)}" y="${fmt(frame.y0)}" width="${fmt(frame.w)}" ` +
      `height="${fmt(frame.h)}" fill="white" stroke="#444" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${fmt(frame.x0 + frame.w / 2)}" y="${fmt(frame.y0 - 6)}" ` +
      `text-anchor="middle" font-size="11" class="panel-title">${esc(title)}</text>`,
  );
  // y ticks at 0, 0.5, 1; x ticks at the extremes
  for (const p of [0, 0.5, 1]) {
    const y = toY(frame, p);
    parts.push(
      `<line x1="${fmt(frame.x0 - 4)}" y1="${fmt(y)}" x2="${fmt(frame.x0)}" y2="${fmt(y)}" stroke="#444"/>`,
      `<text x="${fmt(frame.x0 - 7)}" y="${fmt(y + 3.5)}" text-anchor="end" font-size="9">${p}</text>`,
    );
  }
  if (series === null) {
    parts.push(
      `<text x="${fmt(frame.x0 + frame.w / 2)}" y="${fmt(frame.y0 + frame.h / 2)}" ` +
        `text-anchor="middle" font-size="10" fill="#b00" class="panel-warning">no data for this case</text>`,
    );
    return parts.join("\n");
  }
  for (const n of [series.n[0], series.n[series.n.length - 1]]) {
    const x = toX(frame, n);
    parts.push(
      `<line x1="${fmt(x)}" y1="${fmt(frame.y0 + frame.h)}" x2="${fmt(x)}" y2="${fmt(frame.y0 + frame.h + 4)}" stroke="#444"/>`,
      `<text x="${fmt(x)}" y="${fmt(frame.y0 + frame.h + 14)}" text-anchor="middle" font-size="9">${n}</text>`,
    );
  }
  for (let c = 0; c < series.mean.length; c++) {
    const color = spec.classColors[c % spec.classColors.length];
    const upper = series.n.map(
      (n, i) => `${fmt(toX(frame, n))},${fmt(toY(frame, clip01(series.mean[c][i] + series.std[c][i])))}`,
    );
    const lower = series.n
      .map(
        (n, i) => `${fmt(toX(frame, n))},${fmt(toY(frame, clip01(series.mean[c][i] - series.std[c][i])))}`,
      )
      .reverse();
    parts.push(
      `<polygon points="${upper.concat(lower).join(" ")}" fill="${color}" ` +
        `opacity="${spec.bandOpacity}" stroke="none" class="std-band"/>`,
    );
    const line = series.n.map(
      (n, i) => `${fmt(toX(frame, n))},${fmt(toY(frame, clip01(series.mean[c][i])))}`,
    );
    parts.push(
      `<polyline points="${line.join(" ")}" fill="none" stroke="${color}" ` +
        `stroke-width="1.5" class="mean-line"/>`,
    );
  }
  return parts.join("\n");
}

/** Render the full figure as an SVG string. Pure: same rows, same output. */
export function renderFigure(rows: SweepRow[], spec: FigureSpec = DEFAULT_SPEC): string {
  const sizes = [...new Set(rows.map((r) => r.n))].sort((a, b) => a - b);
  const nMin = sizes[0];
  const nMax = sizes[sizes.length - 1];
  const cols = spec.columns.length;
  const modeCount = spec.modes.length;
  const width =
    MARGIN.left + cols * spec.panelWidth + (cols - 1) * MARGIN.hGap + MARGIN.right;
  const height =
    MARGIN.top + modeCount * spec.panelHeight + (modeCount - 1) * MARGIN.vGap + MARGIN.bottom;

  const body: string[] = [];
  body.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  spec.modes.forEach((mode, r) => {
    const rowY = MARGIN.top + r * (spec.panelHeight + MARGIN.vGap);
    body.push(
      `<text x="14" y="${fmt(rowY + spec.panelHeight / 2)}" font-size="12" ` +
        `text-anchor="middle" transform="rotate(-90 14 ${fmt(rowY + spec.panelHeight / 2)})" ` +
        `class="row-label">${esc(mode)}</text>`,
    );
    spec.columns.forEach(([model, density], c) => {
      const colX = MARGIN.left + c * (spec.panelWidth + MARGIN.hGap);
      const frame: Frame = {
        x0: colX + AXIS_PAD.left,
        y0: rowY + AXIS_PAD.top,
        w: spec.panelWidth - AXIS_PAD.left - AXIS_PAD.right,
        h: spec.panelHeight - AXIS_PAD.top - AXIS_PAD.bottom,
        nMin,
        nMax,
      };
      const series = collectSeries(rows, model, density, mode);
      body.push(`<g class="panel" data-case="${esc(`${model}/${density}/${mode}`)}">`);
      body.push(panelSvg(spec, frame, `${model}, ${density}`, series));
      body.push("</g>");
    });
  });

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif">\n` +
    body.join("\n") +
    "\n</svg>\n"
  );
}
