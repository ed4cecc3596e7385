/**
 * Figure renderers for sampler artifacts.  Every renderer is a pure
 * function of its input files: identical artifacts give byte-identical
 * SVGs, and the governing manifest's sha256 is embedded in the metadata.
 */

import { writeFileSync } from "node:fs";
import { basename } from "node:path";

import { loadChain, loadTable, manifestFor } from "./artifacts.js";
import { SchemaError, column, columnsWithPrefix } from "./csv.js";
import {
  DEFAULT_SIZE, Frame, axes, color, extent, fmt, legend, polyline, rect,
  text, document as svgDocument, xScale, yScale,
} from "./svg.js";

export type FigureKind =
  | "trace" | "acf" | "hist1d" | "hist2d-analytic"
  | "accept-curve" | "wavelet-modes" | "mean-vs-truth";

export interface FigureSpec {
  kind: FigureKind;
  /** artifact paths, figure-kind specific (first entry is the primary CSV) */
  inputs: string[];
  output: string;
  /** component index for trace / hist1d */
  component?: number;
}

const MARGIN = { left: 56, right: 20, top: 34, bottom: 40 };

function frame(xDomain: [number, number], yDomain: [number, number],
               size = DEFAULT_SIZE): Frame {
  return { width: size.width, height: size.height, margin: MARGIN, xDomain, yDomain };
}

function hashOf(input: string): string | null {
  return manifestFor(input)?.hash ?? null;
}

export function renderTrace(spec: FigureSpec): string {
  const chain = loadChain(spec.inputs[0]);
  const j = spec.component ?? 0;
  if (j < 0 || j >= chain.names.length) {
    throw new SchemaError(spec.inputs[0], 1, `no component ${j}`);
  }
  const ys = chain.samples.map((row) => row[j]);
  const xs = ys.map((_, i) => i);
  const f = frame([0, Math.max(1, ys.length - 1)], extent(ys));
  const body = axes(f, "stored step", chain.names[j]) + "\n" +
    polyline(xs, ys, f, color(0), 0.8);
  return svgDocument(body, `trace of ${chain.names[j]} (${basename(spec.inputs[0])})`,
    hashOf(spec.inputs[0]));
}

export function renderAcf(spec: FigureSpec): string {
  const table = loadTable(spec.inputs[0], ["lag"]);
  const lags = column(table, "lag");
  const names = columnsWithPrefix(table, "acf_");
  if (names.length === 0) {
    throw new SchemaError(spec.inputs[0], 1, "no acf_* columns");
  }
  const f = frame([0, lags[lags.length - 1]], [Math.min(0, ...names.flatMap(
    (n) => column(table, n))), 1.0]);
  const curves = names.map((n, i) => polyline(lags, column(table, n), f, color(i)));
  const zero = polyline([0, lags[lags.length - 1]], [0, 0], f, "#999", 0.6);
  const body = axes(f, "lag", "autocorrelation") + "\n" + zero + "\n" + curves.join("\n") +
    "\n" + legend(f, names.map((n, i) => ({ label: n, color: color(i) })));
  return svgDocument(body, "autocorrelation", hashOf(spec.inputs[0]));
}

function histogram(values: number[], nBins: number): { edges: number[]; counts: number[] } {
  const [lo, hi] = extent(values, 0);
  const edges: number[] = [];
  for (let i = 0; i <= nBins; i++) edges.push(lo + ((hi - lo) * i) / nBins);
  const counts = new Array<number>(nBins).fill(0);
  for (const v of values) {
    let b = Math.floor(((v - lo) / (hi - lo || 1)) * nBins);
    if (b === nBins) b = nBins - 1;
    if (b >= 0 && b < nBins) counts[b]++;
  }
  return { edges, counts };
}

export function renderHist1d(spec: FigureSpec): string {
  const chain = loadChain(spec.inputs[0]);
  const j = spec.component ?? 0;
  if (j < 0 || j >= chain.names.length) {
    throw new SchemaError(spec.inputs[0], 1, `no component ${j}`);
  }
  const values = chain.samples.map((row) => row[j]);
  const { edges, counts } = histogram(values, 50);
  const f = frame([edges[0], edges[edges.length - 1]], [0, Math.max(1, ...counts) * 1.05]);
  const sx = xScale(f);
  const sy = yScale(f);
  const bars = counts.map((c, i) =>
    rect(sx(edges[i]), sy(c), sx(edges[i + 1]) - sx(edges[i]), sy(0) - sy(c), color(0), 0.7),
  );
  const body = axes(f, chain.names[j], "count") + "\n" + bars.join("\n");
  return svgDocument(body, `posterior histogram of ${chain.names[j]}`, hashOf(spec.inputs[0]));
}

interface Grid2d {
  xs: number[];
  ys: number[];
  /** vals[iy][ix] */
  vals: number[][];
}

function tableToGrid(file: string, valueName: string): Grid2d {
  const table = loadTable(file, ["x", "y", valueName]);
  const xcol = column(table, "x");
  const ycol = column(table, "y");
  const vcol = column(table, valueName);
  const xs = [...new Set(xcol)].sort((a, b) => a - b);
  const ys = [...new Set(ycol)].sort((a, b) => a - b);
  const xi = new Map(xs.map((v, i) => [v, i]));
  const yi = new Map(ys.map((v, i) => [v, i]));
  const vals = ys.map(() => new Array<number>(xs.length).fill(0));
  for (let k = 0; k < vcol.length; k++) {
    vals[yi.get(ycol[k])!][xi.get(xcol[k])!] = vcol[k];
  }
  return { xs, ys, vals };
}

function stride(g: Grid2d, maxCells: number): Grid2d {
  const s = Math.max(1, Math.ceil(Math.max(g.xs.length, g.ys.length) / maxCells));
  if (s === 1) return g;
  const pick = (a: number[]) => a.filter((_, i) => i % s === 0);
  return {
    xs: pick(g.xs),
    ys: pick(g.ys),
    vals: g.vals.filter((_, i) => i % s === 0).map((row) => pick(row)),
  };
}

function ramp(t: number): string {
  // light -> dark blue, monotone in t
  const u = Math.max(0, Math.min(1, t));
  const c = (a: number, b: number) => Math.round(a + (b - a) * u);
  return `rgb(${c(247, 8)},${c(251, 48)},${c(255, 107)})`;
}

function heatPanel(g: Grid2d, region: Frame): string {
  const sx = xScale(region);
  const sy = yScale(region);
  let vmax = 0;
  for (const row of g.vals) for (const v of row) vmax = Math.max(vmax, v);
  const parts: string[] = [];
  const dx = g.xs.length > 1 ? g.xs[1] - g.xs[0] : 1;
  const dy = g.ys.length > 1 ? g.ys[1] - g.ys[0] : 1;
  for (let iy = 0; iy < g.ys.length; iy++) {
    for (let ix = 0; ix < g.xs.length; ix++) {
      const px = sx(g.xs[ix] - dx / 2);
      const py = sy(g.ys[iy] + dy / 2);
      parts.push(rect(px, py, sx(g.xs[ix] + dx / 2) - px, sy(g.ys[iy] - dy / 2) - py,
        ramp(vmax > 0 ? g.vals[iy][ix] / vmax : 0)));
    }
  }
  return parts.join("\n");
}

export function renderHist2dAnalytic(spec: FigureSpec): string {
  if (spec.inputs.length < 2) {
    throw new SchemaError(spec.output, 1, "hist2d-analytic needs [hist2d.csv, analytic_grid.csv]");
  }
  const mcmc = stride(tableToGrid(spec.inputs[0], "count"), 80);
  const exact = stride(tableToGrid(spec.inputs[1], "density"), 80);
  const size = { width: 900, height: 430 };
  const xDom = extent([...exact.xs], 0);
  const yDom = extent([...exact.ys], 0);
  const left: Frame = { width: 440, height: 430, margin: MARGIN, xDomain: xDom, yDomain: yDom };
  const rightMargin = { ...MARGIN, left: 56 };
  const right: Frame = { width: 440, height: 430, margin: rightMargin, xDomain: xDom, yDomain: yDom };
  const panelA = heatPanel(mcmc, left) + "\n" + axes(left, "u_0", "u_1") + "\n" +
    text(220, 32, "MCMC histogram", "middle", 12);
  const panelB = heatPanel(exact, right) + "\n" + axes(right, "u_0", "u_1") + "\n" +
    text(220, 32, "analytic posterior", "middle", 12);
  const body = `<g>\n${panelA}\n</g>\n<g transform="translate(450 0)">\n${panelB}\n</g>`;
  return svgDocument(body, "posterior: samples vs quadrature", hashOf(spec.inputs[0]), size);
}

export function renderAcceptCurve(spec: FigureSpec): string {
  const table = loadTable(spec.inputs[0], ["beta"]);
  const betas = column(table, "beta");
  const names = columnsWithPrefix(table, "accept_");
  if (names.length === 0) {
    throw new SchemaError(spec.inputs[0], 1, "no accept_* columns");
  }
  const f = frame(extent(betas, 0.02), [0, 1]);
  const curves = names.map((n, i) => polyline(betas, column(table, n), f, color(i), 1.6));
  const body = axes(f, "beta", "average acceptance") + "\n" + curves.join("\n") + "\n" +
    legend(f, names.map((n, i) => ({ label: n.replace("accept_", "N = ").replace("n", ""), color: color(i) })));
  return svgDocument(body, "acceptance vs beta", hashOf(spec.inputs[0]));
}

export function renderWaveletModes(spec: FigureSpec): string {
  const table = loadTable(spec.inputs[0], ["mode", "mean", "std"]);
  const modes = column(table, "mode");
  const mean = column(table, "mean");
  const std = column(table, "std");
  const lo = Math.min(0, ...mean.map((m, i) => m - std[i]));
  const hi = Math.max(0, ...mean.map((m, i) => m + std[i]));
  const f = frame([-0.5, modes.length - 0.5], extent([lo, hi], 0.08));
  const sx = xScale(f);
  const sy = yScale(f);
  const parts: string[] = [];
  for (let i = 0; i < modes.length; i++) {
    const x0 = sx(i - 0.4);
    const w = sx(i + 0.4) - x0;
    const y0 = sy(Math.max(0, mean[i]));
    const h = Math.abs(sy(mean[i]) - sy(0));
    parts.push(rect(x0, y0, w, h, color(0), 0.8));
    const cx = sx(i);
    parts.push(`<line x1="${fmt(cx)}" y1="${fmt(sy(mean[i] - std[i]))}" ` +
      `x2="${fmt(cx)}" y2="${fmt(sy(mean[i] + std[i]))}" stroke="#000" stroke-width="1"/>`);
  }
  const body = axes(f, "wavelet mode", "posterior mean +/- std") + "\n" + parts.join("\n");
  return svgDocument(body, "posterior wavelet modes", hashOf(spec.inputs[0]));
}

export function renderMeanVsTruth(spec: FigureSpec): string {
  const table = loadTable(spec.inputs[0], ["index", "truth", "mean", "median"]);
  const idx = column(table, "index");
  const truth = column(table, "truth");
  const mean = column(table, "mean");
  const median = column(table, "median");
  const all = [...truth, ...mean, ...median];
  const f = frame([Math.min(...idx) - 0.5, Math.max(...idx) + 0.5], extent(all));
  const sx = xScale(f);
  const sy = yScale(f);
  const marks = idx.map((i, k) =>
    `<circle cx="${fmt(sx(i))}" cy="${fmt(sy(truth[k]))}" r="3" fill="#000"/>`);
  const body = axes(f, "component", "value") + "\n" +
    polyline(idx, mean, f, color(0), 1.6) + "\n" +
    polyline(idx, median, f, color(1), 1.2) + "\n" +
    marks.join("\n") + "\n" +
    legend(f, [{ label: "mean", color: color(0) }, { label: "median", color: color(1) },
               { label: "truth", color: "#000" }]);
  return svgDocument(body, "posterior mean and median vs truth", hashOf(spec.inputs[0]));
}

const RENDERERS: Record<FigureKind, (spec: FigureSpec) => string> = {
  "trace": renderTrace,
  "acf": renderAcf,
  "hist1d": renderHist1d,
  "hist2d-analytic": renderHist2dAnalytic,
  "accept-curve": renderAcceptCurve,
  "wavelet-modes": renderWaveletModes,
  "mean-vs-truth": renderMeanVsTruth,
};

/** Render a figure to its output path; returns the SVG string. */
export function render(spec: FigureSpec): string {
  const fn = RENDERERS[spec.kind];
  if (!fn) {
    throw new Error(`unknown figure kind ${JSON.stringify(spec.kind)}`);
  }
  const svg = fn(spec);
  writeFileSync(spec.output, svg);
  return svg;
}
