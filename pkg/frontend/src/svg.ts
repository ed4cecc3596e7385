/**
 * Deterministic SVG assembly: fixed-precision coordinates, no timestamps,
 * so identical inputs produce byte-identical images.
 */

export interface Frame {
  width: number;
  height: number;
  margin: { left: number; right: number; top: number; bottom: number };
  xDomain: [number, number];
  yDomain: [number, number];
}

export const DEFAULT_SIZE = { width: 640, height: 420 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export function color(i: number): string {
  return PALETTE[i % PALETTE.length];
}

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const s = x.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
}

export function fmtTick(x: number): string {
  const a = Math.abs(x);
  if (a !== 0 && (a >= 1e4 || a < 1e-3)) return x.toExponential(1);
  const s = Number(x.toPrecision(4));
  return String(s);
}

export function xScale(f: Frame): (x: number) => number {
  const [lo, hi] = f.xDomain;
  const span = hi - lo || 1;
  const inner = f.width - f.margin.left - f.margin.right;
  return (x) => f.margin.left + ((x - lo) / span) * inner;
}

export function yScale(f: Frame): (y: number) => number {
  const [lo, hi] = f.yDomain;
  const span = hi - lo || 1;
  const inner = f.height - f.margin.top - f.margin.bottom;
  return (y) => f.height - f.margin.bottom - ((y - lo) / span) * inner;
}

export function extent(values: number[], padFrac = 0.05): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!Number.isFinite(lo)) return [0, 1];
  if (lo === hi) return [lo - 0.5, hi + 0.5];
  const pad = (hi - lo) * padFrac;
  return [lo - pad, hi + pad];
}

export function ticks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (span / count) / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const out: number[] = [];
  for (let t = Math.ceil(lo / s) * s; t <= hi + 1e-12 * span; t += s) {
    out.push(Math.abs(t) < 1e-12 * span ? 0 : t);
  }
  return out;
}

export function polyline(xs: number[], ys: number[], f: Frame, stroke: string,
                         width = 1.2): string {
  const sx = xScale(f);
  const sy = yScale(f);
  const pts = xs.map((x, i) => `${fmt(sx(x))},${fmt(sy(ys[i]))}`).join(" ");
  return `<polyline fill="none" stroke="${stroke}" stroke-width="${width}" points="${pts}"/>`;
}

export function rect(x: number, y: number, w: number, h: number, fill: string,
                     opacity = 1): string {
  return `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ` +
    `fill="${fill}" fill-opacity="${opacity.toFixed(3)}"/>`;
}

export function text(x: number, y: number, s: string, anchor = "middle",
                     size = 12, extra = ""): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" ` +
    `font-family="sans-serif" font-size="${size}"${extra}>${escapeXml(s)}</text>`;
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function axes(f: Frame, xLabel: string, yLabel: string): string {
  const sx = xScale(f);
  const sy = yScale(f);
  const x0 = f.margin.left;
  const x1 = f.width - f.margin.right;
  const y0 = f.height - f.margin.bottom;
  const y1 = f.margin.top;
  const parts = [
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#000"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#000"/>`,
  ];
  for (const t of ticks(f.xDomain[0], f.xDomain[1])) {
    const px = sx(t);
    parts.push(`<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 4}" stroke="#000"/>`);
    parts.push(text(px, y0 + 16, fmtTick(t)));
  }
  for (const t of ticks(f.yDomain[0], f.yDomain[1])) {
    const py = sy(t);
    parts.push(`<line x1="${x0 - 4}" y1="${fmt(py)}" x2="${x0}" y2="${fmt(py)}" stroke="#000"/>`);
    parts.push(text(x0 - 6, py + 4, fmtTick(t), "end", 11));
  }
  parts.push(text((x0 + x1) / 2, f.height - 6, xLabel));
  parts.push(text(14, (y0 + y1) / 2, yLabel, "middle", 12,
    ` transform="rotate(-90 14 ${fmt((y0 + y1) / 2)})"`));
  return parts.join("\n");
}

export interface LegendEntry {
  label: string;
  color: string;
}

export function legend(f: Frame, entries: LegendEntry[]): string {
  const x = f.width - f.margin.right - 130;
  return entries.map((e, i) => {
    const y = f.margin.top + 14 + 16 * i;
    return `<line x1="${x}" y1="${y - 4}" x2="${x + 20}" y2="${y - 4}" ` +
      `stroke="${e.color}" stroke-width="2"/>\n` + text(x + 26, y, e.label, "start", 11);
  }).join("\n");
}

/** Wrap body content into a complete SVG, embedding provenance metadata. */
export function document(body: string, title: string, manifestHash: string | null,
                         size = DEFAULT_SIZE): string {
  const meta = manifestHash === null ? "" :
    `<metadata id="source-manifest">sha256:${manifestHash}</metadata>\n`;
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${size.width}" ` +
    `height="${size.height}" viewBox="0 0 ${size.width} ${size.height}">\n` +
    meta +
    text(size.width / 2, 18, title, "middle", 14, ` font-weight="bold"`) + "\n" +
    body + "\n</svg>\n";
}
