/**
 * Render every applicable figure for one experiment output directory.
 *
 * usage: make-all-figures <artifact-dir> [--out <figure-dir>]
 *
 * The directory is inspected for the sampler CLI's artifact files and each
 * figure kind with satisfied inputs is rendered.  Re-running is idempotent:
 * unchanged artifacts give byte-identical SVGs.
 */

import { existsSync, mkdirSync } from "node:fs";
import { join } from "node:path";

import { loadChain } from "../artifacts.js";
import { FigureSpec, render } from "../figures.js";

export function planFigures(dir: string, outDir: string): FigureSpec[] {
  const has = (name: string) => existsSync(join(dir, name));
  const specs: FigureSpec[] = [];
  if (has("chain.csv")) {
    const nComp = loadChain(join(dir, "chain.csv")).names.length;
    for (const j of [0, nComp - 1]) {
      specs.push({ kind: "trace", inputs: [join(dir, "chain.csv")],
                   output: join(outDir, `trace_u${j}.svg`), component: j });
      specs.push({ kind: "hist1d", inputs: [join(dir, "chain.csv")],
                   output: join(outDir, `hist1d_u${j}.svg`), component: j });
    }
  }
  if (has("acf.csv")) {
    specs.push({ kind: "acf", inputs: [join(dir, "acf.csv")],
                 output: join(outDir, "acf.svg") });
  }
  if (has("hist2d.csv") && has("analytic_grid.csv")) {
    specs.push({ kind: "hist2d-analytic",
                 inputs: [join(dir, "hist2d.csv"), join(dir, "analytic_grid.csv")],
                 output: join(outDir, "hist2d_analytic.svg") });
  }
  if (has("accept_vs_beta.csv")) {
    specs.push({ kind: "accept-curve", inputs: [join(dir, "accept_vs_beta.csv")],
                 output: join(outDir, "accept_curve.svg") });
  }
  if (has("wavelet_modes.csv")) {
    specs.push({ kind: "wavelet-modes", inputs: [join(dir, "wavelet_modes.csv")],
                 output: join(outDir, "wavelet_modes.svg") });
  }
  if (has("mean_vs_truth.csv")) {
    specs.push({ kind: "mean-vs-truth", inputs: [join(dir, "mean_vs_truth.csv")],
                 output: join(outDir, "mean_vs_truth.svg") });
  }
  return specs;
}

export function makeAllFigures(dir: string, outDir: string): string[] {
  mkdirSync(outDir, { recursive: true });
  const written: string[] = [];
  for (const spec of planFigures(dir, outDir)) {
    render(spec);
    written.push(spec.output);
  }
  return written;
}

const isMain = process.argv[1]?.endsWith("make-all-figures.js")
  || process.argv[1]?.endsWith("make-all-figures.ts");
if (isMain) {
  const argv = process.argv.slice(2);
  let dir: string | null = null;
  let outDir: string | null = null;
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--out") {
      outDir = argv[++i];
    } else {
      dir = argv[i];
    }
  }
  if (dir === null) {
    console.error("usage: make-all-figures <artifact-dir> [--out <figure-dir>]");
    process.exit(2);
  }
  try {
    const written = makeAllFigures(dir, outDir ?? join(dir, "figures"));
    for (const w of written) console.log(`wrote ${w}`);
    if (written.length === 0) console.error(`no renderable artifacts found in ${dir}`);
  } catch (err) {
    console.error(String(err));
    process.exit(1);
  }
}
