/** Shared argv handling for the per-figure scripts. */

import { FigureKind, FigureSpec, render } from "../figures.js";

export function runScript(kind: FigureKind, argv: string[]): void {
  const inputs: string[] = [];
  let output: string | null = null;
  let component: number | undefined;
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--out") {
      output = argv[++i];
    } else if (argv[i] === "--component") {
      component = Number(argv[++i]);
    } else {
      inputs.push(argv[i]);
    }
  }
  if (inputs.length === 0 || output === null) {
    console.error(`usage: ${kind} <input.csv> [more inputs] --out <figure.svg> [--component j]`);
    process.exit(2);
  }
  const spec: FigureSpec = { kind, inputs, output, component };
  try {
    render(spec);
    console.log(`wrote ${output}`);
  } catch (err) {
    console.error(String(err));
    process.exit(1);
  }
}
