/**
 * Minimal strict CSV reading for the sampler's artifact schemas.
 *
 * Artifacts are machine-written (no quoting, no embedded commas), so the
 * parser is a split-based reader that reports schema problems with the
 * offending line number.
 */

import { readFileSync } from "node:fs";

export class SchemaError extends Error {
  readonly file: string;
  readonly line: number;

  constructor(file: string, line: number, detail: string) {
    super(`${file}:${line}: ${detail}`);
    this.name = "SchemaError";
    this.file = file;
    this.line = line;
  }
}

export interface Table {
  header: string[];
  /** column-major numeric data, aligned with `header` */
  columns: number[][];
  file: string;
}

export function parseCsv(file: string): Table {
  const text = readFileSync(file, "utf8");
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(file, 1, "empty file");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  if (header.some((h) => h.length === 0)) {
    throw new SchemaError(file, 1, "blank column name in header");
  }
  const columns: number[][] = header.map(() => []);
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== header.length) {
      throw new SchemaError(
        file, i + 1,
        `expected ${header.length} fields, found ${parts.length}`,
      );
    }
    for (let j = 0; j < parts.length; j++) {
      const v = Number(parts[j]);
      if (Number.isNaN(v)) {
        throw new SchemaError(file, i + 1, `non-numeric value ${JSON.stringify(parts[j])}`);
      }
      columns[j].push(v);
    }
  }
  return { header, columns, file };
}

export function column(table: Table, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(table.file, 1, `missing column ${JSON.stringify(name)}`);
  }
  return table.columns[idx];
}

/** Column names matching a prefix, in header order. */
export function columnsWithPrefix(table: Table, prefix: string): string[] {
  return table.header.filter((h) => h.startsWith(prefix));
}
