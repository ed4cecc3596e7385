/**
 * Typed loaders for the sampler CLI's artifact directory layout.
 *
 * chain.csv          u_0..u_{N-1},accept rows, one per stored sample
 * chain.json         run config + acceptance rate sidecar
 * manifest.json      full config, seeds, version, wall-clock
 * diagnostics.json   IACF / ESS / acceptance summary
 * plus experiment-specific column CSVs (hist2d, analytic_grid,
 * accept_vs_beta, mean_vs_truth, wavelet_modes, posterior_mean, ...).
 */

import { createHash } from "node:crypto";
import { existsSync, readFileSync } from "node:fs";
import { join } from "node:path";

import { SchemaError, Table, column, columnsWithPrefix, parseCsv } from "./csv.js";

export interface Chain {
  /** sample-major matrix, samples[i][j] = coefficient j at stored step i */
  samples: number[][];
  accept: number[];
  names: string[];
  file: string;
}

export function loadChain(file: string): Chain {
  const table = parseCsv(file);
  const names = columnsWithPrefix(table, "u_");
  if (names.length === 0 || table.header[table.header.length - 1] !== "accept") {
    throw new SchemaError(file, 1, "expected u_* columns followed by accept");
  }
  const cols = names.map((n) => column(table, n));
  const n = cols[0].length;
  const samples: number[][] = [];
  for (let i = 0; i < n; i++) {
    samples.push(cols.map((c) => c[i]));
  }
  return { samples, accept: column(table, "accept"), names, file };
}

export interface Manifest {
  config: Record<string, unknown>;
  version: string;
  wall_clock_sec: number;
  /** sha256 of the manifest file bytes, embedded in every figure */
  hash: string;
  file: string;
}

export function loadManifest(file: string): Manifest {
  const raw = readFileSync(file);
  const parsed = JSON.parse(raw.toString("utf8"));
  if (typeof parsed.config !== "object" || parsed.config === null) {
    throw new SchemaError(file, 1, "manifest missing config object");
  }
  return {
    config: parsed.config,
    version: String(parsed.version ?? "unknown"),
    wall_clock_sec: Number(parsed.wall_clock_sec ?? 0),
    hash: createHash("sha256").update(raw).digest("hex"),
    file,
  };
}

export interface Diagnostics {
  acceptance_rate: number | null;
  iacf: number[];
  ess_per_10k: number[];
}

export function loadDiagnostics(file: string): Diagnostics {
  const parsed = JSON.parse(readFileSync(file, "utf8"));
  if (!Array.isArray(parsed.iacf)) {
    throw new SchemaError(file, 1, "diagnostics missing iacf array");
  }
  return {
    acceptance_rate: parsed.acceptance_rate ?? null,
    iacf: parsed.iacf,
    ess_per_10k: parsed.ess_per_10k ?? [],
  };
}

export function loadTable(file: string, required: string[]): Table {
  const table = parseCsv(file);
  for (const name of required) {
    if (!table.header.includes(name)) {
      throw new SchemaError(file, 1, `missing column ${JSON.stringify(name)}`);
    }
  }
  return table;
}

/** Locate the manifest that governs an artifact file's directory. */
export function manifestFor(artifact: string): Manifest | null {
  const dir = join(artifact, "..");
  const path = join(dir, "manifest.json");
  return existsSync(path) ? loadManifest(path) : null;
}
