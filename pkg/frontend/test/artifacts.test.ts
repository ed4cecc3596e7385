import { createHash } from "node:crypto";
import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  loadChain, loadDiagnostics, loadManifest, loadTable, manifestFor,
} from "../src/artifacts.js";
import { SchemaError } from "../src/csv.js";

const FIXTURES = join(__dirname, "fixtures");
const DENSITY2D = join(FIXTURES, "density2d");
const DECONV = join(FIXTURES, "deconvolve");

describe("loadChain", () => {
  it("reads the stored samples with component names and accept flags", () => {
    const chain = loadChain(join(DENSITY2D, "chain.csv"));
    expect(chain.names).toEqual(["u_0", "u_1"]);
    expect(chain.samples.length).toBeGreaterThan(100);
    expect(chain.accept.length).toBe(chain.samples.length);
    for (const a of chain.accept) expect([0, 1]).toContain(a);
    for (const row of chain.samples) expect(row.length).toBe(2);
  });

  it("rejects tables without the chain schema", () => {
    expect(() => loadChain(join(DENSITY2D, "hist2d.csv"))).toThrowError(SchemaError);
  });
});

describe("loadManifest / manifestFor", () => {
  it("exposes the config and hashes the file bytes", () => {
    const path = join(DENSITY2D, "manifest.json");
    const m = loadManifest(path);
    expect(m.config).toHaveProperty("algorithm");
    const expected = createHash("sha256").update(readFileSync(path)).digest("hex");
    expect(m.hash).toBe(expected);
  });

  it("locates the manifest governing a sibling artifact", () => {
    const m = manifestFor(join(DENSITY2D, "chain.csv"));
    expect(m).not.toBeNull();
    expect(m!.file).toContain("manifest.json");
  });

  it("returns null when no manifest exists", () => {
    expect(manifestFor(join(FIXTURES, "nothing.csv"))).toBeNull();
  });
});

describe("loadDiagnostics / loadTable", () => {
  it("reads iacf and ess arrays", () => {
    const d = loadDiagnostics(join(DENSITY2D, "diagnostics.json"));
    expect(d.iacf.length).toBeGreaterThan(0);
    expect(d.ess_per_10k.length).toBe(d.iacf.length);
  });

  it("enforces required columns", () => {
    const t = loadTable(join(DECONV, "wavelet_modes.csv"), ["mode", "mean", "std"]);
    expect(t.header).toContain("gamma");
    expect(() => loadTable(join(DECONV, "wavelet_modes.csv"), ["nope"]))
      .toThrowError(SchemaError);
  });
});
