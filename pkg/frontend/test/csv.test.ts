import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { SchemaError, column, columnsWithPrefix, parseCsv } from "../src/csv.js";

function writeTmp(name: string, body: string): string {
  const dir = mkdtempSync(join(tmpdir(), "csv-"));
  const file = join(dir, name);
  writeFileSync(file, body);
  return file;
}

describe("parseCsv", () => {
  it("parses a well-formed numeric table column-major", () => {
    const file = writeTmp("ok.csv", "a,b\n1,2\n3,4\n");
    const t = parseCsv(file);
    expect(t.header).toEqual(["a", "b"]);
    expect(column(t, "a")).toEqual([1, 3]);
    expect(column(t, "b")).toEqual([2, 4]);
  });

  it("reports field-count mismatch with the offending line number", () => {
    const file = writeTmp("ragged.csv", "a,b\n1,2\n3\n");
    expect(() => parseCsv(file)).toThrowError(SchemaError);
    try {
      parseCsv(file);
    } catch (err) {
      expect((err as SchemaError).line).toBe(3);
      expect(String(err)).toContain(file);
    }
  });

  it("reports non-numeric fields with the offending line number", () => {
    const file = writeTmp("bad.csv", "a,b\n1,2\nx,4\n");
    try {
      parseCsv(file);
      expect.unreachable("parse should fail");
    } catch (err) {
      expect(err).toBeInstanceOf(SchemaError);
      expect((err as SchemaError).line).toBe(3);
    }
  });

  it("rejects an empty file", () => {
    const file = writeTmp("empty.csv", "");
    expect(() => parseCsv(file)).toThrowError(SchemaError);
  });

  it("looks up columns by name and prefix", () => {
    const file = writeTmp("pref.csv", "u_0,u_1,accept\n0.5,1.5,1\n");
    const t = parseCsv(file);
    expect(columnsWithPrefix(t, "u_")).toEqual(["u_0", "u_1"]);
    expect(() => column(t, "missing")).toThrowError(SchemaError);
  });
});
