import { readFileSync } from "fs";
import { describe, expect, it } from "vitest";

import { parseRuns, SchemaError } from "../src/csv.js";

const golden = readFileSync(new URL("./fixtures/golden.csv", import.meta.url), "utf8");

describe("parseRuns", () => {
  it("reads the golden fixture", () => {
    const rows = parseRuns(golden);
    expect(rows.length).toBe(36);
    expect(rows[0].n).toBe(10);
    expect(rows.every((r) => r.ratio === null || (r.ratio >= 0 && r.ratio <= 1))).toBe(true);
  });

  it("rejects an empty file", () => {
    expect(() => parseRuns("")).toThrow(SchemaError);
    expect(() => parseRuns("\n\n")).toThrow(/empty CSV/);
  });

  it("rejects a header-only file", () => {
    const header = golden.split("\n")[0];
    expect(() => parseRuns(header + "\n")).toThrow(/nothing to plot/);
  });

  it("rejects an unknown schema tag", () => {
    const tampered = golden.replace(/laa-runs-1/g, "laa-runs-9");
    expect(() => parseRuns(tampered)).toThrow(/unknown schema tag/);
  });

  it("rejects a missing column", () => {
    const lines = golden.split("\n");
    const dropFirst = (line: string) => line.split(",").slice(1).join(",");
    const tampered = lines.map((l) => (l.trim() === "" ? l : dropFirst(l))).join("\n");
    expect(() => parseRuns(tampered)).toThrow(/missing column "schema"/);
  });

  it("rejects ragged rows", () => {
    const lines = golden.trimEnd().split("\n");
    lines[2] = lines[2] + ",excess";
    expect(() => parseRuns(lines.join("\n"))).toThrow(/expected .* cells/);
  });
});
