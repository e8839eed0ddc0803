import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { SchemaError, parseSweepCsv } from "../src/schema.js";

const FIXTURES = join(__dirname, "fixtures");

describe("parseSweepCsv", () => {
  it("reads a real sweep file", () => {
    const text = readFileSync(join(FIXTURES, "cmp_ladder.csv"), "utf8");
    const rows = parseSweepCsv(text, "cmp_ladder.csv");
    expect(rows).toHaveLength(6);
    expect(rows[0].m).toBe(1);
    expect(rows[0].n).toBeCloseTo(30.0994, 3);
    expect(rows[5].epsMean).toBeLessThan(0.01);
    expect(rows.every((r) => r.seed === 777)).toBe(true);
  });

  it("names the offending header column", () => {
    const bad = "M,N,eps,eps_stderr,trials,seed\n1,2,0.5,0,1,1\n";
    expect(() => parseSweepCsv(bad)).toThrowError(/column 3 .*'eps'.*expected 'eps_mean'/);
  });

  it("rejects extra columns", () => {
    const bad = "M,N,eps_mean,eps_stderr,trials,seed,extra\n1,2,0.5,0,1,1,9\n";
    expect(() => parseSweepCsv(bad)).toThrowError(SchemaError);
  });

  it("names the offending cell", () => {
    const bad = "M,N,eps_mean,eps_stderr,trials,seed\n1,2,half,0,1,1\n";
    expect(() => parseSweepCsv(bad)).toThrowError(/line 2: column 'eps_mean'/);
  });

  it("rejects empty data", () => {
    expect(() => parseSweepCsv("M,N,eps_mean,eps_stderr,trials,seed\n")).toThrowError(
      /no data rows/
    );
    expect(() => parseSweepCsv("")).toThrowError(/empty file/);
  });

  it("rejects out-of-range values", () => {
    expect(() =>
      parseSweepCsv("M,N,eps_mean,eps_stderr,trials,seed\n1,0,0.5,0,1,1\n")
    ).toThrowError(/'N' must be positive/);
    expect(() =>
      parseSweepCsv("M,N,eps_mean,eps_stderr,trials,seed\n1,2,1.5,0,1,1\n")
    ).toThrowError(/'eps_mean' must lie in/);
  });
});
