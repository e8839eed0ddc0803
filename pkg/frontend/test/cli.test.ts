import { copyFileSync, existsSync, mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { main, parseArgs } from "../src/cli.js";

const FIXTURES = join(__dirname, "fixtures");

let workdir: string;

beforeEach(() => {
  workdir = mkdtempSync(join(tmpdir(), "figures-"));
  vi.spyOn(console, "log").mockImplementation(() => {});
  vi.spyOn(console, "error").mockImplementation(() => {});
});

afterEach(() => {
  rmSync(workdir, { recursive: true, force: true });
  vi.restoreAllMocks();
});

describe("parseArgs", () => {
  it("collects inputs, labels and output", () => {
    const args = parseArgs(["--in", "a.csv", "b.csv", "--labels", "A", "B", "--out", "f.svg"]);
    expect(args.inputs).toEqual(["a.csv", "b.csv"]);
    expect(args.labels).toEqual(["A", "B"]);
    expect(args.out).toBe("f.svg");
    expect(args.threshold).toBe(0.01);
  });

  it("defaults labels to file stems", () => {
    const args = parseArgs(["--in", "runs/cmp_ladder.csv", "--out", "f.svg"]);
    expect(args.labels).toEqual(["cmp_ladder"]);
  });

  it("rejects mismatched label counts and unknown flags", () => {
    expect(() => parseArgs(["--in", "a.csv", "--labels", "x", "y", "--out", "f.svg"])).toThrowError(
      /counts must match/
    );
    expect(() => parseArgs(["--frobnicate"])).toThrowError(/unknown argument/);
    expect(() => parseArgs(["--in", "a.csv"])).toThrowError(/--out is required/);
    expect(() => parseArgs(["--out", "f.svg"])).toThrowError(/--in/);
  });
});

describe("main", () => {
  it("renders the two-curve comparison from compare-mode CSVs", () => {
    const out = join(workdir, "figure.svg");
    const code = main([
      "--in",
      join(FIXTURES, "cmp_ladder.csv"),
      join(FIXTURES, "cmp_single_baseline.csv"),
      "--labels",
      "ladder",
      "single baseline",
      "--out",
      out,
    ]);
    expect(code).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain('class="threshold"');
    expect((svg.match(/class="curve"/g) ?? []).length).toBe(2);
  });

  it("fails with nonzero exit and writes nothing on schema mismatch", () => {
    const bad = join(workdir, "bad.csv");
    writeFileSync(bad, "M,N,failure,eps_stderr,trials,seed\n1,2,0.5,0,1,1\n");
    const out = join(workdir, "figure.svg");
    const code = main(["--in", bad, "--out", out]);
    expect(code).toBe(1);
    expect(existsSync(out)).toBe(false);
  });

  it("fails when one of several inputs is broken", () => {
    const good = join(workdir, "good.csv");
    copyFileSync(join(FIXTURES, "cmp_ladder.csv"), good);
    const bad = join(workdir, "bad.csv");
    writeFileSync(bad, "M,N,eps_mean,eps_stderr,trials,seed\n1,2,oops,0,1,1\n");
    const out = join(workdir, "figure.svg");
    expect(main(["--in", good, bad, "--out", out])).toBe(1);
    expect(existsSync(out)).toBe(false);
  });

  it("fails on a missing input file", () => {
    const out = join(workdir, "figure.svg");
    expect(main(["--in", join(workdir, "nope.csv"), "--out", out])).toBe(1);
    expect(existsSync(out)).toBe(false);
  });
});
