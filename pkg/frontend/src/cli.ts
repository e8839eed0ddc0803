/**
 * Figure generator for sweep CSVs:
 *
 *   phaseladder-figures --in a.csv b.csv --labels ladder single --out fig.svg
 *
 * Labels default to the file stems.  Any schema or argument problem exits
 * nonzero without writing the output file.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { parseSweepCsv } from "./schema.js";
import { Curve, renderFigure } from "./svg.js";

export interface CliArgs {
  inputs: string[];
  labels: string[];
  out: string;
  threshold: number;
}

export function parseArgs(argv: string[]): CliArgs {
  const inputs: string[] = [];
  const labels: string[] = [];
  let out = "";
  let threshold = 0.01;
  let i = 0;
  const takeList = (target: string[]) => {
    while (i < argv.length && !argv[i].startsWith("--")) {
      target.push(argv[i]);
      i++;
    }
  };
  while (i < argv.length) {
    const flag = argv[i];
    i++;
    switch (flag) {
      case "--in":
        takeList(inputs);
        break;
      case "--labels":
        takeList(labels);
        break;
      case "--out":
        out = argv[i] ?? "";
        i++;
        break;
      case "--threshold":
        threshold = Number(argv[i]);
        i++;
        break;
      default:
        throw new Error(`unknown argument '${flag}'`);
    }
  }
  if (inputs.length === 0) {
    throw new Error("at least one --in CSV is required");
  }
  if (!out) {
    throw new Error("--out is required");
  }
  if (labels.length === 0) {
    for (const input of inputs) {
      labels.push(basename(input).replace(/\.csv$/i, ""));
    }
  }
  if (labels.length !== inputs.length) {
    throw new Error(
      `got ${labels.length} labels for ${inputs.length} inputs; counts must match`
    );
  }
  if (!Number.isFinite(threshold) || threshold <= 0 || threshold >= 1) {
    throw new Error("--threshold must be a number in (0, 1)");
  }
  return { inputs, labels, out, threshold };
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const curves: Curve[] = args.inputs.map((path, index) => ({
      label: args.labels[index],
      rows: parseSweepCsv(readFileSync(path, "utf8"), path),
    }));
    const svg = renderFigure(curves, { threshold: args.threshold });
    writeFileSync(args.out, svg + "\n");
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (error) {
    console.error(`error: ${error instanceof Error ? error.message : error}`);
    return 1;
  }
}
