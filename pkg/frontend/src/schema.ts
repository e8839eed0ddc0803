/**
 * Strict reader for the sweep CSV schema emitted by the phaseladder CLI:
 * `M,N,eps_mean,eps_stderr,trials,seed`, one numeric row per budget point.
 */

export interface SweepRow {
  m: number;
  n: number;
  epsMean: number;
  epsStderr: number;
  trials: number;
  seed: number;
}

export const EXPECTED_COLUMNS = ["M", "N", "eps_mean", "eps_stderr", "trials", "seed"] as const;

export class SchemaError extends Error {}

function parseNumber(raw: string, column: string, line: number): number {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    throw new SchemaError(`line ${line}: column '${column}' is not a finite number: '${raw}'`);
  }
  return value;
}

export function parseSweepCsv(text: string, source = "<csv>"): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new SchemaError(`${source}: empty file`);
  }
  const header = lines[0].split(",").map((c) => c.trim());
  for (let i = 0; i < EXPECTED_COLUMNS.length; i++) {
    if (header[i] !== EXPECTED_COLUMNS[i]) {
      throw new SchemaError(
        `${source}: header column ${i + 1} is '${header[i] ?? ""}', expected '${EXPECTED_COLUMNS[i]}'`
      );
    }
  }
  if (header.length !== EXPECTED_COLUMNS.length) {
    throw new SchemaError(
      `${source}: header has ${header.length} columns, expected ${EXPECTED_COLUMNS.length}`
    );
  }
  if (lines.length === 1) {
    throw new SchemaError(`${source}: no data rows`);
  }

  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== EXPECTED_COLUMNS.length) {
      throw new SchemaError(
        `${source}: line ${i + 1} has ${cells.length} columns, expected ${EXPECTED_COLUMNS.length}`
      );
    }
    const [m, n, epsMean, epsStderr, trials, seed] = EXPECTED_COLUMNS.map((col, j) =>
      parseNumber(cells[j], col, i + 1)
    );
    if (n <= 0) {
      throw new SchemaError(`${source}: line ${i + 1}: column 'N' must be positive for a log axis`);
    }
    if (epsMean < 0 || epsMean > 1) {
      throw new SchemaError(`${source}: line ${i + 1}: column 'eps_mean' must lie in [0, 1]`);
    }
    rows.push({ m, n, epsMean, epsStderr, trials, seed });
  }
  return rows;
}
