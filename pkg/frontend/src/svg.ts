/**
 * Log-log comparison figure: average failure probability against the photon
 * budget, one curve per input CSV, error bars from the stderr column and a
 * horizontal marker at the 1% failure threshold.
 *
 * Output is a plain SVG string built deterministically from the rows, so the
 * same inputs always produce byte-identical images.
 */

import { SweepRow } from "./schema.js";
import { LogScale, decadeTicks, formatDecade, logPosition, padToDecades } from "./scale.js";

export interface Curve {
  label: string;
  rows: SweepRow[];
}

export interface FigureOptions {
  width?: number;
  height?: number;
  threshold?: number;
  /** Floor for the log eps axis; zero failure rates are drawn here. */
  epsFloor?: number;
}

const COLORS = ["#0173b2", "#de8f05", "#029e73", "#d55e00", "#cc78bc", "#949494"];
const MARGIN = { left: 64, right: 16, top: 20, bottom: 46 };

function fmt(x: number): string {
  return Number(x.toFixed(2)).toString();
}

export function renderFigure(curves: Curve[], options: FigureOptions = {}): string {
  if (curves.length === 0) {
    throw new Error("need at least one curve");
  }
  for (const curve of curves) {
    if (curve.rows.length === 0) {
      throw new Error(`curve '${curve.label}' has no data rows`);
    }
  }
  const width = options.width ?? 640;
  const height = options.height ?? 420;
  const threshold = options.threshold ?? 0.01;

  const budgets = curves.flatMap((c) => c.rows.map((r) => r.n));
  const positiveEps = curves
    .flatMap((c) => c.rows.flatMap((r) => [r.epsMean, Math.max(r.epsMean - r.epsStderr, 0)]))
    .filter((e) => e > 0);
  const epsFloor =
    options.epsFloor ?? Math.min(10 ** Math.floor(Math.log10(Math.min(...positiveEps, threshold))) / 10, 1e-4);

  const [nMin, nMax] = padToDecades(Math.min(...budgets), Math.max(...budgets));
  const x: LogScale = { min: nMin, max: nMax, pixelMin: MARGIN.left, pixelMax: width - MARGIN.right };
  const y: LogScale = { min: epsFloor, max: 1.0, pixelMin: height - MARGIN.bottom, pixelMax: MARGIN.top };

  const clampEps = (e: number) => Math.min(Math.max(e, epsFloor), 1.0);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  // frame
  const frame = `M ${MARGIN.left} ${MARGIN.top} H ${width - MARGIN.right} V ${height - MARGIN.bottom} H ${MARGIN.left} Z`;
  parts.push(`<path d="${frame}" fill="none" stroke="#444" stroke-width="1"/>`);

  // x ticks: decades of the photon budget (log axis)
  for (const tick of decadeTicks(nMin, nMax)) {
    const px = logPosition(x, tick);
    parts.push(
      `<line x1="${fmt(px)}" y1="${height - MARGIN.bottom}" x2="${fmt(px)}" y2="${height - MARGIN.bottom + 5}" stroke="#444"/>`,
      `<text x="${fmt(px)}" y="${height - MARGIN.bottom + 18}" font-size="11" text-anchor="middle" font-family="sans-serif">${formatDecade(tick)}</text>`
    );
  }
  parts.push(
    `<text x="${fmt((MARGIN.left + width - MARGIN.right) / 2)}" y="${height - 10}" font-size="12" text-anchor="middle" font-family="sans-serif">total photons N (log)</text>`
  );

  // y ticks: decades of the failure probability
  for (const tick of decadeTicks(epsFloor, 1.0)) {
    const py = logPosition(y, tick);
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${fmt(py)}" x2="${MARGIN.left}" y2="${fmt(py)}" stroke="#444"/>`,
      `<text x="${MARGIN.left - 8}" y="${fmt(py + 4)}" font-size="11" text-anchor="end" font-family="sans-serif">${formatDecade(tick)}</text>`
    );
  }
  parts.push(
    `<text x="14" y="${fmt((MARGIN.top + height - MARGIN.bottom) / 2)}" font-size="12" text-anchor="middle" font-family="sans-serif" transform="rotate(-90 14 ${fmt((MARGIN.top + height - MARGIN.bottom) / 2)})">average failure probability</text>`
  );

  // threshold line
  const thresholdY = logPosition(y, clampEps(threshold));
  parts.push(
    `<line class="threshold" x1="${MARGIN.left}" y1="${fmt(thresholdY)}" x2="${width - MARGIN.right}" y2="${fmt(thresholdY)}" stroke="#b22222" stroke-dasharray="6 4" stroke-width="1"/>`,
    `<text x="${width - MARGIN.right - 4}" y="${fmt(thresholdY - 5)}" font-size="11" text-anchor="end" fill="#b22222" font-family="sans-serif">${threshold * 100}% threshold</text>`
  );

  // curves
  curves.forEach((curve, index) => {
    const color = COLORS[index % COLORS.length];
    const sorted = [...curve.rows].sort((a, b) => a.n - b.n);
    const points = sorted
      .map((r) => `${fmt(logPosition(x, r.n))},${fmt(logPosition(y, clampEps(r.epsMean)))}`)
      .join(" ");
    parts.push(
      `<polyline class="curve" fill="none" stroke="${color}" stroke-width="1.6" points="${points}"/>`
    );
    for (const r of sorted) {
      const px = logPosition(x, r.n);
      const py = logPosition(y, clampEps(r.epsMean));
      if (r.epsStderr > 0) {
        const lo = logPosition(y, clampEps(r.epsMean - r.epsStderr));
        const hi = logPosition(y, clampEps(r.epsMean + r.epsStderr));
        parts.push(
          `<line class="errorbar" x1="${fmt(px)}" y1="${fmt(lo)}" x2="${fmt(px)}" y2="${fmt(hi)}" stroke="${color}" stroke-width="1"/>`
        );
      }
      parts.push(`<circle cx="${fmt(px)}" cy="${fmt(py)}" r="3" fill="${color}"/>`);
    }
    // legend entry
    const legendY = MARGIN.top + 16 + index * 18;
    parts.push(
      `<line x1="${MARGIN.left + 10}" y1="${legendY - 4}" x2="${MARGIN.left + 34}" y2="${legendY - 4}" stroke="${color}" stroke-width="1.6"/>`,
      `<text x="${MARGIN.left + 40}" y="${legendY}" font-size="12" font-family="sans-serif">${escapeXml(curve.label)}</text>`
    );
  });

  parts.push("</svg>");
  return parts.join("\n");
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
