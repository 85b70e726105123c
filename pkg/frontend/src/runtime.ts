/**
 * Runtime-scaling figure: wall time against instance size on log-log axes
 * with the fitted power-law slope (and its 95% CI) annotated. Refuses to
 * fit fewer than three distinct sizes.
 */

import { readFileSync, writeFileSync } from "fs";

import { parseRuns, RunRow, SchemaError } from "./csv.js";
import { linearFit, mean } from "./stats.js";
import { drawAxes, LinearScale, Margins, SvgDocument } from "./svg.js";

const WIDTH = 560;
const HEIGHT = 400;
const MARGINS: Margins = { top: 28, right: 30, bottom: 44, left: 64 };

export interface RuntimeSummary {
  sizes: number[];
  meanTimesMs: number[];
  slope: number;
  slopeCi95: number;
}

export function summarizeRuntime(rows: RunRow[]): RuntimeSummary {
  const byN = new Map<number, number[]>();
  for (const row of rows) {
    const bucket = byN.get(row.n) ?? [];
    bucket.push(Math.max(row.wallTimeMs, 0.001));
    byN.set(row.n, bucket);
  }
  if (byN.size < 3) {
    throw new SchemaError(
      `need at least 3 distinct instance sizes to fit a slope, got ${byN.size}`,
    );
  }
  const sizes = [...byN.keys()].sort((a, b) => a - b);
  const meanTimesMs = sizes.map((n) => mean(byN.get(n)!));
  const fit = linearFit(
    sizes.map((n) => Math.log(n)),
    meanTimesMs.map((t) => Math.log(t)),
  );
  return { sizes, meanTimesMs, slope: fit.slope, slopeCi95: fit.slopeCi95 };
}

export function renderRuntime(csvText: string): string {
  const rows = parseRuns(csvText);
  const summary = summarizeRuntime(rows);
  const logX = rows.map((r) => Math.log10(r.n));
  const logY = rows.map((r) => Math.log10(Math.max(r.wallTimeMs, 0.001)));
  const x = new LinearScale(
    Math.min(...logX) - 0.05,
    Math.max(...logX) + 0.05,
    MARGINS.left,
    WIDTH - MARGINS.right,
  );
  const y = new LinearScale(
    Math.min(...logY) - 0.1,
    Math.max(...logY) + 0.1,
    HEIGHT - MARGINS.bottom,
    MARGINS.top,
  );
  const svg = new SvgDocument(WIDTH, HEIGHT);
  svg.text(MARGINS.left, 16, "Wall time scaling (log-log)", 'font-size="13"');
  drawAxes(
    svg,
    x,
    y,
    MARGINS,
    "instance size n (log10)",
    "wall time ms (log10)",
    (v) => v.toFixed(2),
    (v) => v.toFixed(1),
  );
  for (let i = 0; i < rows.length; i++) {
    svg.circle(x.apply(logX[i]), y.apply(logY[i]), 2.0, "#1f77b4");
  }
  const meanPoints: Array<[number, number]> = summary.sizes.map((n, i) => [
    x.apply(Math.log10(n)),
    y.apply(Math.log10(summary.meanTimesMs[i])),
  ]);
  svg.polyline(meanPoints, "#d62728", 'stroke-width="1.5"');
  svg.text(
    MARGINS.left + 8,
    MARGINS.top + 12,
    `fitted slope ${summary.slope.toFixed(2)} (95% CI +-${summary.slopeCi95.toFixed(2)})`,
    'font-size="11" fill="#d62728"',
  );
  return svg.render();
}

export function plotRuntime(csvPath: string, outPath: string): void {
  const svg = renderRuntime(readFileSync(csvPath, "utf8"));
  writeFileSync(outPath, svg);
}
