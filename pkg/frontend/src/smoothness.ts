/**
 * Smoothness figure: mean final-value ratio (with a std envelope) against
 * the predictor flip rate, one curve per epsilon, a horizontal reference at
 * the 1/2 fallback guarantee, and the theoretical degradation line
 * 1 - eps - 8*error/(delta*|S|) evaluated at the measured mean error.
 */

import { readFileSync, writeFileSync } from "fs";

import { parseRuns, RunRow, SchemaError } from "./csv.js";
import { mean, std } from "./stats.js";
import { drawAxes, fmt, LinearScale, Margins, PALETTE, SvgDocument } from "./svg.js";

const WIDTH = 640;
const HEIGHT = 420;
const MARGINS: Margins = { top: 28, right: 180, bottom: 44, left: 56 };
const FALLBACK_RATIO = 0.5;

interface CurvePoint {
  flipRate: number;
  meanRatio: number;
  stdRatio: number;
  theoretical: number;
}

function groupKey(value: number): string {
  return value.toPrecision(10);
}

export function buildCurves(rows: RunRow[]): Map<number, CurvePoint[]> {
  const withRatio = rows.filter((row) => row.ratio !== null);
  if (withRatio.length === 0) {
    throw new SchemaError("no rows carry a ratio (oracle-free CSV cannot be plotted)");
  }
  const byEpsilon = new Map<string, RunRow[]>();
  for (const row of withRatio) {
    const key = groupKey(row.epsilon);
    const bucket = byEpsilon.get(key) ?? [];
    bucket.push(row);
    byEpsilon.set(key, bucket);
  }
  const curves = new Map<number, CurvePoint[]>();
  for (const bucket of byEpsilon.values()) {
    const epsilon = bucket[0].epsilon;
    const byFlip = new Map<string, RunRow[]>();
    for (const row of bucket) {
      const key = groupKey(row.flipRate);
      const flipBucket = byFlip.get(key) ?? [];
      flipBucket.push(row);
      byFlip.set(key, flipBucket);
    }
    const points: CurvePoint[] = [];
    for (const flipBucket of byFlip.values()) {
      const ratios = flipBucket.map((row) => row.ratio as number);
      const meanError = mean(flipBucket.map((row) => row.predictionError));
      const delta = flipBucket[0].delta;
      const sampleSize = flipBucket[0].sampleSize;
      points.push({
        flipRate: flipBucket[0].flipRate,
        meanRatio: mean(ratios),
        stdRatio: std(ratios),
        theoretical: 1 - epsilon - (8 * meanError) / (delta * sampleSize),
      });
    }
    points.sort((a, b) => a.flipRate - b.flipRate);
    curves.set(epsilon, points);
  }
  return curves;
}

export function renderSmoothness(csvText: string): string {
  const curves = buildCurves(parseRuns(csvText));
  const epsilons = [...curves.keys()].sort((a, b) => a - b);
  const allPoints = epsilons.flatMap((eps) => curves.get(eps)!);
  const flipMin = Math.min(...allPoints.map((p) => p.flipRate));
  const flipMax = Math.max(...allPoints.map((p) => p.flipRate));
  const x = new LinearScale(flipMin, flipMax || 1, MARGINS.left, WIDTH - MARGINS.right);
  const y = new LinearScale(0, 1.05, HEIGHT - MARGINS.bottom, MARGINS.top);

  const svg = new SvgDocument(WIDTH, HEIGHT);
  svg.text(MARGINS.left, 16, "Approximation ratio vs prediction flip rate", 'font-size="13"');
  drawAxes(
    svg,
    x,
    y,
    MARGINS,
    "flip rate",
    "final value / optimum",
    (v) => v.toFixed(2),
    (v) => v.toFixed(2),
  );

  const refY = y.apply(FALLBACK_RATIO);
  svg.line(MARGINS.left, refY, WIDTH - MARGINS.right, refY, "#888", 'stroke-dasharray="6 3"');
  svg.text(WIDTH - MARGINS.right + 6, refY + 3, "fallback 1/2", 'font-size="10" fill="#666"');

  epsilons.forEach((epsilon, idx) => {
    const color = PALETTE[idx % PALETTE.length];
    const points = curves.get(epsilon)!;
    for (const p of points) {
      const px = x.apply(p.flipRate);
      svg.line(px, y.apply(p.meanRatio - p.stdRatio), px, y.apply(p.meanRatio + p.stdRatio), color);
    }
    svg.polyline(
      points.map((p) => [x.apply(p.flipRate), y.apply(p.meanRatio)]),
      color,
      'stroke-width="1.5"',
    );
    for (const p of points) {
      svg.circle(x.apply(p.flipRate), y.apply(p.meanRatio), 2.4, color);
    }
    svg.polyline(
      points.map((p) => [x.apply(p.flipRate), y.apply(Math.max(0, p.theoretical))]),
      color,
      'stroke-width="1" stroke-dasharray="2 3" opacity="0.7"',
    );
    const legendY = MARGINS.top + 14 * idx;
    svg.line(WIDTH - MARGINS.right + 6, legendY, WIDTH - MARGINS.right + 26, legendY, color);
    svg.text(
      WIDTH - MARGINS.right + 30,
      legendY + 3,
      `eps=${fmt(epsilon)} (dashed: 1-eps-8 err/(d|S|))`,
      'font-size="9"',
    );
  });
  return svg.render();
}

export function plotSmoothness(csvPath: string, outPath: string): void {
  const svg = renderSmoothness(readFileSync(csvPath, "utf8"));
  writeFileSync(outPath, svg);
}
