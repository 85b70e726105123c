/** Small numeric helpers shared by the plots. */

export function mean(values: number[]): number {
  return values.reduce((a, b) => a + b, 0) / values.length;
}

export function std(values: number[]): number {
  if (values.length < 2) {
    return 0;
  }
  const m = mean(values);
  const ss = values.reduce((acc, v) => acc + (v - m) * (v - m), 0);
  return Math.sqrt(ss / (values.length - 1));
}

export interface Fit {
  slope: number;
  intercept: number;
  slopeCi95: number;
}

/** Ordinary least squares with a 95% CI on the slope (normal approximation). */
export function linearFit(xs: number[], ys: number[]): Fit {
  const n = xs.length;
  const mx = mean(xs);
  const my = mean(ys);
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < n; i++) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const slope = sxy / sxx;
  const intercept = my - slope * mx;
  let sse = 0;
  for (let i = 0; i < n; i++) {
    const residual = ys[i] - (intercept + slope * xs[i]);
    sse += residual * residual;
  }
  const dof = Math.max(1, n - 2);
  const slopeStderr = Math.sqrt(sse / dof / sxx);
  return { slope, intercept, slopeCi95: 1.96 * slopeStderr };
}
