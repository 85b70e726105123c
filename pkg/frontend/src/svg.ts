/**
 * Minimal deterministic SVG scene builder.
 *
 * Every coordinate is formatted with a fixed precision and elements are
 * emitted in insertion order, so identical inputs produce byte-identical
 * files (no timestamps, no randomness).
 */

export interface Margins {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const fmt = (value: number): string => {
  const s = value.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
};

export class LinearScale {
  constructor(
    readonly domainMin: number,
    readonly domainMax: number,
    readonly rangeMin: number,
    readonly rangeMax: number,
  ) {}

  apply(value: number): number {
    const span = this.domainMax - this.domainMin;
    const t = span === 0 ? 0.5 : (value - this.domainMin) / span;
    return this.rangeMin + t * (this.rangeMax - this.rangeMin);
  }

  ticks(count: number): number[] {
    const out: number[] = [];
    for (let i = 0; i <= count; i++) {
      out.push(this.domainMin + ((this.domainMax - this.domainMin) * i) / count);
    }
    return out;
  }
}

export class SvgDocument {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    );
    this.parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, opts = ""): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" ${opts}/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, opts = ""): void {
    const path = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline points="${path}" fill="none" stroke="${stroke}" ${opts}/>`);
  }

  circle(cx: number, cy: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, content: string, opts = ""): void {
    this.parts.push(`<text x="${fmt(x)}" y="${fmt(y)}" ${opts}>${escapeXml(content)}</text>`);
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function drawAxes(
  svg: SvgDocument,
  x: LinearScale,
  y: LinearScale,
  margins: Margins,
  xLabel: string,
  yLabel: string,
  xTickFormat: (v: number) => string,
  yTickFormat: (v: number) => string,
): void {
  const plotBottom = svg.height - margins.bottom;
  svg.line(margins.left, plotBottom, svg.width - margins.right, plotBottom, "#222");
  svg.line(margins.left, margins.top, margins.left, plotBottom, "#222");
  for (const tick of x.ticks(5)) {
    const px = x.apply(tick);
    svg.line(px, plotBottom, px, plotBottom + 4, "#222");
    svg.text(px, plotBottom + 16, xTickFormat(tick), 'font-size="10" text-anchor="middle"');
  }
  for (const tick of y.ticks(5)) {
    const py = y.apply(tick);
    svg.line(margins.left - 4, py, margins.left, py, "#222");
    svg.text(margins.left - 7, py + 3, yTickFormat(tick), 'font-size="10" text-anchor="end"');
  }
  svg.text(
    (margins.left + svg.width - margins.right) / 2,
    svg.height - 6,
    xLabel,
    'font-size="11" text-anchor="middle"',
  );
  svg.text(
    12,
    (margins.top + plotBottom) / 2,
    yLabel,
    `font-size="11" text-anchor="middle" transform="rotate(-90 12 ${fmt(
      (margins.top + plotBottom) / 2,
    )})"`,
  );
}

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
