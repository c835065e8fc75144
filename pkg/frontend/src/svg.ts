/**
 * Tiny deterministic SVG builder.
 *
 * No timestamps, no random ids, fixed number formatting, so rendering the
 * same table twice gives byte-identical files.
 */

export interface Extent {
  min: number;
  max: number;
}

export function extent(values: number[], pad = 0.05): Extent {
  if (values.length === 0) return { min: 0, max: 1 };
  let min = Math.min(...values);
  let max = Math.max(...values);
  if (min === max) {
    min -= 0.5;
    max += 0.5;
  }
  const span = max - min;
  return { min: min - pad * span, max: max + pad * span };
}

export type Scale = (v: number) => number;

export function linearScale(domain: Extent, range: [number, number]): Scale {
  const d = domain.max - domain.min;
  return (v) => range[0] + ((v - domain.min) / d) * (range[1] - range[0]);
}

/** fixed-point with trailing zeros trimmed, so output is reproducible */
export function fmt(v: number): string {
  if (Object.is(v, -0)) v = 0;
  return v.toFixed(3).replace(/\.?0+$/, "") || "0";
}

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN = { left: 56, right: 16, top: 20, bottom: 44 };

export interface Frame {
  x: Scale;
  y: Scale;
  body: string[];
}

/** evenly spaced ticks, endpoints included */
function ticks(domain: Extent, n: number): number[] {
  const out: number[] = [];
  for (let i = 0; i <= n; i++) {
    out.push(domain.min + ((domain.max - domain.min) * i) / n);
  }
  return out;
}

export function frame(
  xDomain: Extent,
  yDomain: Extent,
  xLabel: string,
  yLabel: string,
  title: string
): Frame {
  const x = linearScale(xDomain, [MARGIN.left, WIDTH - MARGIN.right]);
  const y = linearScale(yDomain, [HEIGHT - MARGIN.bottom, MARGIN.top]);
  const body: string[] = [];
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  body.push(
    `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" ` +
      `fill="none" stroke="#333" stroke-width="1"/>`
  );
  for (const t of ticks(xDomain, 5)) {
    const px = fmt(x(t));
    body.push(
      `<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" stroke="#333"/>`,
      `<text x="${px}" y="${y0 + 18}" text-anchor="middle" font-size="11">${fmt(t)}</text>`
    );
  }
  for (const t of ticks(yDomain, 5)) {
    const py = fmt(y(t));
    body.push(
      `<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" stroke="#333"/>`,
      `<text x="${x0 - 8}" y="${py}" text-anchor="end" dominant-baseline="middle" font-size="11">${fmt(t)}</text>`
    );
  }
  body.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 8}" text-anchor="middle" font-size="12">${xLabel}</text>`,
    `<text x="14" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="12" ` +
      `transform="rotate(-90 14 ${(y0 + y1) / 2})">${yLabel}</text>`,
    `<text x="${(x0 + x1) / 2}" y="14" text-anchor="middle" font-size="13">${title}</text>`
  );
  return { x, y, body };
}

export function pathFrom(xs: number[], ys: number[], fr: Frame): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    const cmd = i === 0 ? "M" : "L";
    parts.push(`${cmd}${fmt(fr.x(xs[i]))},${fmt(fr.y(ys[i]))}`);
  }
  return parts.join(" ");
}

export function polyline(
  xs: number[],
  ys: number[],
  fr: Frame,
  color: string,
  width = 1.5
): string {
  return `<path d="${pathFrom(xs, ys, fr)}" fill="none" stroke="${color}" stroke-width="${width}"/>`;
}

export function dots(
  xs: number[],
  ys: number[],
  fr: Frame,
  color: string,
  r = 2.5
): string[] {
  const out: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    out.push(
      `<circle cx="${fmt(fr.x(xs[i]))}" cy="${fmt(fr.y(ys[i]))}" r="${r}" fill="${color}"/>`
    );
  }
  return out;
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

export function document(fr: Frame): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">\n` +
    fr.body.join("\n") +
    "\n</svg>\n"
  );
}
