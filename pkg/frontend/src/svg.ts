/**
 * Minimal deterministic SVG line-chart renderer. Fixed canvas, fixed style,
 * no timestamps or random ids, so identical figures are identical bytes.
 */
import { Curve, Figure, Point } from "./figures.js";

const WIDTH = 640;
const HEIGHT = 440;
const MARGIN = { left: 70, right: 170, top: 45, bottom: 55 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export class RenderError extends Error {}

/** Short deterministic number label (no locale, no exponent surprises). */
function fmt(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e4 || abs < 1e-3) return value.toExponential(1);
  return String(parseFloat(value.toPrecision(4)));
}

function coord(value: number): string {
  return value.toFixed(2);
}

interface Scale {
  min: number;
  max: number;
  map(value: number): number;
}

function linearScale(min: number, max: number, lo: number, hi: number): Scale {
  const span = max > min ? max - min : 1;
  return { min, max, map: (v) => lo + ((v - min) / span) * (hi - lo) };
}

function logScale(min: number, max: number, lo: number, hi: number): Scale {
  const lmin = Math.log10(min);
  const lmax = Math.log10(max);
  const span = lmax > lmin ? lmax - lmin : 1;
  return {
    min,
    max,
    map: (v) => lo + ((Math.log10(v) - lmin) / span) * (hi - lo),
  };
}

function usable(point: Point, logY: boolean): boolean {
  return (
    Number.isFinite(point.x) &&
    Number.isFinite(point.y) &&
    (!logY || point.y > 0)
  );
}

function ticksLinear(min: number, max: number, count: number): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(min + ((max - min) * i) / (count - 1));
  }
  return out;
}

function ticksLog(min: number, max: number): number[] {
  const out: number[] = [];
  for (
    let e = Math.floor(Math.log10(min));
    e <= Math.ceil(Math.log10(max));
    e++
  ) {
    out.push(Math.pow(10, e));
  }
  return out;
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function curveColor(curves: Curve[], index: number): string {
  // dashed (reference) curves reuse the color of their solid partner so a
  // bound visually pairs with its estimator
  const curve = curves[index];
  const family = curves.filter((c) => c.dashed === curve.dashed);
  return PALETTE[family.indexOf(curve) % PALETTE.length];
}

export function renderSvg(figure: Figure): string {
  const points = figure.curves.flatMap((c) =>
    c.points.filter((p) => usable(p, figure.logY)),
  );
  if (points.length === 0) {
    throw new RenderError("no plottable points (all values non-finite)");
  }
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xScale = linearScale(
    Math.min(...xs),
    Math.max(...xs),
    MARGIN.left,
    MARGIN.left + PLOT_W,
  );
  const yLo = MARGIN.top + PLOT_H;
  const yHi = MARGIN.top;
  const yScale = figure.logY
    ? logScale(Math.min(...ys), Math.max(...ys), yLo, yHi)
    : linearScale(Math.min(...ys), Math.max(...ys), yLo, yHi);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">${escapeXml(figure.title)}</text>`,
  );

  // axes
  parts.push(
    `<line x1="${MARGIN.left}" y1="${yLo}" x2="${MARGIN.left + PLOT_W}" y2="${yLo}" stroke="#000000"/>`,
  );
  parts.push(
    `<line x1="${MARGIN.left}" y1="${yLo}" x2="${MARGIN.left}" y2="${yHi}" stroke="#000000"/>`,
  );

  for (const tick of ticksLinear(xScale.min, xScale.max, 5)) {
    const x = coord(xScale.map(tick));
    parts.push(
      `<line x1="${x}" y1="${yLo}" x2="${x}" y2="${yLo + 5}" stroke="#000000"/>`,
    );
    parts.push(
      `<text x="${x}" y="${yLo + 20}" text-anchor="middle" font-size="11">${fmt(tick)}</text>`,
    );
  }
  const yTicks = figure.logY
    ? ticksLog(yScale.min, yScale.max)
    : ticksLinear(yScale.min, yScale.max, 5);
  for (const tick of yTicks) {
    if (figure.logY && (tick < yScale.min || tick > yScale.max)) continue;
    const y = coord(yScale.map(tick));
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${y}" x2="${MARGIN.left}" y2="${y}" stroke="#000000"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 9}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="11">${fmt(tick)}</text>`,
    );
  }

  parts.push(
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="12">${escapeXml(figure.xLabel)}</text>`,
  );
  parts.push(
    `<text x="20" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 20 ${MARGIN.top + PLOT_H / 2})">${escapeXml(figure.yLabel)}</text>`,
  );

  // curves
  figure.curves.forEach((curve, i) => {
    const kept = curve.points.filter((p) => usable(p, figure.logY));
    if (kept.length === 0) return;
    const path = kept
      .map((p) => `${coord(xScale.map(p.x))},${coord(yScale.map(p.y))}`)
      .join(" ");
    const dash = curve.dashed ? ' stroke-dasharray="6 4"' : "";
    const color = curveColor(figure.curves, i);
    parts.push(
      `<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.8"${dash}/>`,
    );
    for (const p of kept) {
      parts.push(
        `<circle cx="${coord(xScale.map(p.x))}" cy="${coord(yScale.map(p.y))}" r="2.4" fill="${color}"/>`,
      );
    }
  });

  // legend
  figure.curves.forEach((curve, i) => {
    const y = MARGIN.top + 8 + i * 18;
    const x = MARGIN.left + PLOT_W + 14;
    const dash = curve.dashed ? ' stroke-dasharray="6 4"' : "";
    const color = curveColor(figure.curves, i);
    parts.push(
      `<line x1="${x}" y1="${y}" x2="${x + 22}" y2="${y}" stroke="${color}" stroke-width="1.8"${dash}/>`,
    );
    parts.push(
      `<text x="${x + 28}" y="${y}" dominant-baseline="middle" font-size="11">${escapeXml(curve.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
