/**
 * Figure assembly: turns long-format metric rows into labeled curves for
 * the three standard figure kinds. No numerical work happens here beyond
 * grouping and sorting; every value comes from the CSV.
 */
import { MetricRow } from "./csv.js";

export type FigureKind =
  | "phase_var_vs_gamma"
  | "cos_sim_vs_gamma"
  | "aoa_comparison";

export const FIGURE_KINDS: FigureKind[] = [
  "phase_var_vs_gamma",
  "cos_sim_vs_gamma",
  "aoa_comparison",
];

export interface FigureSpec {
  figureKind: FigureKind;
  inputCsv: string;
  outputSvg: string;
}

export interface Point {
  x: number;
  y: number;
}

export interface Curve {
  label: string;
  dashed: boolean;
  points: Point[];
}

export interface Figure {
  title: string;
  xLabel: string;
  yLabel: string;
  logY: boolean;
  curves: Curve[];
}

export class FigureDataError extends Error {}

/** Metrics each figure kind needs in the CSV. */
export const REQUIRED_METRICS: Record<FigureKind, string[]> = {
  phase_var_vs_gamma: ["phase_err_var", "crlb_alpha_mean"],
  cos_sim_vs_gamma: ["cos_sim_mean"],
  aoa_comparison: ["phase_err_var"],
};

function requireMetric(rows: MetricRow[], metric: string): MetricRow[] {
  const hits = rows.filter((r) => r.metricName === metric);
  if (hits.length === 0) {
    throw new FigureDataError(`CSV contains no '${metric}' rows`);
  }
  return hits;
}

function sortedUnique(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

/** One curve per grouping value, points ordered by gamma. */
function curvesBy(
  rows: MetricRow[],
  groupKey: (r: MetricRow) => number,
  label: (key: number) => string,
  dashed: boolean,
): Curve[] {
  const keys = sortedUnique(rows.map(groupKey));
  return keys.map((key) => {
    const points = rows
      .filter((r) => groupKey(r) === key)
      .map((r) => ({ x: r.gamma, y: r.value }))
      .sort((a, b) => a.x - b.x);
    return { label: label(key), dashed, points };
  });
}

export function buildFigure(kind: FigureKind, rows: MetricRow[]): Figure {
  switch (kind) {
    case "phase_var_vs_gamma": {
      const est = curvesBy(
        requireMetric(rows, "phase_err_var"),
        (r) => r.snrDb,
        (snr) => `${snr} dB`,
        false,
      );
      const crlb = curvesBy(
        requireMetric(rows, "crlb_alpha_mean"),
        (r) => r.snrDb,
        (snr) => `CRLB ${snr} dB`,
        true,
      );
      return {
        title: "Phase-error variance vs LOS amplitude",
        xLabel: "gamma",
        yLabel: "phase error variance [rad^2]",
        logY: true,
        curves: [...est, ...crlb],
      };
    }
    case "cos_sim_vs_gamma":
      return {
        title: "Amplitude cosine similarity vs LOS amplitude",
        xLabel: "gamma",
        yLabel: "cosine similarity [rad]",
        logY: false,
        curves: curvesBy(
          requireMetric(rows, "cos_sim_mean"),
          (r) => r.snrDb,
          (snr) => `${snr} dB`,
          false,
        ),
      };
    case "aoa_comparison":
      return {
        title: "Phase-error variance vs LOS amplitude, per AOA",
        xLabel: "gamma",
        yLabel: "phase error variance [rad^2]",
        logY: true,
        curves: curvesBy(
          requireMetric(rows, "phase_err_var"),
          (r) => r.phiDeg,
          (phi) => `phi = ${phi} deg`,
          false,
        ),
      };
  }
}
