/**
 * Reader for the long-format metric CSV written by the mimocal sweep
 * harness: one metric value per row, keyed by the sweep-point settings.
 */
import { readFileSync } from "node:fs";
import { parse } from "csv-parse/sync";

export interface MetricRow {
  experimentId: string;
  snrDb: number;
  gamma: number;
  sigma2: number;
  n0: number;
  phiDeg: number;
  m: number;
  t: number;
  nMc: number;
  seed: number;
  metricName: string;
  value: number;
}

const REQUIRED_COLUMNS = [
  "experiment_id",
  "snr_db",
  "gamma",
  "sigma2",
  "n0",
  "phi_deg",
  "m",
  "t",
  "n_mc",
  "seed",
  "metric_name",
  "value",
] as const;

export class CsvFormatError extends Error {}

function toNumber(raw: string, column: string, line: number): number {
  // the harness writes "inf"/"nan" via Python repr for unbounded metrics
  if (raw === "inf") return Infinity;
  if (raw === "-inf") return -Infinity;
  if (raw === "nan") return NaN;
  const value = Number(raw);
  if (raw.trim() === "" || Number.isNaN(value)) {
    throw new CsvFormatError(
      `line ${line}: column '${column}' is not numeric: '${raw}'`,
    );
  }
  return value;
}

/** Parse a sweep CSV; throws CsvFormatError on empty or malformed input. */
export function readMetricRows(path: string): MetricRow[] {
  const text = readFileSync(path, "utf8");
  const records: Record<string, string>[] = parse(text, {
    columns: true,
    skip_empty_lines: true,
  });
  if (records.length === 0) {
    throw new CsvFormatError(`${path}: no data rows`);
  }
  const present = Object.keys(records[0]);
  for (const column of REQUIRED_COLUMNS) {
    if (!present.includes(column)) {
      throw new CsvFormatError(`${path}: missing column '${column}'`);
    }
  }
  return records.map((rec, i) => ({
    experimentId: rec.experiment_id,
    snrDb: toNumber(rec.snr_db, "snr_db", i + 2),
    gamma: toNumber(rec.gamma, "gamma", i + 2),
    sigma2: toNumber(rec.sigma2, "sigma2", i + 2),
    n0: toNumber(rec.n0, "n0", i + 2),
    phiDeg: toNumber(rec.phi_deg, "phi_deg", i + 2),
    m: toNumber(rec.m, "m", i + 2),
    t: toNumber(rec.t, "t", i + 2),
    nMc: toNumber(rec.n_mc, "n_mc", i + 2),
    seed: toNumber(rec.seed, "seed", i + 2),
    metricName: rec.metric_name,
    value: toNumber(rec.value, "value", i + 2),
  }));
}
