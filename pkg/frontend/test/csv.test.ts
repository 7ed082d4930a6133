import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { CsvFormatError, readMetricRows } from "../src/csv";

const GOLDEN_GAMMA = join(__dirname, "fixtures", "golden_gamma.csv");

function tmpCsv(content: string): string {
  const dir = mkdtempSync(join(tmpdir(), "plotkit-"));
  const path = join(dir, "input.csv");
  writeFileSync(path, content);
  return path;
}

describe("readMetricRows", () => {
  it("parses the golden sweep output", () => {
    const rows = readMetricRows(GOLDEN_GAMMA);
    expect(rows).toHaveLength(36);
    const metrics = new Set(rows.map((r) => r.metricName));
    expect(metrics).toEqual(
      new Set(["phase_err_var", "crlb_alpha_mean", "cos_sim_mean"]),
    );
    for (const row of rows) {
      expect(Number.isFinite(row.gamma)).toBe(true);
      expect(Number.isFinite(row.value)).toBe(true);
      expect(row.m).toBe(32);
      expect(row.t).toBe(3);
    }
  });

  it("rejects an empty CSV", () => {
    const path = tmpCsv("");
    expect(() => readMetricRows(path)).toThrow(CsvFormatError);
    expect(() => readMetricRows(path)).toThrow(/no data rows/);
  });

  it("rejects a header-only CSV", () => {
    const path = tmpCsv(
      "experiment_id,snr_db,gamma,sigma2,n0,phi_deg,m,t,n_mc,seed,metric_name,value\n",
    );
    expect(() => readMetricRows(path)).toThrow(/no data rows/);
  });

  it("names a missing column", () => {
    const path = tmpCsv("experiment_id,snr_db\nfoo,0.0\n");
    expect(() => readMetricRows(path)).toThrow(/missing column 'gamma'/);
  });

  it("parses the infinity sentinel", () => {
    const path = tmpCsv(
      "experiment_id,snr_db,gamma,sigma2,n0,phi_deg,m,t,n_mc,seed,metric_name,value\n" +
        "e,0.0,0.0,1.0,0.1,0.0,4,3,1,0,crlb_alpha_mean,inf\n",
    );
    const rows = readMetricRows(path);
    expect(rows[0].value).toBe(Infinity);
  });

  it("rejects non-numeric values", () => {
    const path = tmpCsv(
      "experiment_id,snr_db,gamma,sigma2,n0,phi_deg,m,t,n_mc,seed,metric_name,value\n" +
        "e,0.0,1.0,1.0,0.1,0.0,4,3,1,0,phase_err_var,oops\n",
    );
    expect(() => readMetricRows(path)).toThrow(/not numeric/);
  });
});
