// Parsing and validation of the sweep CSV emitted by the simulation harness.

export const SWEEP_HEADER =
  "scheme,K,Q,M,runs,net_sum_capacity_mean_bps_hz,net_sum_capacity_std_bps_hz," +
  "fairness_mean,fairness_std";

export interface SweepRow {
  scheme: string;
  K: number;
  Q: number;
  M: number;
  runs: number;
  capacityMean: number;
  capacityStd: number;
  fairnessMean: number;
  fairnessStd: number;
}

export class InputError extends Error {}

function parseNumber(cell: string, column: string, line: number): number {
  const value = Number(cell);
  if (cell.trim() === "" || Number.isNaN(value)) {
    throw new InputError(`column '${column}' is not numeric at line ${line}: '${cell}'`);
  }
  return value;
}

/** Parse the harness sweep schema; header and column count must match exactly. */
export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new InputError("empty CSV");
  }
  const expected = SWEEP_HEADER.split(",");
  const header = lines[0].split(",");
  const missing = expected.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new InputError(`missing column(s): ${missing.join(", ")}`);
  }
  if (header.length !== expected.length || header.some((c, i) => c !== expected[i])) {
    throw new InputError(
      `unexpected header: got '${lines[0]}', expected '${SWEEP_HEADER}'`);
  }

  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = i + 1; // 1-based line number in the file
    const cells = lines[i].split(",");
    if (cells.length !== expected.length) {
      throw new InputError(`expected ${expected.length} cells at line ${line}, got ${cells.length}`);
    }
    const row: SweepRow = {
      scheme: cells[0],
      K: parseNumber(cells[1], "K", line),
      Q: parseNumber(cells[2], "Q", line),
      M: parseNumber(cells[3], "M", line),
      runs: parseNumber(cells[4], "runs", line),
      capacityMean: parseNumber(cells[5], "net_sum_capacity_mean_bps_hz", line),
      capacityStd: parseNumber(cells[6], "net_sum_capacity_std_bps_hz", line),
      fairnessMean: parseNumber(cells[7], "fairness_mean", line),
      fairnessStd: parseNumber(cells[8], "fairness_std", line),
    };
    if (row.fairnessMean < 0 || row.fairnessMean > 1) {
      throw new InputError(
        `fairness ${row.fairnessMean} outside [0, 1] at line ${line}`);
    }
    rows.push(row);
  }
  return rows;
}
