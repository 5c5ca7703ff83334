/**
 * Readers for the simulator's CSV artifacts.
 *
 * Every file starts with `# key=value` metadata lines (schema version
 * included), then a header row and data rows. Loading refuses files whose
 * schema version is not one this renderer understands.
 */

import { readFileSync, existsSync } from "fs";

export interface CsvTable {
  metadata: Record<string, string>;
  header: string[];
  rows: string[][];
}

export const SUPPORTED_SCHEMAS = new Set([
  "timeseries-v1",
  "wigner-v1",
  "spectrum-v1",
  "map-v1",
  "hinton-v1",
  "matrix-elements-v1",
  "ipr-curves-v1",
  "boundary-v1",
  "plaquette-v1",
  "sweep-v1",
]);

export function readCsv(path: string): CsvTable {
  if (!existsSync(path)) {
    throw new Error(`missing input: ${path}`);
  }
  const metadata: Record<string, string> = {};
  let header: string[] = [];
  const rows: string[][] = [];
  for (const line of readFileSync(path, "utf-8").split("\n")) {
    if (line.length === 0) continue;
    if (line.startsWith("# ")) {
      const eq = line.indexOf("=");
      metadata[line.slice(2, eq)] = line.slice(eq + 1);
    } else if (header.length === 0) {
      header = line.split(",");
    } else {
      rows.push(line.split(","));
    }
  }
  const schema = metadata["schema"];
  if (!schema || !SUPPORTED_SCHEMAS.has(schema)) {
    throw new Error(`unsupported schema version ${schema ?? "(none)"} in ${path}`);
  }
  return { metadata, header, rows };
}

export function column(table: CsvTable, name: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`missing channel column: ${name} (have ${table.header.join(", ")})`);
  }
  return idx;
}

export function numericColumn(table: CsvTable, name: string): number[] {
  const idx = column(table, name);
  return table.rows.map((r) => Number(r[idx]));
}

/** Long-format time series: channel name -> { t, value } arrays. */
export function channels(table: CsvTable): Map<string, { t: number[]; v: number[] }> {
  const tIdx = column(table, "t");
  const cIdx = column(table, "channel");
  const vIdx = column(table, "value");
  const out = new Map<string, { t: number[]; v: number[] }>();
  for (const row of table.rows) {
    const name = row[cIdx];
    let series = out.get(name);
    if (!series) {
      series = { t: [], v: [] };
      out.set(name, series);
    }
    series.t.push(Number(row[tIdx]));
    series.v.push(Number(row[vIdx]));
  }
  return out;
}

export interface GridField {
  xs: number[];
  ys: number[];
  values: number[][]; // [yIndex][xIndex]
}

/** Pivot (x, y, value) rows into a dense grid; axes sorted ascending. */
export function pivotGrid(
  table: CsvTable,
  xName: string,
  yName: string,
  vName: string,
): GridField {
  const xIdx = column(table, xName);
  const yIdx = column(table, yName);
  const vIdx = column(table, vName);
  const xs = uniqueSorted(table.rows.map((r) => Number(r[xIdx])));
  const ys = uniqueSorted(table.rows.map((r) => Number(r[yIdx])));
  const xPos = new Map(xs.map((x, i) => [x, i]));
  const yPos = new Map(ys.map((y, i) => [y, i]));
  const values = ys.map(() => xs.map(() => NaN));
  for (const row of table.rows) {
    const xi = xPos.get(Number(row[xIdx]))!;
    const yi = yPos.get(Number(row[yIdx]))!;
    values[yi][xi] = Number(row[vIdx]);
  }
  return { xs, ys, values };
}

/** Wigner files hold one field per site; filter then pivot. */
export function wignerField(table: CsvTable, site: number): GridField {
  const sIdx = column(table, "site");
  const filtered: CsvTable = {
    metadata: table.metadata,
    header: table.header,
    rows: table.rows.filter((r) => Number(r[sIdx]) === site),
  };
  if (filtered.rows.length === 0) {
    throw new Error(`no rows for site ${site}`);
  }
  return pivotGrid(filtered, "x", "p", "w");
}

export function wignerSites(table: CsvTable): number[] {
  const sIdx = column(table, "site");
  return uniqueSorted(table.rows.map((r) => Number(r[sIdx])));
}

function uniqueSorted(values: number[]): number[] {
  return Array.from(new Set(values)).sort((a, b) => a - b);
}
