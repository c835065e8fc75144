/**
 * CSV loading for the experiment outputs.
 *
 * Files start with `# key=value` provenance lines, then a header row and
 * data columns. We keep the provenance, strip the comments, and validate
 * the column set and row shapes against the figure's schema before
 * anything is drawn.
 */

import { readFileSync } from "fs";
import Papa from "papaparse";

export type Cell = number | string;

export interface Table {
  /** provenance entries from the leading # lines */
  meta: Record<string, string>;
  columns: string[];
  rows: Record<string, Cell>[];
}

export class SchemaError extends Error {}

export function parseTable(text: string): Table {
  const meta: Record<string, string> = {};
  const body: string[] = [];
  for (const line of text.split(/\r?\n/)) {
    if (line.startsWith("#")) {
      const m = line.slice(1).trim().match(/^([^=]+)=(.*)$/);
      if (m) meta[m[1].trim()] = m[2].trim();
    } else if (line.trim().length > 0) {
      body.push(line);
    }
  }
  if (body.length === 0) throw new SchemaError("no header row in CSV");
  const parsed = Papa.parse<Record<string, string>>(body.join("\n"), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`CSV parse error: ${parsed.errors[0].message}`);
  }
  const columns = (parsed.meta.fields ?? []).map((f) => f.trim());
  const rows = parsed.data.map((raw) => {
    const row: Record<string, Cell> = {};
    for (const col of columns) {
      const text = raw[col] ?? "";
      const v = Number(text);
      row[col] = text.trim() !== "" && Number.isFinite(v) ? v : text;
    }
    return row;
  });
  return { meta, columns, rows };
}

export function loadTable(path: string): Table {
  return parseTable(readFileSync(path, "utf-8"));
}

/** Insist that exactly the expected columns are present (order-insensitive). */
export function requireColumns(table: Table, expected: string[]): void {
  const have = [...table.columns].sort().join(",");
  const want = [...expected].sort().join(",");
  if (have !== want) {
    throw new SchemaError(
      `column mismatch: file has [${table.columns.join(", ")}], ` +
        `figure needs [${expected.join(", ")}]`
    );
  }
}

export function column(table: Table, name: string): number[] {
  return table.rows.map((r) => {
    const v = r[name];
    if (typeof v !== "number") {
      throw new SchemaError(`non-numeric value in column "${name}": ${v}`);
    }
    return v;
  });
}
