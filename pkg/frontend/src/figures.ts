/**
 * Figure registry. Each figure names the columns it needs and turns a
 * validated table into an SVG string. An empty table (header only) still
 * draws the frame, just with nothing inside.
 */

import { z } from "zod";
import { Table, SchemaError, requireColumns, column } from "./csv";
import {
  extent,
  frame,
  polyline,
  dots,
  document as svgDocument,
  PALETTE,
  Extent,
} from "./svg";

export interface Figure {
  columns: string[];
  rowSchema: z.ZodTypeAny;
  render: (table: Table) => string;
}

function validateRows(table: Table, fig: Figure): void {
  requireColumns(table, fig.columns);
  for (const row of table.rows) {
    const res = fig.rowSchema.safeParse(row);
    if (!res.success) {
      throw new SchemaError(`row failed validation: ${res.error.issues[0].message}`);
    }
  }
}

function domainOrDefault(values: number[], fallback: Extent): Extent {
  return values.length > 0 ? extent(values) : fallback;
}

/** hidden-variable density w(c): the scalloped |sin| profile */
const mousedrop: Figure = {
  columns: ["c", "w"],
  rowSchema: z.object({ c: z.number(), w: z.number().nonnegative() }),
  render(table) {
    const c = column(table, "c");
    const w = column(table, "w");
    const fr = frame(
      domainOrDefault(c, { min: 0, max: Math.PI / 2 }),
      domainOrDefault(w, { min: 0, max: 0.6 }),
      "c",
      "w(c)",
      "hidden-variable density"
    );
    if (c.length > 0) fr.body.push(polyline(c, w, fr, PALETTE[0]));
    return svgDocument(fr);
  },
};

/** edge-state wavefunction on the position axis */
const wavelet: Figure = {
  columns: ["q", "re", "im", "abs"],
  rowSchema: z.object({
    q: z.number(),
    re: z.number(),
    im: z.number(),
    abs: z.number().nonnegative(),
  }),
  render(table) {
    const q = column(table, "q");
    const re = column(table, "re");
    const im = column(table, "im");
    const ab = column(table, "abs");
    const fr = frame(
      domainOrDefault(q, { min: -10, max: 10 }),
      domainOrDefault([...re, ...im, ...ab], { min: -1, max: 1 }),
      "q",
      "psi(q)",
      "edge-state wavelet"
    );
    if (q.length > 0) {
      fr.body.push(polyline(q, re, fr, PALETTE[0]));
      fr.body.push(polyline(q, im, fr, PALETTE[1]));
      fr.body.push(polyline(q, ab, fr, PALETTE[2]));
    }
    return svgDocument(fr);
  },
};

/** level diagrams for the periodic automata, one column per cycle length */
const spectrum: Figure = {
  columns: ["level_index", "energy", "cycle"],
  rowSchema: z.object({
    level_index: z.number().int().nonnegative(),
    energy: z.number(),
    cycle: z.number().int().nonnegative(),
  }),
  render(table) {
    const cycle = column(table, "cycle");
    const energy = column(table, "energy");
    const fr = frame(
      domainOrDefault(cycle, { min: 0, max: 1 }),
      domainOrDefault(energy, { min: 0, max: 1 }),
      "cycle index",
      "energy level",
      "periodic-automaton spectra"
    );
    fr.body.push(...dots(cycle, energy, fr, PALETTE[0]));
    return svgDocument(fr);
  },
};

/** phase portrait of the integer pair map */
const orbit: Figure = {
  columns: ["t", "Q", "P", "H"],
  rowSchema: z.object({
    t: z.number().int().nonnegative(),
    Q: z.number(),
    P: z.number(),
    H: z.number(),
  }),
  render(table) {
    const Q = column(table, "Q");
    const P = column(table, "P");
    const fr = frame(
      domainOrDefault(Q, { min: -1, max: 1 }),
      domainOrDefault(P, { min: -1, max: 1 }),
      "Q",
      "P",
      "integer pair orbit"
    );
    if (Q.length > 0) {
      fr.body.push(polyline(Q, P, fr, PALETTE[0], 1));
      fr.body.push(...dots(Q, P, fr, PALETTE[1], 2));
    }
    return svgDocument(fr);
  },
};

/** truncated eigenphase reconstructions, one curve per (scheme, R) */
const omegaCurves: Figure = {
  columns: ["omega", "omega_approx", "R", "scheme"],
  rowSchema: z.object({
    omega: z.number(),
    omega_approx: z.number(),
    R: z.number(),
    scheme: z.string(),
  }),
  render(table) {
    const omega = column(table, "omega");
    const approx = column(table, "omega_approx");
    const fr = frame(
      domainOrDefault(omega, { min: 0, max: 2 * Math.PI }),
      domainOrDefault([...omega, ...approx], { min: 0, max: 2 * Math.PI }),
      "omega",
      "reconstruction",
      "truncated eigenphase series"
    );
    // group rows into curves by (scheme, R), drawn in first-seen order
    const groups = new Map<string, { x: number[]; y: number[] }>();
    for (const row of table.rows) {
      const key = `${row.scheme}:${row.R}`;
      let g = groups.get(key);
      if (!g) {
        g = { x: [], y: [] };
        groups.set(key, g);
      }
      g.x.push(row.omega as number);
      g.y.push(row.omega_approx as number);
    }
    let i = 0;
    for (const g of groups.values()) {
      fr.body.push(polyline(g.x, g.y, fr, PALETTE[i % PALETTE.length], 1.2));
      i += 1;
    }
    if (omega.length > 0) {
      fr.body.push(
        polyline(
          [Math.min(...omega), Math.max(...omega)],
          [Math.min(...omega), Math.max(...omega)],
          fr,
          "#aaa",
          0.8
        )
      );
    }
    return svgDocument(fr);
  },
};

export const FIGURES: Record<string, Figure> = {
  mousedrop,
  wavelet,
  spectrum,
  orbit,
  omega_curves: omegaCurves,
};

export function renderFigure(name: string, table: Table): string {
  const fig = FIGURES[name];
  if (!fig) {
    throw new SchemaError(
      `unknown figure "${name}" (have: ${Object.keys(FIGURES).join(", ")})`
    );
  }
  validateRows(table, fig);
  return fig.render(table);
}
