import { describe, expect, it } from "vitest";
import { readFileSync } from "fs";
import { join } from "path";
import { loadTable, parseTable, column, SchemaError } from "../src/csv";
import { renderFigure } from "../src/figures";

const golden = (name: string) => join(__dirname, "..", "golden", name);

describe("csv parsing", () => {
  it("keeps provenance and strips comment lines", () => {
    const t = loadTable(golden("bell_mousedrop.csv"));
    expect(t.meta.experiment).toBe("bell.mousedrop");
    expect(t.columns).toEqual(["c", "w"]);
    expect(t.rows.length).toBeGreaterThan(700);
  });

  it("coerces numeric cells and leaves labels alone", () => {
    const t = parseTable("# experiment=x\na,s\n1.5,plain\n");
    expect(t.rows[0]).toEqual({ a: 1.5, s: "plain" });
    expect(() => column(t, "s")).toThrow(SchemaError);
  });

  it("rejects a file with no header", () => {
    expect(() => parseTable("# only=comments\n")).toThrow(SchemaError);
  });
});

describe("figure rendering", () => {
  it("is deterministic on the golden mousedrop data", () => {
    const t = loadTable(golden("bell_mousedrop.csv"));
    const a = renderFigure("mousedrop", t);
    const b = renderFigure("mousedrop", loadTable(golden("bell_mousedrop.csv")));
    expect(a).toBe(b);
    expect(a.startsWith("<svg")).toBe(true);
    expect(a).not.toMatch(/\d{4}-\d{2}-\d{2}/); // no dates baked in
  });

  it("mousedrop data follows the half-abs-sine scallop", () => {
    const t = loadTable(golden("bell_mousedrop.csv"));
    const c = column(t, "c");
    const w = column(t, "w");
    for (let i = 0; i < c.length; i += 37) {
      expect(w[i]).toBeCloseTo(0.5 * Math.abs(Math.sin(4 * c[i])), 6);
    }
  });

  it("wavelet data is a block with decaying tails", () => {
    const t = loadTable(golden("pq_wavelet.csv"));
    const q = column(t, "q");
    const ab = column(t, "abs");
    const re = column(t, "re");
    const im = column(t, "im");
    for (let i = 0; i < q.length; i++) {
      expect(ab[i]).toBeCloseTo(Math.hypot(re[i], im[i]), 9);
    }
    const inside = ab.filter((_, i) => Math.abs(q[i]) < 0.4);
    const far = ab.filter((_, i) => Math.abs(q[i]) > 6);
    const avg = (xs: number[]) => xs.reduce((a, b) => a + b, 0) / xs.length;
    expect(avg(inside)).toBeGreaterThan(0.5);
    expect(avg(far)).toBeLessThan(0.1);
    const svg = renderFigure("wavelet", t);
    expect(svg).toBe(renderFigure("wavelet", t));
  });

  it("renders the remaining golden figures", () => {
    const pairs: [string, string][] = [
      ["spectrum", "cogwheel_spectrum.csv"],
      ["orbit", "dham_orbit.csv"],
      ["omega_curves", "hilbert_omega.csv"],
    ];
    for (const [fig, file] of pairs) {
      const svg = renderFigure(fig, loadTable(golden(file)));
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg.endsWith("</svg>\n")).toBe(true);
    }
  });

  it("draws one curve per (scheme, R) pair", () => {
    const t = loadTable(golden("hilbert_omega.csv"));
    const keys = new Set(t.rows.map((r) => `${r.scheme}:${r.R}`));
    const svg = renderFigure("omega_curves", t);
    const paths = svg.match(/<path /g) ?? [];
    // curves plus the grey reference diagonal
    expect(paths.length).toBe(keys.size + 1);
  });

  it("rejects a table whose columns do not match the figure", () => {
    const t = loadTable(golden("pq_wavelet.csv"));
    expect(() => renderFigure("mousedrop", t)).toThrow(SchemaError);
  });

  it("rejects rows that break the figure's value constraints", () => {
    const t = parseTable("c,w\n0.1,-0.5\n");
    expect(() => renderFigure("mousedrop", t)).toThrow(SchemaError);
  });

  it("rejects unknown figure names", () => {
    const t = parseTable("c,w\n0,0\n");
    expect(() => renderFigure("histogram", t)).toThrow(SchemaError);
  });

  it("renders an axes-only figure from a header-only table", () => {
    const t = parseTable("c,w\n");
    const svg = renderFigure("mousedrop", t);
    expect(svg).toContain("<rect");
    expect(svg).not.toContain("<path");
  });
});
