import { describe, expect, it } from "vitest";
import { execFileSync, spawnSync } from "child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";

const CLI = join(__dirname, "..", "dist", "cli.js");
const golden = (name: string) => join(__dirname, "..", "golden", name);

function run(args: string[]) {
  return spawnSync("node", [CLI, ...args], { encoding: "utf-8" });
}

describe("plots render", () => {
  it("writes byte-identical SVGs across runs", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const out1 = join(dir, "a.svg");
    const out2 = join(dir, "b.svg");
    for (const out of [out1, out2]) {
      const res = run(["render", "--fig", "mousedrop", "--in", golden("bell_mousedrop.csv"), "--out", out]);
      expect(res.status).toBe(0);
    }
    expect(readFileSync(out1, "utf-8")).toBe(readFileSync(out2, "utf-8"));
  });

  it("renders the wavelet figure", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const out = join(dir, "wavelet.svg");
    const res = run(["render", "--fig", "wavelet", "--in", golden("pq_wavelet.csv"), "--out", out]);
    expect(res.status).toBe(0);
    expect(readFileSync(out, "utf-8")).toContain("edge-state wavelet");
  });

  it("exits nonzero on a schema mismatch", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const res = run(["render", "--fig", "wavelet", "--in", golden("bell_mousedrop.csv"), "--out", join(dir, "x.svg")]);
    expect(res.status).toBe(2);
    expect(res.stderr).toContain("column mismatch");
  });

  it("exits nonzero on an unknown figure", () => {
    const res = run(["render", "--fig", "nope", "--in", golden("bell_mousedrop.csv"), "--out", "/tmp/x.svg"]);
    expect(res.status).not.toBe(0);
  });

  it("draws axes only for an empty-row CSV and exits 0", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const csv = join(dir, "empty.csv");
    writeFileSync(csv, "# experiment=bell.mousedrop\nc,w\n");
    const out = join(dir, "empty.svg");
    const res = run(["render", "--fig", "mousedrop", "--in", csv, "--out", out]);
    expect(res.status).toBe(0);
    const svg = readFileSync(out, "utf-8");
    expect(svg).toContain("<rect");
    expect(svg).not.toContain("<path");
  });
});
