#!/usr/bin/env node
/**
 * plots render --fig <name> --in <csv> --out <svg>
 *
 * Exit codes: 0 on success (including an empty table, which still gets its
 * axes), 2 on a schema or usage problem.
 */

import { mkdirSync, writeFileSync } from "fs";
import { dirname } from "path";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { loadTable, SchemaError } from "./csv";
import { FIGURES, renderFigure } from "./figures";

export function main(argv: string[]): number {
  const args = yargs(argv)
    .command("render", "draw a figure from an experiment CSV", (y) =>
      y
        .option("fig", {
          type: "string",
          demandOption: true,
          choices: Object.keys(FIGURES),
          describe: "figure name",
        })
        .option("in", {
          type: "string",
          demandOption: true,
          describe: "input CSV path",
        })
        .option("out", {
          type: "string",
          demandOption: true,
          describe: "output SVG path",
        })
    )
    .demandCommand(1)
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      throw err ?? new SchemaError(msg);
    })
    .parseSync();

  const table = loadTable(args.in as string);
  const svg = renderFigure(args.fig as string, table);
  const out = args.out as string;
  mkdirSync(dirname(out), { recursive: true });
  writeFileSync(out, svg);
  return 0;
}

if (require.main === module) {
  try {
    process.exit(main(hideBin(process.argv)));
  } catch (err) {
    const msg = err instanceof Error ? err.message : String(err);
    process.stderr.write(`error: ${msg}\n`);
    process.exit(2);
  }
}
