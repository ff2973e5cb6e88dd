#!/usr/bin/env node
/**
 * plots contour --in dump.csv --var psi --levels 20 --range -30270:15944 --out psi.svg
 * plots series  --glob 'tracer_day*.csv' --var C [--levels 12] [--out-dir DIR]
 */

import { writeFileSync } from "node:fs";
import { basename, extname, join } from "node:path";

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { DumpError, readDump } from "./io.js";
import { parseRange } from "./levels.js";
import { renderContours } from "./render.js";
import { expandGlob, renderSeries } from "./series.js";

function outName(inputPath: string, outDir: string): string {
  const stem = basename(inputPath, extname(inputPath));
  return join(outDir, `${stem}.svg`);
}

/** Exit with a clean one-line diagnostic on expected input errors. */
function runSafe(body: () => void): void {
  try {
    body();
  } catch (err) {
    if (err instanceof DumpError || err instanceof RangeError) {
      console.error(err.message);
      process.exit(1);
    }
    throw err;
  }
}

/** Join `--range -30270:15944` so yargs does not read `-3...` as flags. */
function joinRangeFlag(argv: string[]): string[] {
  const out: string[] = [];
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--range" && i + 1 < argv.length) {
      out.push(`--range=${argv[i + 1]}`);
      i++;
    } else {
      out.push(argv[i]);
    }
  }
  return out;
}

await yargs(joinRangeFlag(hideBin(process.argv)))
  .scriptName("plots")
  .command(
    "contour",
    "Render one dump variable as a contour image",
    (y) =>
      y
        .option("in", { type: "string", demandOption: true })
        .option("var", { type: "string", demandOption: true })
        .option("levels", { type: "number", default: 30 })
        .option("range", {
          type: "string",
          describe: "explicit 'min:max' instead of the field range",
        })
        .option("out", { type: "string", demandOption: true }),
    (argv) =>
      runSafe(() => {
        const dump = readDump(argv.in);
        const range = argv.range ? parseRange(argv.range) : undefined;
        const res = renderContours(dump, argv.var, argv.levels, range);
        writeFileSync(argv.out, res.svg);
        const note = res.degenerate
          ? "constant field, flat image"
          : `levels [${res.levels[0]}, ${res.levels[res.levels.length - 1]}]`;
        console.log(`${argv.out}: ${note}`);
      }),
  )
  .command(
    "series",
    "Render a dump sequence with a shared contour scale",
    (y) =>
      y
        .option("glob", { type: "string", demandOption: true })
        .option("var", { type: "string", demandOption: true })
        .option("levels", { type: "number", default: 12 })
        .option("out-dir", { type: "string", default: "." }),
    (argv) =>
      runSafe(() => {
        const paths = expandGlob(argv.glob);
        const items = renderSeries(paths, argv.var, argv.levels);
        for (const item of items) {
          const out = outName(item.path, argv.outDir);
          writeFileSync(out, item.result.svg);
          console.log(out);
        }
        const r = items[0].result.range;
        console.log(
          `${items.length} images, shared scale [${r.min}, ${r.max}]`,
        );
      }),
  )
  .demandCommand(1)
  .strict()
  .fail((msg, err) => {
    console.error(err ? err.message : msg);
    process.exit(1);
  })
  .parseAsync();
