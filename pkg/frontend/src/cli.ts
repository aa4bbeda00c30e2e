#!/usr/bin/env node
/** CLI: plotkit plot --in results.csv --out figure.svg */

import fs from "node:fs";
import { pathToFileURL } from "node:url";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { CsvFormatError, parseResults } from "./csv.js";
import { DEFAULT_SPEC, renderFigure } from "./figure.js";

export function runPlot(inPath: string, outPath: string, scale: number): number {
  let text: string;
  try {
    text = fs.readFileSync(inPath, "utf8");
  } catch (err) {
    console.error(`error: cannot read ${inPath}: ${(err as Error).message}`);
    return 1;
  }
  let svg: string;
  try {
    const rows = parseResults(text);
    const spec = {
      ...DEFAULT_SPEC,
      panelWidth: DEFAULT_SPEC.panelWidth * scale,
      panelHeight: DEFAULT_SPEC.panelHeight * scale,
    };
    svg = renderFigure(rows, spec);
  } catch (err) {
    if (err instanceof CsvFormatError) {
      console.error(`error: ${inPath}: ${err.message}`);
      return 1;
    }
    throw err;
  }
  fs.writeFileSync(outPath, svg);
  console.log(`wrote ${outPath}`);
  return 0;
}

export async function main(argv: string[]): Promise<number> {
  let exitCode = 0;
  await yargs(argv)
    .command(
      "plot",
      "render the 12-panel convergence figure from a results CSV",
      (y) =>
        y
          .option("in", { type: "string", demandOption: true, describe: "input results CSV" })
          .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
          .option("scale", { type: "number", default: 1, describe: "panel size multiplier" }),
      (args) => {
        exitCode = runPlot(args.in as string, args.out as string, args.scale);
      },
    )
    .demandCommand(1)
    .strict()
    .fail((msg, err) => {
      console.error(`error: ${msg ?? err?.message}`);
      exitCode = 2;
    })
    .parseAsync();
  return exitCode;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
