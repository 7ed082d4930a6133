#!/usr/bin/env node
/**
 * plotkit CLI: render a mimocal sweep CSV into one of the three standard
 * SVG figures.
 *
 *   plotkit plot --kind <figure-kind> --in <csv> --out <svg>
 */
import { writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { CsvFormatError, readMetricRows } from "./csv.js";
import {
  FIGURE_KINDS,
  FigureDataError,
  FigureKind,
  buildFigure,
} from "./figures.js";
import { RenderError, renderSvg } from "./svg.js";

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        kind: { type: "string" },
        in: { type: "string" },
        out: { type: "string" },
      },
    });
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }

  const [command] = parsed.positionals;
  if (command !== "plot") {
    console.error(
      "usage: plotkit plot --kind <figure-kind> --in <csv> --out <svg>",
    );
    console.error(`figure kinds: ${FIGURE_KINDS.join(", ")}`);
    return 1;
  }
  const { kind, in: input, out } = parsed.values;
  if (!kind || !input || !out) {
    console.error("error: --kind, --in and --out are all required");
    return 1;
  }
  if (!FIGURE_KINDS.includes(kind as FigureKind)) {
    console.error(
      `error: unknown figure kind '${kind}' (expected one of ${FIGURE_KINDS.join(", ")})`,
    );
    return 1;
  }

  try {
    const rows = readMetricRows(input);
    const figure = buildFigure(kind as FigureKind, rows);
    writeFileSync(out, renderSvg(figure));
    console.log(`wrote ${figure.curves.length} curves to ${out}`);
    return 0;
  } catch (err) {
    if (
      err instanceof CsvFormatError ||
      err instanceof FigureDataError ||
      err instanceof RenderError
    ) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    if ((err as NodeJS.ErrnoException).code !== undefined) {
      console.error(`error: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}

const entry = process.argv[1];
if (entry !== undefined && import.meta.url === new URL(`file://${entry}`).href) {
  process.exit(run(process.argv.slice(2)));
}
