#!/usr/bin/env node
/** CLI: `laapprox-plots smoothness runs.csv out.svg` or `runtime runs.csv out.svg`. */

import { SchemaError } from "./csv.js";
import { plotRuntime } from "./runtime.js";
import { plotSmoothness } from "./smoothness.js";

function usage(): never {
  console.error("usage: laapprox-plots <smoothness|runtime> <runs.csv> <out.svg>");
  process.exit(2);
}

export function main(argv: string[]): number {
  if (argv.length !== 3) {
    usage();
  }
  const [command, csvPath, outPath] = argv;
  try {
    if (command === "smoothness") {
      plotSmoothness(csvPath, outPath);
    } else if (command === "runtime") {
      plotRuntime(csvPath, outPath);
    } else {
      usage();
    }
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 1;
    }
    throw err;
  }
  console.log(`wrote ${outPath}`);
  return 0;
}

process.exit(main(process.argv.slice(2)));
