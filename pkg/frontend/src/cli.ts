// CLI: render --csv sweep.csv --x K --out fig4.svg [--schemes a,b] [--format svg]

import * as fs from "node:fs";

import { InputError, parseSweepCsv } from "./data.js";
import { renderFigure, SCHEME_ORDER, XAxis } from "./figure.js";

export interface RenderArgs {
  csv: string;
  x: XAxis;
  out: string;
  schemes: string[];
  format: "svg" | "png";
}

export function parseArgs(argv: string[]): RenderArgs {
  if (argv[0] !== "render") {
    throw new InputError(`unknown command '${argv[0] ?? ""}' (expected 'render')`);
  }
  const options = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      throw new InputError(`malformed option '${key}'`);
    }
    options.set(key.slice(2), argv[i + 1]);
  }
  for (const required of ["csv", "x", "out"]) {
    if (!options.has(required)) {
      throw new InputError(`missing required option --${required}`);
    }
  }
  const x = options.get("x")!;
  if (x !== "K" && x !== "Q") {
    throw new InputError(`--x must be K or Q, got '${x}'`);
  }
  const out = options.get("out")!;
  const format = (options.get("format") ?? (out.endsWith(".png") ? "png" : "svg"));
  if (format !== "svg" && format !== "png") {
    throw new InputError(`--format must be svg or png, got '${format}'`);
  }
  const schemes = options.has("schemes")
    ? options.get("schemes")!.split(",").map((s) => s.trim()).filter((s) => s !== "")
    : [...SCHEME_ORDER];
  if (schemes.length === 0) {
    throw new InputError("--schemes must name at least one scheme");
  }
  return { csv: options.get("csv")!, x, out, schemes, format };
}

export function runRender(args: RenderArgs): void {
  if (args.format === "png") {
    throw new InputError(
      "png output is not supported in this build (no rasterizer); use svg");
  }
  let text: string;
  try {
    text = fs.readFileSync(args.csv, "utf8");
  } catch (err) {
    throw new InputError(`cannot read CSV '${args.csv}': ${(err as Error).message}`);
  }
  const svg = renderFigure(parseSweepCsv(text), args.x, args.schemes);
  fs.writeFileSync(args.out, svg);
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    runRender(args);
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    if (err instanceof InputError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
