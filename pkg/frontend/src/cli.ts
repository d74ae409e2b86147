#!/usr/bin/env node
// srlattice-plots: turn simulator JSON/CSV results into SVG figures.
//
//   srlattice-plots --kind phase-heatmap --input sweep.json --out phase.svg
//                   [--observable eta|chern_fhs|chern_analytic_sign|min_gap]
//                   [--overlay-boundary]

import * as fs from "fs";
import * as process from "process";

import {
  diracDocSchema,
  parseBandsCsv,
  parseDocument,
  phaseDiagramSchema,
  SchemaError,
  spectrumMapSchema,
} from "./schema.js";
import {
  Observable,
  renderBands,
  renderDiracMap,
  renderEtaLine,
  renderPhaseHeatmap,
  renderSpectrumMap,
} from "./render.js";

const KINDS = ["phase-heatmap", "bands", "dirac-map", "spectrum-map", "eta-line"] as const;
type Kind = (typeof KINDS)[number];

const OBSERVABLES = ["chern_fhs", "chern_analytic_sign", "eta", "min_gap"] as const;

interface Args {
  kind: Kind;
  input: string;
  out: string;
  observable?: Observable;
  overlayBoundary: boolean;
}

function usage(): string {
  return (
    "usage: srlattice-plots --kind KIND --input FILE --out FILE.svg " +
    "[--observable NAME] [--overlay-boundary]\n" +
    `  KIND: ${KINDS.join(" | ")}\n` +
    `  NAME: ${OBSERVABLES.join(" | ")}\n`
  );
}

export function parseArgs(argv: string[]): Args {
  const args: Partial<Args> = { overlayBoundary: false };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) throw new Error(`${flag} needs a value`);
      return argv[i];
    };
    switch (flag) {
      case "--kind": {
        const v = next();
        if (!KINDS.includes(v as Kind)) throw new Error(`unknown kind ${v}`);
        args.kind = v as Kind;
        break;
      }
      case "--input":
        args.input = next();
        break;
      case "--out":
        args.out = next();
        break;
      case "--observable": {
        const v = next();
        if (!OBSERVABLES.includes(v as Observable)) throw new Error(`unknown observable ${v}`);
        args.observable = v as Observable;
        break;
      }
      case "--overlay-boundary":
        args.overlayBoundary = true;
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!args.kind || !args.input || !args.out) {
    throw new Error("--kind, --input and --out are required");
  }
  return args as Args;
}

export function renderFile(args: Args): string {
  const text = fs.readFileSync(args.input, "utf-8");
  switch (args.kind) {
    case "phase-heatmap": {
      const doc = parseDocument(phaseDiagramSchema, JSON.parse(text), args.input);
      return renderPhaseHeatmap(doc, {
        observable: args.observable,
        overlayBoundary: args.overlayBoundary,
      });
    }
    case "dirac-map":
      return renderDiracMap(parseDocument(diracDocSchema, JSON.parse(text), args.input));
    case "spectrum-map":
      return renderSpectrumMap(parseDocument(spectrumMapSchema, JSON.parse(text), args.input));
    case "bands":
      return renderBands(parseBandsCsv(text, args.input));
    case "eta-line":
      return renderEtaLine(parseDocument(phaseDiagramSchema, JSON.parse(text), args.input));
  }
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n${usage()}`);
    return 2;
  }
  try {
    const svg = renderFile(args);
    fs.writeFileSync(args.out, svg);
    process.stdout.write(`${args.out}\n`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 2;
    }
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
