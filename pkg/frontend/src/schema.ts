// Input-document schemas, mirroring the simulator's JSON/CSV formats exactly.
// Validation failures must spell out which keys are missing or unexpected.

import { z, ZodError } from "zod";

const axisSchema = z.object({
  name: z.string(),
  values: z.array(z.number()),
}).strict();

export const cellSchema = z.object({
  chern_fhs: z.number().nullable(),
  chern_analytic_sign: z.number().nullable(),
  min_gap: z.number().nullable(),
  eta: z.number().nullable(),
  reliable: z.boolean(),
  error: z.string().nullable(),
}).strict();

export const phaseDiagramSchema = z.object({
  axis1: axisSchema,
  axis2: axisSchema,
  cells: z.array(z.array(cellSchema)),
  meta: z.record(z.unknown()),
}).strict();

export const spectrumMapSchema = z.object({
  axis1: axisSchema,
  axis2: axisSchema,
  values: z.array(z.array(z.number())),
  meta: z.record(z.unknown()),
}).strict();

export const diracPointSchema = z.object({
  position: z.tuple([z.number(), z.number()]),
  frac: z.tuple([z.number(), z.number()]),
  chirality: z.number(),
  hz_sign: z.number(),
  gap_mhz: z.number(),
  in_plane_residual_mhz: z.number(),
}).strict();

export const diracDocSchema = z.object({
  points: z.array(diracPointSchema),
  unresolved: z.array(z.array(z.number())),
  meta: z.record(z.unknown()),
}).strict();

export type PhaseDiagram = z.infer<typeof phaseDiagramSchema>;
export type SpectrumMap = z.infer<typeof spectrumMapSchema>;
export type DiracDoc = z.infer<typeof diracDocSchema>;
export type Cell = z.infer<typeof cellSchema>;

export class SchemaError extends Error {}

function describeIssues(err: ZodError): string {
  const lines = err.issues.map((issue) => {
    const where = issue.path.length ? issue.path.join(".") : "<root>";
    if (issue.code === "unrecognized_keys") {
      return `${where}: unexpected keys [${issue.keys.join(", ")}]`;
    }
    if (issue.code === "invalid_type" && issue.received === "undefined") {
      return `${where}: missing (expected ${issue.expected})`;
    }
    return `${where}: ${issue.message}`;
  });
  return lines.join("; ");
}

export function parseDocument<T>(schema: z.ZodType<T>, raw: unknown, label: string): T {
  const result = schema.safeParse(raw);
  if (!result.success) {
    throw new SchemaError(`${label}: schema mismatch: ${describeIssues(result.error)}`);
  }
  return result.data;
}

export interface BandsRow {
  segment: string;
  arc: number;
  e_lower_mhz: number;
  e_upper_mhz: number;
  sz_lower: number;
  sz_upper: number;
}

const BANDS_HEADER = ["segment", "arc", "r_x", "r_y", "e_lower_mhz", "e_upper_mhz", "sz_lower", "sz_upper"];

export function parseBandsCsv(text: string, label: string): BandsRow[] {
  const lines = text.trim().split(/\r?\n/);
  if (lines.length < 2) {
    throw new SchemaError(`${label}: empty bands CSV`);
  }
  const header = lines[0].split(",");
  const missing = BANDS_HEADER.filter((h) => !header.includes(h));
  const extra = header.filter((h) => !BANDS_HEADER.includes(h));
  if (missing.length || extra.length) {
    throw new SchemaError(
      `${label}: bands CSV header mismatch: missing [${missing.join(", ")}], unexpected [${extra.join(", ")}]`,
    );
  }
  const idx = Object.fromEntries(BANDS_HEADER.map((h) => [h, header.indexOf(h)]));
  return lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    const num = (key: string): number => {
      const v = Number(parts[idx[key]]);
      if (!Number.isFinite(v)) {
        throw new SchemaError(`${label}: row ${i + 1}: ${key} is not a number`);
      }
      return v;
    };
    return {
      segment: parts[idx.segment],
      arc: num("arc"),
      e_lower_mhz: num("e_lower_mhz"),
      e_upper_mhz: num("e_upper_mhz"),
      sz_lower: num("sz_lower"),
      sz_upper: num("sz_upper"),
    };
  });
}
