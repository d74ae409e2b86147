import { describe, expect, it } from "vitest";
import * as fs from "fs";
import * as path from "path";
import * as os from "os";
import { fileURLToPath } from "url";

import {
  diracDocSchema,
  parseBandsCsv,
  parseDocument,
  phaseDiagramSchema,
  SchemaError,
  spectrumMapSchema,
} from "../src/schema.js";
import {
  renderBands,
  renderDiracMap,
  renderEtaLine,
  renderPhaseHeatmap,
  renderSpectrumMap,
} from "../src/render.js";
import { main } from "../src/cli.js";

const here = path.dirname(fileURLToPath(import.meta.url));
const fixture = (name: string) => path.join(here, "..", "fixtures", name);
const readJson = (name: string) => JSON.parse(fs.readFileSync(fixture(name), "utf-8"));

describe("schema validation", () => {
  it("accepts the checked-in phase diagram", () => {
    const doc = parseDocument(phaseDiagramSchema, readJson("phase_diagram.json"), "fixture");
    expect(doc.cells.length).toBe(12);
  });

  it("lists missing keys", () => {
    expect(() => parseDocument(phaseDiagramSchema, { axis1: { name: "x", values: [] } }, "doc"))
      .toThrowError(/missing/);
    try {
      parseDocument(phaseDiagramSchema, { axis1: { name: "x", values: [] } }, "doc");
    } catch (err) {
      const msg = (err as Error).message;
      expect(msg).toContain("axis2");
      expect(msg).toContain("cells");
    }
  });

  it("lists unexpected keys", () => {
    const doc = readJson("phase_diagram.json");
    doc.surprise = 1;
    expect(() => parseDocument(phaseDiagramSchema, doc, "doc"))
      .toThrowError(/unexpected keys \[surprise\]/);
  });

  it("rejects malformed cells", () => {
    const doc = readJson("phase_diagram.json");
    delete doc.cells[0][0].eta;
    expect(() => parseDocument(phaseDiagramSchema, doc, "doc")).toThrowError(SchemaError);
  });

  it("rejects a foreign document", () => {
    expect(() => parseDocument(spectrumMapSchema, readJson("dirac_f26.json"), "doc"))
      .toThrowError(SchemaError);
  });

  it("validates bands CSV headers", () => {
    expect(() => parseBandsCsv("a,b\n1,2", "doc")).toThrowError(/header mismatch/);
  });
});

describe("renderers", () => {
  it("phase heatmap renders and is deterministic", () => {
    const doc = parseDocument(phaseDiagramSchema, readJson("phase_diagram.json"), "fixture");
    const a = renderPhaseHeatmap(doc, { overlayBoundary: true });
    const b = renderPhaseHeatmap(doc, { overlayBoundary: true });
    expect(a).toBe(b);
    expect(a.startsWith("<svg")).toBe(true);
    expect(a).toContain("</svg>");
    expect(a).toContain("chern_analytic_sign");
  });

  it("dirac map shows all eight points with chirality-coded markers", () => {
    const doc = parseDocument(diracDocSchema, readJson("dirac_f26.json"), "fixture");
    expect(doc.points.length).toBe(8);
    const svg = renderDiracMap(doc);
    expect(svg).toBe(renderDiracMap(doc));
    const filled = (svg.match(/r="4.5" fill="black"/g) ?? []).length;
    const open = (svg.match(/r="4.5" fill="white"/g) ?? []).length;
    expect(filled + open).toBe(8);
    expect(filled).toBe(4); // chirality is balanced
  });

  it("spectrum map renders deterministically", () => {
    const doc = parseDocument(spectrumMapSchema, readJson("spectrum_vs_f.json"), "fixture");
    const svg = renderSpectrumMap(doc);
    expect(svg).toBe(renderSpectrumMap(doc));
    expect(svg).toContain("absorption");
  });

  it("bands panel renders from CSV", () => {
    const rows = parseBandsCsv(fs.readFileSync(fixture("bands.csv"), "utf-8"), "fixture");
    const svg = renderBands(rows);
    expect(svg).toBe(renderBands(rows));
    expect(svg).toContain("sigma_z");
  });

  it("eta line renders the anti-diagonal", () => {
    const doc = parseDocument(phaseDiagramSchema, readJson("phase_diagram_eta.json"), "fixture");
    const svg = renderEtaLine(doc);
    expect(svg).toBe(renderEtaLine(doc));
    expect(svg).toContain("eta");
  });

  it("eta line requires the eta observable", () => {
    const doc = parseDocument(phaseDiagramSchema, readJson("phase_diagram.json"), "fixture");
    expect(() => renderEtaLine(doc)).toThrowError(/eta/);
  });

  it("signed quantities always use the zero-centered diverging scale", () => {
    const doc = parseDocument(phaseDiagramSchema, readJson("phase_diagram_eta.json"), "fixture");
    const svg = renderPhaseHeatmap(doc, { observable: "eta" });
    // center of the diverging ramp is near-white
    expect(svg).toContain("rgb(247,247,247)");
  });
});

describe("cli", () => {
  const tmp = fs.mkdtempSync(path.join(os.tmpdir(), "srlattice-plots-"));

  it("renders the three acceptance figures byte-identically twice", () => {
    const jobs: [string, string][] = [
      ["phase-heatmap", "phase_diagram.json"],
      ["dirac-map", "dirac_f26.json"],
      ["spectrum-map", "spectrum_vs_f.json"],
    ];
    for (const [kind, input] of jobs) {
      const out1 = path.join(tmp, `${kind}-1.svg`);
      const out2 = path.join(tmp, `${kind}-2.svg`);
      expect(main(["--kind", kind, "--input", fixture(input), "--out", out1])).toBe(0);
      expect(main(["--kind", kind, "--input", fixture(input), "--out", out2])).toBe(0);
      const bytes1 = fs.readFileSync(out1);
      const bytes2 = fs.readFileSync(out2);
      expect(bytes1.equals(bytes2)).toBe(true);
      expect(bytes1.length).toBeGreaterThan(500);
    }
  });

  it("schema mismatch exits 2", () => {
    const bad = path.join(tmp, "bad.json");
    fs.writeFileSync(bad, JSON.stringify({ nonsense: true }));
    expect(main(["--kind", "phase-heatmap", "--input", bad, "--out", path.join(tmp, "x.svg")]))
      .toBe(2);
  });

  it("usage errors exit 2", () => {
    expect(main(["--kind", "phase-heatmap"])).toBe(2);
    expect(main(["--kind", "wat", "--input", "x", "--out", "y"])).toBe(2);
  });
});
