// The five figure kinds, each a pure function from validated document to
// SVG text: phase-diagram heatmaps, Dirac-point maps, spectrum maps,
// band/polarization panels and contrast lines.

import {
  Cell,
  DiracDoc,
  PhaseDiagram,
  SpectrumMap,
  BandsRow,
  SchemaError,
} from "./schema.js";
import { divergingColor, sequentialColor } from "./colormap.js";
import {
  axisLabels,
  colorbar,
  fmt,
  frame,
  linearTicks,
  openSvg,
  plotBorder,
  ticks,
  title,
} from "./svg.js";

export type Observable = "chern_fhs" | "chern_analytic_sign" | "eta" | "min_gap";

const SIGNED: Record<Observable, boolean> = {
  chern_fhs: true,
  chern_analytic_sign: true,
  eta: true,
  min_gap: false,
};

export interface PhaseHeatmapOptions {
  observable?: Observable;
  overlayBoundary?: boolean;
}

function cellValue(cell: Cell, observable: Observable): number | null {
  return cell[observable];
}

export function renderPhaseHeatmap(doc: PhaseDiagram, options: PhaseHeatmapOptions = {}): string {
  const observable = options.observable ?? "chern_analytic_sign";
  const n1 = doc.axis1.values.length;
  const n2 = doc.axis2.values.length;
  if (doc.cells.length !== n1 || doc.cells.some((row) => row.length !== n2)) {
    throw new SchemaError(`cells shape does not match axes (${n1} x ${n2})`);
  }
  const values = doc.cells.flat().map((c) => cellValue(c, observable));
  const finite = values.filter((v): v is number => v !== null);
  const absMax = finite.reduce((m, v) => Math.max(m, Math.abs(v)), 0);
  const max = finite.reduce((m, v) => Math.max(m, v), 0);
  const signed = SIGNED[observable];

  const f = frame();
  const cw = f.plotW / n1;
  const ch = f.plotH / n2;
  // axis1 along x, axis2 along y (y axis pointing up)
  const sx = (i: number) => f.left + i * cw;
  const sy = (j: number) => f.top + f.plotH - (j + 1) * ch;

  let svg = openSvg(f);
  svg += title(f, `${observable} over (${doc.axis1.name}, ${doc.axis2.name})`);
  for (let i = 0; i < n1; i++) {
    for (let j = 0; j < n2; j++) {
      const v = cellValue(doc.cells[i][j], observable);
      const fill = v === null
        ? "rgb(200,200,200)"
        : signed
          ? divergingColor(v, absMax)
          : sequentialColor(v, max);
      svg += `<rect x="${fmt(sx(i))}" y="${fmt(sy(j))}" width="${fmt(cw + 0.5)}" height="${fmt(ch + 0.5)}" fill="${fill}"/>\n`;
    }
  }

  if (options.overlayBoundary) {
    // phase boundary: edges where the analytic sign observable changes sign
    svg += boundaryOverlay(doc, sx, sy, cw, ch);
  }

  svg += plotBorder(f);
  const v1 = doc.axis1.values;
  const v2 = doc.axis2.values;
  svg += ticks(f, "x", linearTicks(v1[0], v1[v1.length - 1], 5), (v) => {
    const t = (v - v1[0]) / (v1[v1.length - 1] - v1[0] || 1);
    return f.left + t * (f.plotW - cw) + cw / 2;
  });
  svg += ticks(f, "y", linearTicks(v2[0], v2[v2.length - 1], 5), (v) => {
    const t = (v - v2[0]) / (v2[v2.length - 1] - v2[0] || 1);
    return f.top + f.plotH - (t * (f.plotH - ch) + ch / 2);
  });
  svg += axisLabels(f, doc.axis1.name, doc.axis2.name);
  svg += signed
    ? colorbar(f, (t) => divergingColor((2 * t - 1) * absMax, absMax),
      [fmt(-absMax), "0", fmt(absMax)], observable)
    : colorbar(f, (t) => sequentialColor(t * max, max), ["0", fmt(max / 2), fmt(max)], observable);
  svg += "</svg>\n";
  return svg;
}

function boundaryOverlay(
  doc: PhaseDiagram,
  sx: (i: number) => number,
  sy: (j: number) => number,
  cw: number,
  ch: number,
): string {
  const sign = (c: Cell) => Math.sign(c.chern_analytic_sign ?? 0);
  let out = "";
  const n1 = doc.cells.length;
  const n2 = doc.cells[0].length;
  for (let i = 0; i < n1; i++) {
    for (let j = 0; j < n2; j++) {
      const s = sign(doc.cells[i][j]);
      if (i + 1 < n1) {
        const s2 = sign(doc.cells[i + 1][j]);
        if (s !== 0 && s2 !== 0 && s !== s2) {
          const x = sx(i + 1);
          out += `<line x1="${fmt(x)}" y1="${fmt(sy(j))}" x2="${fmt(x)}" y2="${fmt(sy(j) + ch)}" stroke="black" stroke-width="1.2" stroke-dasharray="4,3"/>\n`;
        }
      }
      if (j + 1 < n2) {
        const s2 = sign(doc.cells[i][j + 1]);
        if (s !== 0 && s2 !== 0 && s !== s2) {
          const y = sy(j + 1) + ch;
          out += `<line x1="${fmt(sx(i))}" y1="${fmt(y)}" x2="${fmt(sx(i) + cw)}" y2="${fmt(y)}" stroke="black" stroke-width="1.2" stroke-dasharray="4,3"/>\n`;
        }
      }
    }
  }
  return out;
}

export function renderDiracMap(doc: DiracDoc): string {
  const f = frame(560, 560, 70, 50, 110, 60);
  let svg = openSvg(f);
  svg += title(f, "band-touching points in the fundamental cell");
  const absHz = doc.points.reduce((m, p) => Math.max(m, Math.abs(p.hz_sign * p.gap_mhz / 2)), 0);

  const sx = (s: number) => f.left + s * f.plotW;
  const sy = (s: number) => f.top + f.plotH - s * f.plotH;
  for (const p of doc.points) {
    const hz = (p.hz_sign * p.gap_mhz) / 2;
    const fill = divergingColor(hz, absHz);
    // chirality-coded marker: +1 open (white core), -1 filled (black core)
    const [s1, s2] = p.frac;
    const x = fmt(sx(s1));
    const y = fmt(sy(s2));
    svg += `<circle cx="${x}" cy="${y}" r="11" fill="${fill}" stroke="black" stroke-width="1"/>\n`;
    svg += p.chirality > 0
      ? `<circle cx="${x}" cy="${y}" r="4.5" fill="white" stroke="black" stroke-width="1"/>\n`
      : `<circle cx="${x}" cy="${y}" r="4.5" fill="black"/>\n`;
    svg += `<text x="${x}" y="${fmt(Number(y) - 15)}" text-anchor="middle" font-size="10">gap ${fmt(p.gap_mhz, 1)}</text>\n`;
  }
  svg += plotBorder(f);
  svg += ticks(f, "x", [0, 0.5, 1], (v) => sx(v), 1);
  svg += ticks(f, "y", [0, 0.5, 1], (v) => sy(v), 1);
  svg += axisLabels(f, "cell coordinate s1", "cell coordinate s2");
  svg += colorbar(f, (t) => divergingColor((2 * t - 1) * absHz, absHz),
    [fmt(-absHz, 1), "0", fmt(absHz, 1)], "h_z (MHz)");
  svg += "</svg>\n";
  return svg;
}

export function renderSpectrumMap(doc: SpectrumMap): string {
  const n1 = doc.axis1.values.length;
  const n2 = doc.axis2.values.length;
  if (doc.values.length !== n1 || doc.values.some((row) => row.length !== n2)) {
    throw new SchemaError(`values shape does not match axes (${n1} x ${n2})`);
  }
  const max = doc.values.flat().reduce((m, v) => Math.max(m, v), 0);
  const f = frame();
  const cw = f.plotW / n1;
  const ch = f.plotH / n2;
  let svg = openSvg(f);
  svg += title(f, `absorption over (${doc.axis1.name}, ${doc.axis2.name})`);
  for (let i = 0; i < n1; i++) {
    for (let j = 0; j < n2; j++) {
      const x = f.left + i * cw;
      const y = f.top + f.plotH - (j + 1) * ch;
      svg += `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(cw + 0.5)}" height="${fmt(ch + 0.5)}" fill="${sequentialColor(doc.values[i][j], max)}"/>\n`;
    }
  }
  svg += plotBorder(f);
  const v1 = doc.axis1.values;
  const v2 = doc.axis2.values;
  svg += ticks(f, "x", linearTicks(v1[0], v1[v1.length - 1], 5), (v) => {
    const t = (v - v1[0]) / (v1[v1.length - 1] - v1[0] || 1);
    return f.left + t * (f.plotW - cw) + cw / 2;
  }, 1);
  svg += ticks(f, "y", linearTicks(v2[0], v2[v2.length - 1], 5), (v) => {
    const t = (v - v2[0]) / (v2[v2.length - 1] - v2[0] || 1);
    return f.top + f.plotH - (t * (f.plotH - ch) + ch / 2);
  }, 0);
  svg += axisLabels(f, doc.axis1.name, doc.axis2.name);
  svg += colorbar(f, (t) => sequentialColor(t * max, max), ["0", fmt(max / 2, 3), fmt(max, 3)], "absorption");
  svg += "</svg>\n";
  return svg;
}

export function renderBands(rows: BandsRow[]): string {
  if (rows.length === 0) {
    throw new SchemaError("bands CSV has no data rows");
  }
  const f = frame();
  const arcMax = rows[rows.length - 1].arc || 1;
  const eMin = Math.min(...rows.map((r) => r.e_lower_mhz));
  const eMax = Math.max(...rows.map((r) => r.e_upper_mhz));
  const pad = 0.05 * (eMax - eMin || 1);
  const lo = eMin - pad;
  const hi = eMax + pad;
  const sx = (arc: number) => f.left + (arc / arcMax) * f.plotW;
  const sy = (e: number) => f.top + f.plotH - ((e - lo) / (hi - lo)) * f.plotH;

  let svg = openSvg(f);
  svg += title(f, "effective bands, colored by sublattice polarization");
  // polarization-colored segments, lower then upper band
  for (const band of ["lower", "upper"] as const) {
    for (let i = 0; i + 1 < rows.length; i++) {
      const a = rows[i];
      const b = rows[i + 1];
      if (b.arc < a.arc) continue; // segment boundary duplicates
      const e1 = band === "lower" ? a.e_lower_mhz : a.e_upper_mhz;
      const e2 = band === "lower" ? b.e_lower_mhz : b.e_upper_mhz;
      const sz = band === "lower" ? a.sz_lower : a.sz_upper;
      svg += `<line x1="${fmt(sx(a.arc))}" y1="${fmt(sy(e1))}" x2="${fmt(sx(b.arc))}" y2="${fmt(sy(e2))}" stroke="${divergingColor(sz, 1)}" stroke-width="2.5"/>\n`;
    }
  }
  svg += plotBorder(f);
  svg += ticks(f, "y", linearTicks(lo, hi, 5), sy, 1);
  const segments = [...new Set(rows.map((r) => r.segment))];
  for (const seg of segments) {
    const first = rows.find((r) => r.segment === seg)!;
    svg += `<line x1="${fmt(sx(first.arc))}" y1="${f.top}" x2="${fmt(sx(first.arc))}" y2="${fmt(f.top + f.plotH)}" stroke="rgb(180,180,180)" stroke-width="0.7"/>\n`;
    svg += `<text x="${fmt(sx(first.arc))}" y="${fmt(f.top + f.plotH + 18)}" text-anchor="middle" font-size="11">${seg.split("-")[0]}</text>\n`;
  }
  const last = rows[rows.length - 1];
  svg += `<text x="${fmt(sx(last.arc))}" y="${fmt(f.top + f.plotH + 18)}" text-anchor="middle" font-size="11">${last.segment.split("-")[1]}</text>\n`;
  svg += axisLabels(f, "zone path", "energy (MHz)");
  svg += colorbar(f, (t) => divergingColor(2 * t - 1, 1), ["-1", "0", "+1"], "sigma_z");
  svg += "</svg>\n";
  return svg;
}

export function renderEtaLine(doc: PhaseDiagram): string {
  // contrast along the anti-diagonal phi3 = 2 pi - phi2 of a phase sweep
  const n = doc.axis1.values.length;
  const pts: { x: number; eta: number | null }[] = [];
  for (let i = 0; i < n; i++) {
    const j = (n - i) % n;
    if (j >= doc.axis2.values.length) continue;
    pts.push({ x: doc.axis1.values[i], eta: doc.cells[i][j].eta });
  }
  if (!pts.some((p) => p.eta !== null)) {
    throw new SchemaError("no eta values on the anti-diagonal; sweep must include the eta observable");
  }
  const f = frame();
  const xMax = pts[pts.length - 1].x || 1;
  const sx = (x: number) => f.left + (x / xMax) * f.plotW;
  const sy = (v: number) => f.top + f.plotH / 2 - (v * f.plotH) / 2.2;

  let svg = openSvg(f);
  svg += title(f, "superradiance contrast along phi3 = 2pi - phi2");
  svg += `<line x1="${f.left}" y1="${fmt(sy(0))}" x2="${fmt(f.left + f.plotW)}" y2="${fmt(sy(0))}" stroke="rgb(150,150,150)" stroke-width="0.8"/>\n`;
  const barW = f.plotW / Math.max(1, pts.length) * 0.8;
  for (const p of pts) {
    if (p.eta === null) continue;
    const y0 = sy(Math.max(0, p.eta));
    const h = Math.abs(sy(0) - sy(p.eta));
    svg += `<rect x="${fmt(sx(p.x) - barW / 2)}" y="${fmt(y0)}" width="${fmt(barW)}" height="${fmt(h)}" fill="${divergingColor(p.eta, 1)}" stroke="black" stroke-width="0.4"/>\n`;
  }
  svg += plotBorder(f);
  svg += ticks(f, "x", linearTicks(0, xMax, 5), sx);
  svg += ticks(f, "y", [-1, -0.5, 0, 0.5, 1], sy, 1);
  svg += axisLabels(f, doc.axis1.name, "eta");
  svg += colorbar(f, (t) => divergingColor(2 * t - 1, 1), ["-1", "0", "+1"], "eta");
  svg += "</svg>\n";
  return svg;
}
