// Minimal deterministic SVG assembly: fixed canvas, fonts and number
// formatting, so identical inputs give byte-identical files.

export const FONT = "font-family=\"DejaVu Sans, Helvetica, sans-serif\"";

export function fmt(x: number, digits = 2): string {
  const v = Number(x.toFixed(digits));
  return Object.is(v, -0) ? (0).toFixed(digits) : v.toFixed(digits);
}

export interface Frame {
  width: number;
  height: number;
  left: number;
  top: number;
  plotW: number;
  plotH: number;
}

export function frame(width = 640, height = 520, left = 70, top = 50, right = 110, bottom = 60): Frame {
  return { width, height, left, top, plotW: width - left - right, plotH: height - top - bottom };
}

export function openSvg(f: Frame): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${f.width}" height="${f.height}" viewBox="0 0 ${f.width} ${f.height}">\n<rect width="${f.width}" height="${f.height}" fill="white"/>\n`;
}

export function title(f: Frame, text: string): string {
  return `<text x="${fmt(f.width / 2)}" y="26" text-anchor="middle" font-size="16" ${FONT}>${text}</text>\n`;
}

export function axisLabels(f: Frame, xLabel: string, yLabel: string): string {
  const cy = f.top + f.plotH / 2;
  return (
    `<text x="${fmt(f.left + f.plotW / 2)}" y="${fmt(f.height - 14)}" text-anchor="middle" font-size="13" ${FONT}>${xLabel}</text>\n` +
    `<text x="20" y="${fmt(cy)}" text-anchor="middle" font-size="13" ${FONT} transform="rotate(-90, 20, ${fmt(cy)})">${yLabel}</text>\n`
  );
}

export function plotBorder(f: Frame): string {
  return `<rect x="${f.left}" y="${f.top}" width="${fmt(f.plotW)}" height="${fmt(f.plotH)}" fill="none" stroke="black" stroke-width="1"/>\n`;
}

export function ticks(
  f: Frame,
  axis: "x" | "y",
  values: number[],
  toCoord: (v: number) => number,
  digits = 2,
): string {
  let out = "";
  for (const v of values) {
    const c = toCoord(v);
    if (axis === "x") {
      out += `<line x1="${fmt(c)}" y1="${fmt(f.top + f.plotH)}" x2="${fmt(c)}" y2="${fmt(f.top + f.plotH + 5)}" stroke="black"/>\n`;
      out += `<text x="${fmt(c)}" y="${fmt(f.top + f.plotH + 20)}" text-anchor="middle" font-size="11" ${FONT}>${fmt(v, digits)}</text>\n`;
    } else {
      out += `<line x1="${fmt(f.left - 5)}" y1="${fmt(c)}" x2="${f.left}" y2="${fmt(c)}" stroke="black"/>\n`;
      out += `<text x="${fmt(f.left - 9)}" y="${fmt(c + 4)}" text-anchor="end" font-size="11" ${FONT}>${fmt(v, digits)}</text>\n`;
    }
  }
  return out;
}

export function linearTicks(lo: number, hi: number, n = 5): number[] {
  if (hi === lo) return [lo];
  const out: number[] = [];
  for (let i = 0; i < n; i++) out.push(lo + ((hi - lo) * i) / (n - 1));
  return out;
}

/** Vertical colorbar on the right edge with min/center/max labels. */
export function colorbar(
  f: Frame,
  colorAt: (t: number) => string,
  labels: [string, string, string],
  caption: string,
): string {
  const x = f.left + f.plotW + 28;
  const w = 16;
  const steps = 64;
  let out = "";
  for (let i = 0; i < steps; i++) {
    const t = 1 - (i + 0.5) / steps;
    const y = f.top + (f.plotH * i) / steps;
    out += `<rect x="${x}" y="${fmt(y)}" width="${w}" height="${fmt(f.plotH / steps + 0.5)}" fill="${colorAt(t)}"/>\n`;
  }
  out += `<rect x="${x}" y="${f.top}" width="${w}" height="${fmt(f.plotH)}" fill="none" stroke="black" stroke-width="0.5"/>\n`;
  out += `<text x="${x + w + 5}" y="${fmt(f.top + 6)}" font-size="10" ${FONT}>${labels[2]}</text>\n`;
  out += `<text x="${x + w + 5}" y="${fmt(f.top + f.plotH / 2 + 3)}" font-size="10" ${FONT}>${labels[1]}</text>\n`;
  out += `<text x="${x + w + 5}" y="${fmt(f.top + f.plotH)}" font-size="10" ${FONT}>${labels[0]}</text>\n`;
  out += `<text x="${x + w / 2}" y="${fmt(f.top - 8)}" text-anchor="middle" font-size="11" ${FONT}>${caption}</text>\n`;
  return out;
}
