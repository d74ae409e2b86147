// Numeric colormaps; every signed quantity uses the zero-centered
// diverging map so that sign structure is always readable.

export type Rgb = [number, number, number];

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

function lerpRgb(a: Rgb, b: Rgb, t: number): Rgb {
  return [lerp(a[0], b[0], t), lerp(a[1], b[1], t), lerp(a[2], b[2], t)];
}

function rampColor(stops: Rgb[], t: number): Rgb {
  const x = Math.min(1, Math.max(0, t)) * (stops.length - 1);
  const i = Math.min(stops.length - 2, Math.floor(x));
  return lerpRgb(stops[i], stops[i + 1], x - i);
}

// blue-white-red, zero at the white center
const DIVERGING: Rgb[] = [
  [33, 102, 172],
  [146, 197, 222],
  [247, 247, 247],
  [244, 165, 130],
  [178, 24, 43],
];

// dark-to-bright sequential ramp for non-negative fields
const SEQUENTIAL: Rgb[] = [
  [13, 8, 135],
  [126, 3, 168],
  [204, 71, 120],
  [248, 149, 64],
  [240, 249, 33],
];

export function rgbString([r, g, b]: Rgb): string {
  return `rgb(${Math.round(r)},${Math.round(g)},${Math.round(b)})`;
}

/** Map a signed value to the diverging ramp, symmetric about zero. */
export function divergingColor(value: number, absMax: number): string {
  const span = absMax > 0 ? absMax : 1;
  return rgbString(rampColor(DIVERGING, 0.5 + 0.5 * (value / span)));
}

/** Map a non-negative value to the sequential ramp. */
export function sequentialColor(value: number, max: number): string {
  const span = max > 0 ? max : 1;
  return rgbString(rampColor(SEQUENTIAL, value / span));
}
