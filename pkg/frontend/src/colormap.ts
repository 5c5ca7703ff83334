/**
 * Colormaps for the figure panels.
 *
 * `viridis` handles sequential data (populations, IPR, Gauss-law maps);
 * `coolwarm` is the diverging map for phase-space quasi-probabilities and
 * is always applied symmetrically about zero so negativity stays visible.
 */

export type Rgb = [number, number, number];

const VIRIDIS_ANCHORS: Rgb[] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

const COOLWARM_ANCHORS: Rgb[] = [
  [59, 76, 192],
  [124, 159, 249],
  [192, 212, 245],
  [242, 242, 242],
  [245, 192, 157],
  [222, 96, 77],
  [180, 4, 38],
];

function sample(anchors: Rgb[], t: number): Rgb {
  const x = Math.max(0, Math.min(1, t)) * (anchors.length - 1);
  const lo = Math.floor(x);
  const hi = Math.min(lo + 1, anchors.length - 1);
  const f = x - lo;
  return [0, 1, 2].map((k) =>
    Math.round(anchors[lo][k] * (1 - f) + anchors[hi][k] * f),
  ) as Rgb;
}

export function viridis(t: number): Rgb {
  return sample(VIRIDIS_ANCHORS, t);
}

export function coolwarm(t: number): Rgb {
  return sample(COOLWARM_ANCHORS, t);
}

export function hex([r, g, b]: Rgb): string {
  const component = (v: number) => v.toString(16).padStart(2, "0");
  return `#${component(r)}${component(g)}${component(b)}`;
}

/** Map a value to a sequential color over [lo, hi]. */
export function sequentialColor(value: number, lo: number, hi: number): string {
  const span = hi - lo;
  return hex(viridis(span === 0 ? 0.5 : (value - lo) / span));
}

/**
 * Map a value to the diverging scale centered at zero: the positive and
 * negative extremes share one magnitude so the scale is sign-symmetric.
 */
export function divergingColor(value: number, absMax: number): string {
  if (absMax <= 0) return hex(coolwarm(0.5));
  return hex(coolwarm(0.5 + 0.5 * Math.max(-1, Math.min(1, value / absMax))));
}
