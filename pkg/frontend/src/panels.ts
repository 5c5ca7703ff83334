/** Reusable panels: line charts, heatmaps, colored scatter, Hinton grids. */

import { GridField } from "./csv.js";
import { divergingColor, sequentialColor } from "./colormap.js";
import { STYLE } from "./style.js";
import { SvgBuilder, linearScale, ticks, tickLabel, Scale } from "./svg.js";

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color?: string;
  dash?: string;
}

export interface PanelFrame {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface AxisLabels {
  title?: string;
  xLabel?: string;
  yLabel?: string;
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === Infinity) return [0, 1];
  if (lo === hi) return [lo - 1, hi + 1];
  return [lo, hi];
}

function drawFrame(
  svg: SvgBuilder,
  frame: PanelFrame,
  xScale: Scale,
  yScale: Scale,
  labels: AxisLabels,
): void {
  const { x, y, width, height } = frame;
  svg.rect(x, y, width, height, "none", ` stroke="${STYLE.axisColor}" stroke-width="1"`);
  for (const t of ticks(xScale.domain)) {
    const px = xScale(t);
    svg.line(px, y + height, px, y + height + 4, STYLE.axisColor, 1);
    svg.text(px, y + height + 16, tickLabel(t), STYLE.font, STYLE.fontColor, "middle");
  }
  for (const t of ticks(yScale.domain)) {
    const py = yScale(t);
    svg.line(x - 4, py, x, py, STYLE.axisColor, 1);
    svg.text(x - 7, py + 3.5, tickLabel(t), STYLE.font, STYLE.fontColor, "end");
  }
  if (labels.title) {
    svg.text(x + width / 2, y - 10, labels.title, STYLE.font, STYLE.fontColor, "middle");
  }
  if (labels.xLabel) {
    svg.text(x + width / 2, y + height + 32, labels.xLabel, STYLE.font, STYLE.fontColor, "middle");
  }
  if (labels.yLabel) {
    svg.text(
      x - 40,
      y + height / 2,
      labels.yLabel,
      STYLE.font,
      STYLE.fontColor,
      "middle",
      ` transform="rotate(-90 ${x - 40} ${y + height / 2})"`,
    );
  }
}

export function lineChart(
  svg: SvgBuilder,
  frame: PanelFrame,
  series: Series[],
  labels: AxisLabels,
  opts: { legend?: boolean; yDomain?: [number, number] } = {},
): void {
  const allX = series.flatMap((s) => s.x);
  const allY = series.flatMap((s) => s.y);
  const xScale = linearScale(extent(allX), [frame.x, frame.x + frame.width]);
  const yDomain = opts.yDomain ?? extent(allY);
  const yScale = linearScale(yDomain, [frame.y + frame.height, frame.y]);
  drawFrame(svg, frame, xScale, yScale, labels);
  series.forEach((s, i) => {
    const color = s.color ?? STYLE.seriesPalette[i % STYLE.seriesPalette.length];
    const pts: Array<[number, number]> = [];
    for (let k = 0; k < s.x.length; k++) {
      if (Number.isFinite(s.y[k])) pts.push([xScale(s.x[k]), yScale(s.y[k])]);
    }
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    svg.path(pts, color, STYLE.lineWidth, dash);
  });
  if (opts.legend !== false && series.length > 1) {
    series.forEach((s, i) => {
      const color = s.color ?? STYLE.seriesPalette[i % STYLE.seriesPalette.length];
      const lx = frame.x + frame.width - 110;
      const ly = frame.y + 14 + 14 * i;
      svg.line(lx, ly - 4, lx + 16, ly - 4, color, STYLE.lineWidth);
      svg.text(lx + 20, ly, s.label, STYLE.font, STYLE.fontColor);
    });
  }
}

export interface HeatmapOptions {
  symmetric?: boolean; // diverging scale centered at zero
  colorbar?: boolean;
  logX?: boolean;
}

export function heatmap(
  svg: SvgBuilder,
  frame: PanelFrame,
  field: GridField,
  labels: AxisLabels,
  opts: HeatmapOptions = {},
): void {
  const xs = opts.logX ? field.xs.map(Math.log10) : field.xs;
  const ys = field.ys;
  const flat = field.values.flat().filter(Number.isFinite);
  const [lo, hi] = extent(flat);
  const absMax = Math.max(Math.abs(lo), Math.abs(hi));
  const xScale = linearScale([xs[0], xs[xs.length - 1]], [frame.x, frame.x + frame.width]);
  const yScale = linearScale([ys[0], ys[ys.length - 1]], [frame.y + frame.height, frame.y]);
  for (let yi = 0; yi < ys.length; yi++) {
    for (let xi = 0; xi < xs.length; xi++) {
      const x0 = xi === 0 ? xScale(xs[0]) : (xScale(xs[xi - 1]) + xScale(xs[xi])) / 2;
      const x1 =
        xi === xs.length - 1 ? xScale(xs[xi]) : (xScale(xs[xi]) + xScale(xs[xi + 1])) / 2;
      const y0 = yi === ys.length - 1 ? yScale(ys[yi]) : (yScale(ys[yi]) + yScale(ys[yi + 1])) / 2;
      const y1 = yi === 0 ? yScale(ys[0]) : (yScale(ys[yi - 1]) + yScale(ys[yi])) / 2;
      const value = field.values[yi][xi];
      const color = opts.symmetric
        ? divergingColor(value, absMax)
        : sequentialColor(value, lo, hi);
      svg.rect(x0, y0, Math.max(x1 - x0, 0.5), Math.max(y1 - y0, 0.5), color);
    }
  }
  drawFrame(svg, frame, xScale, yScale, labels);
  if (opts.colorbar !== false) {
    const barX = frame.x + frame.width + 8;
    const steps = 32;
    for (let k = 0; k < steps; k++) {
      const t = k / (steps - 1);
      const value = opts.symmetric ? -absMax + 2 * absMax * t : lo + (hi - lo) * t;
      const color = opts.symmetric
        ? divergingColor(value, absMax)
        : sequentialColor(value, lo, hi);
      const y = frame.y + frame.height * (1 - t);
      svg.rect(barX, y - frame.height / steps, 8, frame.height / steps + 0.5, color);
    }
    const topLabel = opts.symmetric ? absMax : hi;
    const bottomLabel = opts.symmetric ? -absMax : lo;
    svg.text(barX + 11, frame.y + 8, tickLabel(topLabel), STYLE.font, STYLE.fontColor);
    svg.text(barX + 11, frame.y + frame.height, tickLabel(bottomLabel), STYLE.font, STYLE.fontColor);
  }
}

export function scatterColored(
  svg: SvgBuilder,
  frame: PanelFrame,
  points: Array<{ x: number; y: number; c: number }>,
  labels: AxisLabels,
): void {
  const xScale = linearScale(extent(points.map((p) => p.x)), [frame.x, frame.x + frame.width]);
  const yScale = linearScale(extent(points.map((p) => p.y)), [frame.y + frame.height, frame.y]);
  const [cLo, cHi] = extent(points.map((p) => p.c));
  drawFrame(svg, frame, xScale, yScale, labels);
  for (const p of points) {
    svg.circle(xScale(p.x), yScale(p.y), 2.0, sequentialColor(p.c, cLo, cHi));
  }
}

/** Hinton panel: square area encodes magnitude, color encodes sign. */
export function hinton(
  svg: SvgBuilder,
  frame: PanelFrame,
  matrix: number[][],
  labels: AxisLabels,
): void {
  const n = matrix.length;
  const cell = Math.min(frame.width, frame.height) / n;
  const maxAbs = Math.max(...matrix.flat().map(Math.abs), 1e-300);
  svg.rect(frame.x, frame.y, cell * n, cell * n, STYLE.hinton.background);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      const value = matrix[i][j];
      if (value === 0) continue;
      const side = cell * Math.sqrt(Math.min(Math.abs(value) / maxAbs, 1)) * 0.92;
      if (side < 0.05) continue;
      const cx = frame.x + (j + 0.5) * cell;
      const cy = frame.y + (i + 0.5) * cell;
      svg.rect(
        cx - side / 2,
        cy - side / 2,
        side,
        side,
        value > 0 ? STYLE.hinton.positive : STYLE.hinton.negative,
      );
    }
  }
  svg.rect(frame.x, frame.y, cell * n, cell * n, "none", ` stroke="${STYLE.axisColor}" stroke-width="1"`);
  if (labels.title) {
    svg.text(frame.x + (cell * n) / 2, frame.y - 10, labels.title, STYLE.font, STYLE.fontColor, "middle");
  }
}
