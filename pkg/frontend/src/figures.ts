/**
 * Figure renderers: one SVG per recipe, assembled from the recipe's CSV
 * artifacts. Rendering never writes into the data directory and the same
 * inputs always produce identical bytes.
 */

import { existsSync, readdirSync } from "fs";
import { join } from "path";

import { channels, numericColumn, pivotGrid, readCsv, wignerField, wignerSites, CsvTable } from "./csv.js";
import { STYLE } from "./style.js";
import { SvgBuilder, linearScale } from "./svg.js";
import { heatmap, hinton, lineChart, scatterColored, PanelFrame, Series } from "./panels.js";

const M = STYLE.margin;

function frameAt(
  col: number,
  row: number,
  width: number = STYLE.panelWidth,
  height: number = STYLE.panelHeight,
): PanelFrame {
  return {
    x: M.left + col * (width + M.left + M.right),
    y: M.top + row * (height + M.top + M.bottom),
    width,
    height,
  };
}

function canvasSize(
  cols: number,
  rows: number,
  width: number = STYLE.panelWidth,
  height: number = STYLE.panelHeight,
): [number, number] {
  return [
    cols * (width + M.left + M.right),
    rows * (height + M.top + M.bottom) + 8,
  ];
}

function requireData(dataDir: string): void {
  if (!existsSync(dataDir) || readdirSync(dataDir).length === 0) {
    throw new Error(`missing input: no recipe outputs in ${dataDir}`);
  }
}

function seriesFrom(
  map: Map<string, { t: number[]; v: number[] }>,
  names: string[],
): Series[] {
  return names.map((name) => {
    const data = map.get(name);
    if (!data) {
      throw new Error(`missing channel column: ${name} (have ${Array.from(map.keys()).join(", ")})`);
    }
    return { label: name, x: data.t, y: data.v };
  });
}

function renderFig2(dataDir: string): string {
  const ts = readCsv(join(dataDir, "fig2_timeseries.csv"));
  const byName = channels(ts);
  const t0 = readCsv(join(dataDir, "fig2_wigner_t0.csv"));
  const tswap = readCsv(join(dataDir, "fig2_wigner_tswap.csv"));
  const sites = wignerSites(t0);

  const [w, h] = canvasSize(3, 3);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  const popFrame: PanelFrame = { ...frameAt(0, 0), width: w - M.left - M.right };
  lineChart(svg, popFrame, seriesFrom(byName, ["n1", "n2", "sigma_z"]), {
    title: "link populations and flux",
    xLabel: "t",
  });
  const tables: Array<[CsvTable, string]> = [
    [t0, "t = 0"],
    [tswap, "t = pi/Omega"],
  ];
  tables.forEach(([table, label], row) => {
    sites.forEach((site, col) => {
      const frame = frameAt(col, row + 1);
      heatmap(svg, frame, wignerField(table, site), {
        title: `W site ${site}, ${label}`,
        xLabel: "x",
        yLabel: "p",
      }, { symmetric: true });
    });
  });
  return svg.render();
}

function renderFig3a(dataDir: string): string {
  const table = readCsv(join(dataDir, "fig3a_matrix_elements.csv"));
  const beta0 = numericColumn(table, "beta0");
  const [w, h] = canvasSize(1, 1, 460);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  const frame = frameAt(0, 0, 460);
  lineChart(
    svg,
    frame,
    [
      { label: "Omega+/2", x: beta0, y: numericColumn(table, "omega_plus_half") },
      { label: "Omega-/2", x: beta0, y: numericColumn(table, "omega_minus_half") },
    ],
    { title: "transition elements vs cat amplitude", xLabel: "beta0" },
  );
  // numerically exact full-H elements as markers over the closed form
  const xScale = linearScale([beta0[0], beta0[beta0.length - 1]], [frame.x, frame.x + frame.width]);
  const fullPlus = numericColumn(table, "full_plus_abs");
  const fullMinus = numericColumn(table, "full_minus_abs");
  const all = [...numericColumn(table, "omega_plus_half"), ...numericColumn(table, "omega_minus_half")];
  const yScale = linearScale([Math.min(...all), Math.max(...all)], [frame.y + frame.height, frame.y]);
  beta0.forEach((b, i) => {
    svg.circle(xScale(b), yScale(fullPlus[i]), 2.4, "#777777");
    svg.circle(xScale(b), yScale(fullMinus[i]), 2.4, "#777777");
  });
  return svg.render();
}

function renderFig3b(dataDir: string): string {
  const files = readdirSync(dataDir)
    .filter((f) => f.startsWith("fig3b_wigner_beta0_") && f.endsWith(".csv"))
    .sort()
    .reverse(); // descending amplitude, as in the source sequence
  if (files.length === 0) {
    throw new Error(`missing input: no fig3b Wigner files in ${dataDir}`);
  }
  const [w, h] = canvasSize(files.length, 1);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  files.forEach((file, col) => {
    const table = readCsv(join(dataDir, file));
    const site = wignerSites(table)[0];
    const tag = file.replace("fig3b_wigner_beta0_", "").replace(".csv", "").replace("p", ".");
    heatmap(svg, frameAt(col, 0), wignerField(table, site), {
      title: `post-swap gauge W, beta0 = ${tag}`,
      xLabel: "x",
      yLabel: "p",
    }, { symmetric: true });
  });
  return svg.render();
}

function renderFig4a(dataDir: string): string {
  const files = readdirSync(dataDir)
    .filter((f) => f.startsWith("fig4a_sigma_z_ratio_") && f.endsWith(".csv"))
    .sort();
  if (files.length === 0) {
    throw new Error(`missing input: no fig4a files in ${dataDir}`);
  }
  const series: Series[] = files.map((file) => {
    const byName = channels(readCsv(join(dataDir, file)));
    const data = byName.get("sigma_z")!;
    const ratio = file.replace("fig4a_sigma_z_ratio_", "").replace(".csv", "").replace("p", ".");
    const tMax = data.t[data.t.length - 1];
    return { label: `g3 = ${ratio} gap`, x: data.t.map((t) => t / tMax), y: data.v };
  });
  const [w, h] = canvasSize(1, 1, 520);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  lineChart(svg, frameAt(0, 0, 520), series, {
    title: "flux dynamics for increasing three-wave mixing",
    xLabel: "t / t_max",
    yLabel: "<sigma_z>",
  }, { yDomain: [-1.05, 1.05] });
  return svg.render();
}

function renderFig4b(dataDir: string): string {
  const table = readCsv(join(dataDir, "fig4b_spectrum.csv"));
  const g3 = numericColumn(table, "g3");
  const ev = numericColumn(table, "eigenvalue");
  const wgt = numericColumn(table, "cat_weight");
  const points = g3.map((x, i) => ({ x, y: ev[i], c: wgt[i] }));
  const [w, h] = canvasSize(1, 1, 460, 300);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  scatterColored(svg, frameAt(0, 0, 460, 300), points, {
    title: "sector spectrum colored by cat weight",
    xLabel: "g3",
    yLabel: "energy",
  });
  return svg.render();
}

function renderFig4cd(dataDir: string): string {
  const curves = readCsv(join(dataDir, "fig4c_ipr_curves.csv"));
  const mapPlus = readCsv(join(dataDir, "fig4d_ipr_plus.csv"));
  const g3 = numericColumn(curves, "g3");
  const [w, h] = canvasSize(2, 1, 360, 260);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  lineChart(
    svg,
    frameAt(0, 0, 360, 260),
    [
      { label: "IPR C+", x: g3, y: numericColumn(curves, "ipr_plus") },
      { label: "IPR C-", x: g3, y: numericColumn(curves, "ipr_minus") },
      { label: "min cat weight", x: g3, y: numericColumn(curves, "min_cat_weight") },
    ],
    { title: "cat-state localisation vs g3", xLabel: "g3" },
  );
  heatmap(svg, frameAt(1, 0, 360, 260), pivotGrid(mapPlus, "g3", "beta0", "value"), {
    title: "eigenbasis IPR map (C+)",
    xLabel: "g3",
    yLabel: "beta0",
  });
  return svg.render();
}

function renderFig4e(dataDir: string): string {
  const table = readCsv(join(dataDir, "fig4e_baseline_normalized.csv"));
  const boundary = readCsv(join(dataDir, "fig4e_boundary_curve.csv"));
  const field = pivotGrid(table, "g3", "beta0", "value");
  const [w, h] = canvasSize(1, 1, 380, 300);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  const frame = frameAt(0, 0, 380, 300);
  heatmap(svg, frame, field, {
    title: "normalized Gauss-law DC baseline",
    xLabel: "g3",
    yLabel: "beta0",
  });
  // mixing-threshold overlay beta0 = g3 / (2U)
  const bx = numericColumn(boundary, "g3");
  const by = numericColumn(boundary, "beta0");
  const xScale = linearScale([field.xs[0], field.xs[field.xs.length - 1]], [frame.x, frame.x + frame.width]);
  const yScale = linearScale([field.ys[0], field.ys[field.ys.length - 1]], [frame.y + frame.height, frame.y]);
  const pts: Array<[number, number]> = [];
  for (let i = 0; i < bx.length; i++) {
    if (by[i] >= field.ys[0] && by[i] <= field.ys[field.ys.length - 1]) {
      pts.push([xScale(bx[i]), yScale(by[i])]);
    }
  }
  svg.path(
    pts,
    STYLE.boundaryCurve.color,
    STYLE.boundaryCurve.width,
    ` stroke-dasharray="${STYLE.boundaryCurve.dash}" id="boundary-curve"`,
  );
  return svg.render();
}

function renderFig5(dataDir: string): string {
  const byName = channels(readCsv(join(dataDir, "fig5_timeseries.csv")));
  const [w, h] = canvasSize(1, 3, 520, 170);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  lineChart(svg, frameAt(0, 0, 520, 170), seriesFrom(byName, ["n1", "n2", "n3"]), {
    title: "chain populations",
    xLabel: "t",
  });
  lineChart(svg, frameAt(0, 1, 520, 170), seriesFrom(byName, ["sigma_z_12", "sigma_z_23"]), {
    title: "link parities",
    xLabel: "t",
  }, { yDomain: [-1.05, 1.05] });
  lineChart(svg, frameAt(0, 2, 520, 170), seriesFrom(byName, ["g2_relative_deviation"]), {
    title: "relative deviation of <G2_chain>",
    xLabel: "t",
  });
  return svg.render();
}

function renderS1(dataDir: string): string {
  const plus = channels(readCsv(join(dataDir, "s1_plus.csv")));
  const minus = channels(readCsv(join(dataDir, "s1_minus.csv")));
  const [w, h] = canvasSize(2, 1);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  lineChart(svg, frameAt(0, 0), seriesFrom(plus, ["sigma_z"]), {
    title: "start in C+",
    xLabel: "t",
    yLabel: "<sigma_z>",
  }, { yDomain: [-1.05, 1.05] });
  lineChart(svg, frameAt(1, 0), seriesFrom(minus, ["sigma_z"]), {
    title: "start in C-",
    xLabel: "t",
    yLabel: "<sigma_z>",
  }, { yDomain: [-1.05, 1.05] });
  return svg.render();
}

function renderS2Hinton(dataDir: string): string {
  const files = readdirSync(dataDir)
    .filter((f) => f.startsWith("s2_hinton_") && f.endsWith(".csv"))
    .sort();
  if (files.length === 0) {
    throw new Error(`missing input: no Hinton files in ${dataDir}`);
  }
  const [w, h] = canvasSize(files.length, 1, 240, 240);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  files.forEach((file, col) => {
    const table = readCsv(join(dataDir, file));
    const labels = Array.from(new Set(table.rows.map((r) => r[0])));
    const index = new Map(labels.map((l, i) => [l, i]));
    const matrix = labels.map(() => labels.map(() => 0));
    for (const row of table.rows) {
      matrix[index.get(row[0])!][index.get(row[1])!] = Number(row[2]);
    }
    hinton(svg, frameAt(col, 0, 240, 240), matrix, {
      title: `g3 = ${table.metadata["g3"] ?? "?"}`,
    });
  });
  return svg.render();
}

function renderPlaquette(dataDir: string): string {
  const table = readCsv(join(dataDir, "plaquette_momentum_spectrum.csv"));
  const phi = numericColumn(table, "phi");
  const [w, h] = canvasSize(1, 1, 420);
  const svg = new SvgBuilder(w, h);
  svg.rect(0, 0, w, h, STYLE.background);
  lineChart(
    svg,
    frameAt(0, 0, 420),
    ["eig0", "eig1", "eig2"].map((name) => ({
      label: name,
      x: phi,
      y: numericColumn(table, name),
    })),
    { title: "ancilla band vs plaquette flux", xLabel: "phi", yLabel: "energy" },
  );
  return svg.render();
}

export const FIGURES: Record<string, (dataDir: string) => string> = {
  fig2: renderFig2,
  fig3a: renderFig3a,
  fig3b: renderFig3b,
  fig4a: renderFig4a,
  fig4b: renderFig4b,
  fig4cd: renderFig4cd,
  fig4e: renderFig4e,
  fig5: renderFig5,
  s1: renderS1,
  "s2-hinton": renderS2Hinton,
  plaquette: renderPlaquette,
};

export function render(figureName: string, dataDir: string): string {
  const renderer = FIGURES[figureName];
  if (!renderer) {
    throw new Error(`unknown figure ${figureName}; available: ${Object.keys(FIGURES).sort().join(", ")}`);
  }
  requireData(dataDir);
  return renderer(dataDir);
}
