/** Writes miniature recipe outputs in the simulator's CSV schemas. */

import { mkdirSync, writeFileSync } from "fs";
import { join } from "path";

const META = "# config_hash=abc123def4567890\n# recipe=test\n";

function write(dir: string, name: string, schema: string, header: string, rows: string[]): void {
  mkdirSync(dir, { recursive: true });
  writeFileSync(
    join(dir, name),
    META + `# schema=${schema}\n` + header + "\n" + rows.join("\n") + "\n",
    "utf-8",
  );
}

function timeseries(dir: string, name: string, channelNames: string[], samples = 24): void {
  const rows: string[] = [];
  for (const channel of channelNames) {
    for (let i = 0; i < samples; i++) {
      const t = i * 0.5;
      const value = Math.sin(0.3 * t + channelNames.indexOf(channel));
      rows.push(`${t},${channel},${value}`);
    }
  }
  write(dir, name, "timeseries-v1", "t,channel,value", rows);
}

function wigner(dir: string, name: string, sites: number[], n = 8): void {
  const rows: string[] = [];
  for (const site of sites) {
    for (let ip = 0; ip < n; ip++) {
      for (let ix = 0; ix < n; ix++) {
        const x = -2 + (4 * ix) / (n - 1);
        const p = -2 + (4 * ip) / (n - 1);
        const w = Math.exp(-x * x - p * p) * Math.cos(3 * p) * 0.63;
        rows.push(`${site},${x},${p},${w}`);
      }
    }
  }
  write(dir, name, "wigner-v1", "site,x,p,w", rows);
}

function mapFile(dir: string, name: string, nb = 5, ng = 6): void {
  const rows: string[] = [];
  for (let i = 0; i < nb; i++) {
    for (let j = 0; j < ng; j++) {
      const beta0 = 0.5 + i * 0.5;
      const g3 = 0.001 + j * 0.04;
      rows.push(`${beta0},${g3},${Math.exp(-beta0) * g3 * 10}`);
    }
  }
  write(dir, name, "map-v1", "beta0,g3,value", rows);
}

export function makeFig2(dir: string): void {
  timeseries(dir, "fig2_timeseries.csv", ["n1", "n2", "sigma_z", "g1", "fid_swap"]);
  wigner(dir, "fig2_wigner_t0.csv", [0, 1, 2]);
  wigner(dir, "fig2_wigner_tswap.csv", [0, 1, 2]);
}

export function makeFig3a(dir: string): void {
  const rows: string[] = [];
  for (let i = 0; i < 12; i++) {
    const b = 0.1 + 0.2 * i;
    rows.push(`${b},${0.001 * b},${0.0009 * b},${0.001 * b},${0.0009 * b},${0.001 * b},${0.0009 * b}`);
  }
  write(
    dir,
    "fig3a_matrix_elements.csv",
    "matrix-elements-v1",
    "beta0,omega_plus_half,omega_minus_half,full_plus_abs,full_minus_abs,projected_plus_abs,projected_minus_abs",
    rows,
  );
}

export function makeFig3b(dir: string): void {
  wigner(dir, "fig3b_wigner_beta0_2.csv", [1]);
  wigner(dir, "fig3b_wigner_beta0_1.csv", [1]);
  wigner(dir, "fig3b_wigner_beta0_0p18.csv", [1]);
}

export function makeFig4a(dir: string): void {
  timeseries(dir, "fig4a_sigma_z_ratio_0p01.csv", ["sigma_z"]);
  timeseries(dir, "fig4a_sigma_z_ratio_1.csv", ["sigma_z"]);
}

export function makeFig4b(dir: string): void {
  const rows: string[] = [];
  for (let j = 0; j < 6; j++) {
    for (let k = 0; k < 10; k++) {
      rows.push(`${0.01 * (j + 1)},${k},${-0.5 + 0.1 * k + 0.01 * j},${k < 2 ? 1 : 0.05}`);
    }
  }
  write(dir, "fig4b_spectrum.csv", "spectrum-v1", "g3,eigen_index,eigenvalue,cat_weight", rows);
}

export function makeFig4cd(dir: string): void {
  const rows: string[] = [];
  for (let j = 0; j < 8; j++) {
    const g3 = 0.005 * (j + 1);
    rows.push(`${g3},${1 - 0.1 * j},${1 - 0.12 * j},${1 - 0.13 * j}`);
  }
  write(dir, "fig4c_ipr_curves.csv", "ipr-curves-v1", "g3,ipr_plus,ipr_minus,min_cat_weight", rows);
  mapFile(dir, "fig4d_ipr_plus.csv");
  mapFile(dir, "fig4d_ipr_minus.csv");
  mapFile(dir, "fig4d_min_cat_weight.csv");
}

export function makeFig4e(dir: string): void {
  mapFile(dir, "fig4e_baseline_raw.csv");
  mapFile(dir, "fig4e_baseline_normalized.csv");
  const rows: string[] = [];
  for (let j = 0; j < 6; j++) {
    const g3 = 0.001 + j * 0.04;
    rows.push(`${g3 / 0.06},${g3}`);
  }
  write(dir, "fig4e_boundary_curve.csv", "boundary-v1", "beta0,g3", rows);
}

export function makeFig5(dir: string): void {
  timeseries(dir, "fig5_timeseries.csv", [
    "n1",
    "n2",
    "n3",
    "sigma_z_12",
    "sigma_z_23",
    "g2_relative_deviation",
  ]);
}

export function makeS1(dir: string): void {
  timeseries(dir, "s1_plus.csv", ["sigma_z", "n1"]);
  timeseries(dir, "s1_minus.csv", ["sigma_z", "n1"]);
}

export function makeS2(dir: string): void {
  const labels = ["0|C+|0", "0|C-|0", "1|C+|0", "1|C-|0"];
  for (const k of [0, 1]) {
    const rows: string[] = [];
    for (const a of labels) {
      for (const b of labels) {
        const v = a === b ? 1.0 : (k === 0 ? 0 : 0.3 * (labels.indexOf(a) - labels.indexOf(b)));
        rows.push(`${a},${b},${v}`);
      }
    }
    mkdirSync(dir, { recursive: true });
    writeFileSync(
      join(dir, `s2_hinton_${k}.csv`),
      META + "# g3=0.5\n# schema=hinton-v1\n" + "row_label,col_label,value\n" + rows.join("\n") + "\n",
      "utf-8",
    );
  }
}

export function makePlaquette(dir: string): void {
  const rows: string[] = [];
  for (let i = 0; i < 9; i++) {
    const phi = (Math.PI * i) / 8;
    const g = 0.0048;
    const eigs = [-1, 0, 1].map((k) => -2 * g * Math.cos((2 * Math.PI * k + phi) / 3)).sort((a, b) => a - b);
    rows.push(`${phi},${eigs[0]},${eigs[1]},${eigs[2]}`);
  }
  write(dir, "plaquette_momentum_spectrum.csv", "plaquette-v1", "phi,eig0,eig1,eig2", rows);
}

export const MAKERS: Record<string, (dir: string) => void> = {
  fig2: makeFig2,
  fig3a: makeFig3a,
  fig3b: makeFig3b,
  fig4a: makeFig4a,
  fig4b: makeFig4b,
  fig4cd: makeFig4cd,
  fig4e: makeFig4e,
  fig5: makeFig5,
  s1: makeS1,
  "s2-hinton": makeS2,
  plaquette: makePlaquette,
};
