/** Single style file: every data-to-pixel choice the figures share. */

export const STYLE = {
  font: "11px sans-serif",
  fontColor: "#222222",
  axisColor: "#444444",
  gridColor: "#dddddd",
  background: "#ffffff",
  panelWidth: 320,
  panelHeight: 220,
  heatmapSize: 220,
  margin: { left: 52, right: 16, top: 28, bottom: 40 },
  gap: 18,
  lineWidth: 1.6,
  seriesPalette: [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
  ],
  boundaryCurve: {
    color: "#000000",
    width: 1.8,
    dash: "6,4",
  },
  hinton: {
    positive: "#1f77b4",
    negative: "#d62728",
    background: "#f5f5f5",
  },
} as const;
