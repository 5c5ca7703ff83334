export { render, FIGURES } from "./figures.js";
export { readCsv, channels, pivotGrid, wignerField, wignerSites } from "./csv.js";
export { viridis, coolwarm, hex, sequentialColor, divergingColor } from "./colormap.js";
export { SvgBuilder } from "./svg.js";
export { STYLE } from "./style.js";
