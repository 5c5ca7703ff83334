import { describe, expect, it } from "vitest";

import { coolwarm, divergingColor, hex, sequentialColor, viridis } from "../src/colormap.js";

describe("colormaps", () => {
  it("viridis spans dark purple to yellow", () => {
    expect(hex(viridis(0))).toBe("#440154");
    expect(hex(viridis(1))).toBe("#fde725");
  });

  it("clamps out-of-range inputs", () => {
    expect(hex(viridis(-5))).toBe(hex(viridis(0)));
    expect(hex(viridis(5))).toBe(hex(viridis(1)));
  });

  it("coolwarm is symmetric around the midpoint", () => {
    const lo = coolwarm(0.5 - 0.3);
    const hi = coolwarm(0.5 + 0.3);
    // red channel grows toward +, blue channel grows toward -
    expect(hi[0]).toBeGreaterThan(lo[0]);
    expect(lo[2]).toBeGreaterThan(hi[2]);
  });

  it("divergingColor is sign-symmetric about zero", () => {
    const absMax = 0.7;
    // zero sits exactly at the scale midpoint
    expect(divergingColor(0, absMax)).toBe(hex(coolwarm(0.5)));
    // equal magnitudes land at mirrored scale positions
    for (const v of [0.1, 0.33, 0.7]) {
      expect(divergingColor(v, absMax)).toBe(hex(coolwarm(0.5 + 0.5 * (v / absMax))));
      expect(divergingColor(-v, absMax)).toBe(hex(coolwarm(0.5 - 0.5 * (v / absMax))));
    }
    // saturation clamps symmetrically at the endpoints
    expect(divergingColor(10, absMax)).toBe(hex(coolwarm(1)));
    expect(divergingColor(-10, absMax)).toBe(hex(coolwarm(0)));
  });

  it("sequentialColor handles degenerate ranges", () => {
    expect(sequentialColor(1, 1, 1)).toBe(hex(viridis(0.5)));
  });
});
