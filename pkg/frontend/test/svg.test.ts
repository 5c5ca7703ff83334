import { describe, expect, it } from "vitest";

import { SvgBuilder, fmt, linearScale, tickLabel, ticks } from "../src/svg.js";

describe("fmt", () => {
  it("rounds to two decimals and normalizes -0", () => {
    expect(fmt(1.23456)).toBe("1.23");
    expect(fmt(-0.0001)).toBe("0");
    expect(fmt(NaN)).toBe("0");
  });
});

describe("SvgBuilder", () => {
  it("produces a well-formed document", () => {
    const svg = new SvgBuilder(100, 50);
    svg.rect(0, 0, 100, 50, "#ffffff");
    svg.line(0, 0, 10, 10, "#000000", 1);
    svg.text(5, 5, "a < b & c", "10px sans-serif", "#222222");
    const doc = svg.render();
    expect(doc).toContain('viewBox="0 0 100 50"');
    expect(doc).toContain("a &lt; b &amp; c");
    expect((doc.match(/<svg/g) ?? []).length).toBe(1);
  });
});

describe("scales and ticks", () => {
  it("maps domains linearly", () => {
    const s = linearScale([0, 10], [100, 200]);
    expect(s(0)).toBe(100);
    expect(s(5)).toBe(150);
    expect(s(10)).toBe(200);
  });

  it("handles degenerate domains", () => {
    const s = linearScale([3, 3], [0, 10]);
    expect(Number.isFinite(s(3))).toBe(true);
  });

  it("generates round tick values inside the domain", () => {
    const t = ticks([0, 0.48]);
    expect(t[0]).toBeGreaterThanOrEqual(0);
    expect(t[t.length - 1]).toBeLessThanOrEqual(0.48 + 1e-12);
    expect(t.length).toBeGreaterThanOrEqual(3);
  });

  it("formats tiny and large ticks in scientific notation", () => {
    expect(tickLabel(0.0001)).toBe("1.0e-4");
    expect(tickLabel(0)).toBe("0");
    expect(tickLabel(0.25)).toBe("0.25");
  });
});
