import { describe, expect, it } from "vitest";

import { colorForRelatedness, cssColor } from "../src/color.js";

describe("colorForRelatedness", () => {
  it("is pure red at relatedness 1", () => {
    expect(colorForRelatedness(1.0)).toEqual([255, 0, 0]);
  });

  it("is pure blue at relatedness 0", () => {
    expect(colorForRelatedness(0.0)).toEqual([0, 0, 255]);
  });

  it("rounds the midpoint half-up", () => {
    // 255 * 0.5 = 127.5 rounds half-up to 128 on both channels
    expect(colorForRelatedness(0.5)).toEqual([128, 0, 128]);
  });

  it("clamps out-of-range input", () => {
    expect(colorForRelatedness(-0.25)).toEqual([0, 0, 255]);
    expect(colorForRelatedness(1.75)).toEqual([255, 0, 0]);
  });

  it("keeps the green channel at zero and channels in range over a 0.01 sweep", () => {
    for (let i = 0; i <= 100; i++) {
      const [red, green, blue] = colorForRelatedness(i / 100);
      expect(green).toBe(0);
      expect(red).toBeGreaterThanOrEqual(0);
      expect(red).toBeLessThanOrEqual(255);
      expect(blue).toBeGreaterThanOrEqual(0);
      expect(blue).toBeLessThanOrEqual(255);
    }
  });

  it("is monotone: red never decreases and blue never increases as relatedness grows", () => {
    let [prevRed, , prevBlue] = colorForRelatedness(0);
    for (let i = 1; i <= 100; i++) {
      const [red, , blue] = colorForRelatedness(i / 100);
      expect(red).toBeGreaterThanOrEqual(prevRed);
      expect(blue).toBeLessThanOrEqual(prevBlue);
      [prevRed, prevBlue] = [red, blue];
    }
  });
});

describe("cssColor", () => {
  it("formats an rgb() string", () => {
    expect(cssColor([128, 0, 128])).toBe("rgb(128, 0, 128)");
  });
});
