import type { Rgb } from "./types.js";

/**
 * Marker color for a relatedness value: linear interpolation in RGB
 * from blue (0,0,255) at 0 to red (255,0,0) at 1, each channel rounded
 * half-up.  Out-of-range input is clamped.
 */
export function colorForRelatedness(relatedness: number): Rgb {
  const r = Math.min(Math.max(relatedness, 0), 1);
  // Math.round rounds half-up for nonnegative values.
  return [Math.round(255 * r), 0, Math.round(255 * (1 - r))];
}

export function cssColor([red, green, blue]: Rgb): string {
  return `rgb(${red}, ${green}, ${blue})`;
}
