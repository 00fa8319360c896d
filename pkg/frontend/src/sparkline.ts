/** Tiny unicode sparkline for the live best-quality curve. */

const BARS = ["▁", "▂", "▃", "▄", "▅", "▆", "▇", "█"];

/**
 * Render values as a block-character strip. The last `width` points are
 * kept; the y-range is [min, max] of the shown window (flat series render
 * as a flat mid-height line).
 */
export function renderSparkline(values: number[], width = 60): string {
  const shown = values.slice(-width);
  if (shown.length === 0) return "";
  const lo = Math.min(...shown);
  const hi = Math.max(...shown);
  const span = hi - lo;
  return shown
    .map((v) => {
      const t = span === 0 ? 0.5 : (v - lo) / span;
      const idx = Math.min(BARS.length - 1, Math.floor(t * BARS.length));
      return BARS[idx];
    })
    .join("");
}
