/**
 * Contour rendering of a dump field to SVG.
 *
 * Geometry comes from d3-contour (marching squares over the row-major
 * cell values); the rings are mapped from grid-index space into a fixed
 * 640-px-wide canvas with the y axis pointing up, so the image extents
 * match the dump header.  Output is a pure function of the inputs:
 * identical dumps give byte-identical SVG.
 */

import { contours } from "d3-contour";

import type { FieldDump } from "./io.js";
import { getField } from "./io.js";
import type { LevelRange } from "./levels.js";
import { contourLevels, fieldRange, isDegenerate } from "./levels.js";

export interface StyleConfig {
  widthPx: number;
  marginPx: number;
  strokeWidth: number;
  background: string;
  /** stroke colors cycled across levels, low to high */
  palette: string[];
  fontFamily: string;
  fontSizePx: number;
}

/** Checked-in defaults so figure replicas stay stable across versions. */
export const DEFAULT_STYLE: StyleConfig = {
  widthPx: 640,
  marginPx: 40,
  strokeWidth: 1.0,
  background: "#ffffff",
  palette: ["#2166ac", "#4393c3", "#92c5de", "#aaaaaa", "#f4a582", "#d6604d", "#b2182b"],
  fontFamily: "sans-serif",
  fontSizePx: 12,
};

export interface RenderResult {
  svg: string;
  levels: number[];
  range: LevelRange;
  degenerate: boolean;
}

function fmt(v: number): string {
  return Number(v.toPrecision(6)).toString();
}

export function renderContours(
  dump: FieldDump,
  variable: string,
  count: number,
  explicitRange?: LevelRange,
  style: StyleConfig = DEFAULT_STYLE,
): RenderResult {
  const values = getField(dump, variable);
  const { nx, ny, dx, dy, x0, y0 } = dump.grid;
  const range = explicitRange ?? fieldRange(values);

  const plotW = style.widthPx - 2 * style.marginPx;
  const plotH = (plotW * (ny * dy)) / (nx * dx);
  const width = style.widthPx;
  const height = plotH + 2 * style.marginPx;

  // grid index -> pixel; the dump is row-major from the south, SVG y runs down
  const sx = (gx: number) => style.marginPx + (gx / nx) * plotW;
  const sy = (gy: number) => style.marginPx + plotH - (gy / ny) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
      `height="${height}" viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(
    `<rect width="${width}" height="${height}" fill="${style.background}"/>`,
  );

  const degenerate = isDegenerate(range);
  let levels: number[] = [];
  if (degenerate) {
    parts.push(
      `<text x="${width / 2}" y="${height / 2}" text-anchor="middle" ` +
        `font-family="${style.fontFamily}" font-size="${style.fontSizePx}">` +
        `${variable} is constant (${fmt(range.min)}); no contours</text>`,
    );
  } else {
    levels = contourLevels(range, count);
    const generator = contours().size([nx, ny]).thresholds(levels);
    const polys = generator(values as unknown as number[]);
    for (const [k, multi] of polys.entries()) {
      const color = style.palette[k % style.palette.length];
      const d: string[] = [];
      for (const polygon of multi.coordinates) {
        for (const ring of polygon) {
          ring.forEach(([gx, gy], idx) => {
            d.push(`${idx === 0 ? "M" : "L"}${fmt(sx(gx))},${fmt(sy(gy))}`);
          });
          d.push("Z");
        }
      }
      if (d.length > 0) {
        parts.push(
          `<path d="${d.join("")}" fill="none" stroke="${color}" ` +
            `stroke-width="${style.strokeWidth}"/>`,
        );
      }
    }
  }

  // frame and legend with the level extremes and axis extents
  parts.push(
    `<rect x="${style.marginPx}" y="${style.marginPx}" width="${plotW}" ` +
      `height="${fmt(plotH)}" fill="none" stroke="#000000"/>`,
  );
  const legend = degenerate
    ? `${variable} = ${fmt(range.min)}`
    : `${variable}: ${count} levels in [${fmt(range.min)}, ${fmt(range.max)}]`;
  parts.push(
    `<text x="${style.marginPx}" y="${fmt(height - style.marginPx / 3)}" ` +
      `font-family="${style.fontFamily}" font-size="${style.fontSizePx}">` +
      `${legend} | x: [${fmt(x0)}, ${fmt(x0 + nx * dx)}] ` +
      `y: [${fmt(y0)}, ${fmt(y0 + ny * dy)}] t=${fmt(dump.time)}</text>`,
  );
  parts.push("</svg>");
  return { svg: parts.join("\n"), levels, range, degenerate };
}
