/** Batch rendering of a dump sequence with a shared contour scale. */

import { readdirSync } from "node:fs";
import { basename, dirname, join } from "node:path";

import type { FieldDump } from "./io.js";
import { DumpError, getField, readDump, sameGrid } from "./io.js";
import { fieldRange, type LevelRange } from "./levels.js";
import {
  DEFAULT_STYLE,
  renderContours,
  type RenderResult,
  type StyleConfig,
} from "./render.js";

/** Expand a glob of the restricted form dir/prefix*suffix (sorted). */
export function expandGlob(pattern: string): string[] {
  const dir = dirname(pattern);
  const name = basename(pattern);
  const star = name.indexOf("*");
  if (star < 0) return [pattern];
  const prefix = name.slice(0, star);
  const suffix = name.slice(star + 1);
  if (suffix.includes("*")) {
    throw new DumpError(`only one '*' supported in glob: ${pattern}`);
  }
  return readdirSync(dir)
    .filter((f) => f.startsWith(prefix) && f.endsWith(suffix))
    .sort()
    .map((f) => join(dir, f));
}

export interface SeriesItem {
  path: string;
  result: RenderResult;
}

/**
 * Render every dump against one shared level range (the union of the
 * per-dump field ranges), so frames are directly comparable.  All dumps
 * must share the grid.
 */
export function renderSeries(
  paths: string[],
  variable: string,
  count: number,
  style: StyleConfig = DEFAULT_STYLE,
): SeriesItem[] {
  if (paths.length === 0) {
    throw new DumpError("series needs at least one dump");
  }
  const dumps: FieldDump[] = paths.map((p) => readDump(p));
  for (let i = 1; i < dumps.length; i++) {
    if (!sameGrid(dumps[0].grid, dumps[i].grid)) {
      throw new DumpError(
        `mixed grids in series: ${paths[0]} is ` +
          `${dumps[0].grid.nx}x${dumps[0].grid.ny}, ${paths[i]} is ` +
          `${dumps[i].grid.nx}x${dumps[i].grid.ny}`,
      );
    }
  }
  const shared: LevelRange = { min: Infinity, max: -Infinity };
  for (const dump of dumps) {
    const r = fieldRange(getField(dump, variable));
    shared.min = Math.min(shared.min, r.min);
    shared.max = Math.max(shared.max, r.max);
  }
  return dumps.map((dump, i) => ({
    path: paths[i],
    result: renderContours(dump, variable, count, shared, style),
  }));
}
