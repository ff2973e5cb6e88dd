/**
 * Readers for the solver's dump formats: CSV with a `# nx=... t=...`
 * metadata line, and legacy ASCII VTK STRUCTURED_POINTS.  Both carry the
 * grid geometry in the header and one value per cell in row-major order
 * (y outer, x inner).
 */

import { readFileSync } from "node:fs";
import { extname } from "node:path";

export interface GridInfo {
  nx: number;
  ny: number;
  dx: number;
  dy: number;
  x0: number;
  y0: number;
}

export interface FieldDump {
  grid: GridInfo;
  time: number;
  /** row-major (ny * nx) values per named field */
  fields: Map<string, Float64Array>;
}

export class DumpError extends Error {}

function parseMeta(line: string): { grid: GridInfo; time: number } {
  const meta = new Map<string, string>();
  for (const tok of line.slice(1).trim().split(/\s+/)) {
    const eq = tok.indexOf("=");
    if (eq > 0) meta.set(tok.slice(0, eq), tok.slice(eq + 1));
  }
  for (const key of ["nx", "ny", "dx", "dy", "x0", "y0", "t"]) {
    if (!meta.has(key)) throw new DumpError(`metadata line lacks ${key}=`);
  }
  return {
    grid: {
      nx: Number(meta.get("nx")),
      ny: Number(meta.get("ny")),
      dx: Number(meta.get("dx")),
      dy: Number(meta.get("dy")),
      x0: Number(meta.get("x0")),
      y0: Number(meta.get("y0")),
    },
    time: Number(meta.get("t")),
  };
}

export function parseCsvDump(text: string, name = "<csv>"): FieldDump {
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  if (lines.length < 2 || !lines[0].startsWith("#")) {
    throw new DumpError(`${name}: missing metadata line`);
  }
  const { grid, time } = parseMeta(lines[0]);
  const header = lines[1].split(",");
  if (header[0] !== "x" || header[1] !== "y") {
    throw new DumpError(`${name}: header must start with x,y`);
  }
  const names = header.slice(2);
  const n = grid.nx * grid.ny;
  if (lines.length - 2 !== n) {
    throw new DumpError(
      `${name}: expected ${n} data rows, found ${lines.length - 2}`,
    );
  }
  const fields = new Map<string, Float64Array>(
    names.map((nm) => [nm, new Float64Array(n)]),
  );
  for (let r = 0; r < n; r++) {
    const cols = lines[2 + r].split(",");
    if (cols.length !== 2 + names.length) {
      throw new DumpError(`${name}: malformed row ${r + 3}`);
    }
    for (let k = 0; k < names.length; k++) {
      const v = Number(cols[2 + k]);
      if (Number.isNaN(v)) {
        throw new DumpError(`${name}: non-numeric value in row ${r + 3}`);
      }
      fields.get(names[k])![r] = v;
    }
  }
  return { grid, time, fields };
}

export function parseVtkDump(text: string, name = "<vtk>"): FieldDump {
  const lines = text.split(/\r?\n/);
  if (!lines[0]?.startsWith("# vtk DataFile")) {
    throw new DumpError(`${name}: not a legacy VTK file`);
  }
  const time = lines[1]?.startsWith("t=") ? Number(lines[1].slice(2)) : 0;
  if (lines[2] !== "ASCII" || lines[3] !== "DATASET STRUCTURED_POINTS") {
    throw new DumpError(`${name}: unsupported VTK layout`);
  }
  const dims = lines[4].split(/\s+/).slice(1).map(Number);
  const origin = lines[5].split(/\s+/).slice(1).map(Number);
  const spacing = lines[6].split(/\s+/).slice(1).map(Number);
  const [nx, ny, nz] = dims;
  if (nz !== 1) throw new DumpError(`${name}: expected a single z-slice`);
  const n = nx * ny;
  const npts = Number(lines[7].split(/\s+/)[1]);
  if (npts !== n) throw new DumpError(`${name}: POINT_DATA ${npts} != ${n}`);
  const grid: GridInfo = {
    nx,
    ny,
    dx: spacing[0],
    dy: spacing[1],
    x0: origin[0] - 0.5 * spacing[0],
    y0: origin[1] - 0.5 * spacing[1],
  };
  const fields = new Map<string, Float64Array>();
  let k = 8;
  while (k < lines.length) {
    const line = lines[k].trim();
    if (line.length === 0) {
      k++;
      continue;
    }
    const tok = line.split(/\s+/);
    if (tok[0] !== "SCALARS") {
      throw new DumpError(`${name}: unexpected section ${lines[k]}`);
    }
    const fieldName = tok[1];
    k += 2; // skip LOOKUP_TABLE
    const vals = new Float64Array(n);
    let filled = 0;
    while (filled < n) {
      for (const v of lines[k].trim().split(/\s+/)) {
        vals[filled++] = Number(v);
      }
      k++;
    }
    fields.set(fieldName, vals);
  }
  return { grid, time, fields };
}

/** Read a dump, picking the parser from the file extension. */
export function readDump(path: string): FieldDump {
  const text = readFileSync(path, "utf8");
  const dump =
    extname(path).toLowerCase() === ".vtk"
      ? parseVtkDump(text, path)
      : parseCsvDump(text, path);
  return dump;
}

export function getField(dump: FieldDump, name: string): Float64Array {
  const values = dump.fields.get(name);
  if (values === undefined) {
    const have = [...dump.fields.keys()].join(", ");
    throw new DumpError(`variable '${name}' not in dump (have: ${have})`);
  }
  return values;
}

export function sameGrid(a: GridInfo, b: GridInfo): boolean {
  return (
    a.nx === b.nx &&
    a.ny === b.ny &&
    a.dx === b.dx &&
    a.dy === b.dy &&
    a.x0 === b.x0 &&
    a.y0 === b.y0
  );
}
