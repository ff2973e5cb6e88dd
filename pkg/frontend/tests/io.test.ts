import { readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import {
  DumpError,
  getField,
  parseCsvDump,
  parseVtkDump,
  readDump,
  sameGrid,
} from "../src/io.js";

const FIX = join(__dirname, "fixtures");

describe("CSV dumps", () => {
  it("reads grid metadata, time, and fields", () => {
    const dump = readDump(join(FIX, "height.csv"));
    expect(dump.grid.nx).toBe(40);
    expect(dump.grid.ny).toBe(40);
    expect(dump.grid.dx).toBeCloseTo(0.025, 12);
    expect(dump.time).toBe(0);
    expect([...dump.fields.keys()]).toEqual(["h", "u", "v"]);
    const h = getField(dump, "h");
    expect(h).toHaveLength(1600);
    // exp(cos*cos) stays within [1/e, e]
    expect(Math.min(...h)).toBeGreaterThan(0.36);
    expect(Math.max(...h)).toBeLessThan(2.72);
  });

  it("round-trips values at full double precision", () => {
    const dump = readDump(join(FIX, "psi.csv"));
    const psi = getField(dump, "psi");
    // the writer prints 17 significant digits; parsing must not lose any
    const text = `# nx=1 ny=1 dx=1 dy=1 x0=0 y0=0 t=0\nx,y,v\n0.5,0.5,${psi[5]}\n`;
    const again = parseCsvDump(text);
    expect(getField(again, "v")[0]).toBe(psi[5]);
  });

  it("rejects files without the metadata line", () => {
    expect(() => parseCsvDump("x,y,v\n0.5,0.5,1\n")).toThrow(DumpError);
  });

  it("rejects row-count mismatches", () => {
    const text = "# nx=2 ny=2 dx=1 dy=1 x0=0 y0=0 t=0\nx,y,v\n0.5,0.5,1\n";
    expect(() => parseCsvDump(text)).toThrow(/expected 4 data rows/);
  });

  it("names the missing variable", () => {
    const dump = readDump(join(FIX, "psi.csv"));
    expect(() => getField(dump, "zeta")).toThrow(/zeta.*have: psi/);
  });
});

describe("VTK dumps", () => {
  it("agrees with the CSV twin of the same field", () => {
    const csv = readDump(join(FIX, "psi.csv"));
    const vtk = readDump(join(FIX, "psi.vtk"));
    expect(sameGrid(csv.grid, vtk.grid)).toBe(true);
    expect(vtk.time).toBe(csv.time);
    const a = getField(csv, "psi");
    const b = getField(vtk, "psi");
    expect(b).toHaveLength(a.length);
    for (let i = 0; i < a.length; i++) expect(b[i]).toBe(a[i]);
  });

  it("rejects non-VTK content", () => {
    const text = readFileSync(join(FIX, "height.csv"), "utf8");
    expect(() => parseVtkDump(text)).toThrow(DumpError);
  });
});
