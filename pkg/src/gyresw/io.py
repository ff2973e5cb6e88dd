"""Field serialization: CSV and legacy-VTK structured-points dumps.

Both formats carry the grid geometry and simulated time in their header,
hold one value row (CSV) or scalar block (VTK) per cell in row-major
order, and print doubles with 17 significant digits so that a read of a
write reproduces the original values bit-exactly.
"""

import json
import os

import numpy as np

from .state import Grid


class FieldDump:
    """Grid + time + named cell-center fields, as read back from disk."""

    def __init__(self, grid, time, fields):
        self.grid = grid
        self.time = float(time)
        self.fields = dict(fields)

    def __getitem__(self, name):
        return self.fields[name]


def _fmt(x):
    return format(float(x), ".17g")


def _meta_line(grid, time):
    return ("# nx=%d ny=%d dx=%s dy=%s x0=%s y0=%s t=%s"
            % (grid.nx, grid.ny, _fmt(grid.dx), _fmt(grid.dy),
               _fmt(grid.x0), _fmt(grid.y0), _fmt(time)))


def write_csv(path, grid, time, fields):
    """Write named interior fields as `x,y,<names>` rows.

    fields: mapping name -> (ny, nx) array.  Rows run row-major (y outer,
    x inner) over cell centers.
    """
    names = list(fields)
    arrs = []
    for name in names:
        a = np.asarray(fields[name], dtype=float)
        if a.shape != (grid.ny, grid.nx):
            raise ValueError(
                f"field {name!r} has shape {a.shape}, expected "
                f"{(grid.ny, grid.nx)}")
        arrs.append(a)
    x, y = grid.cell_centers()
    with open(path, "w") as fh:
        fh.write(_meta_line(grid, time) + "\n")
        fh.write(",".join(["x", "y"] + names) + "\n")
        for j in range(grid.ny):
            for i in range(grid.nx):
                row = [_fmt(x[i]), _fmt(y[j])]
                row += [_fmt(a[j, i]) for a in arrs]
                fh.write(",".join(row) + "\n")


def read_csv(path):
    """Read a dump written by :func:`write_csv`."""
    with open(path) as fh:
        meta_line = fh.readline().strip()
        if not meta_line.startswith("#"):
            raise ValueError(f"{path}: missing metadata line")
        header = fh.readline().strip()
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    meta = dict(tok.split("=", 1) for tok in meta_line[1:].split())
    nx, ny = int(meta["nx"]), int(meta["ny"])
    grid = Grid(nx=nx, ny=ny, dx=float(meta["dx"]), dy=float(meta["dy"]),
                x0=float(meta["x0"]), y0=float(meta["y0"]))
    names = header.split(",")[2:]
    if data.shape != (nx * ny, 2 + len(names)):
        raise ValueError(f"{path}: expected {nx * ny} rows of "
                         f"{2 + len(names)} columns, got {data.shape}")
    fields = {name: data[:, 2 + k].reshape(ny, nx)
              for k, name in enumerate(names)}
    return FieldDump(grid, float(meta["t"]), fields)


def write_vtk(path, grid, time, fields):
    """Legacy ASCII STRUCTURED_POINTS dump of named interior fields.

    Cell centers become the points; spacing is (dx, dy, 1).
    """
    with open(path, "w") as fh:
        fh.write("# vtk DataFile Version 3.0\n")
        fh.write(f"t={_fmt(time)}\n")
        fh.write("ASCII\n")
        fh.write("DATASET STRUCTURED_POINTS\n")
        fh.write(f"DIMENSIONS {grid.nx} {grid.ny} 1\n")
        fh.write(f"ORIGIN {_fmt(grid.x0 + 0.5 * grid.dx)} "
                 f"{_fmt(grid.y0 + 0.5 * grid.dy)} 0\n")
        fh.write(f"SPACING {_fmt(grid.dx)} {_fmt(grid.dy)} 1\n")
        fh.write(f"POINT_DATA {grid.nx * grid.ny}\n")
        for name, arr in fields.items():
            a = np.asarray(arr, dtype=float)
            if a.shape != (grid.ny, grid.nx):
                raise ValueError(
                    f"field {name!r} has shape {a.shape}, expected "
                    f"{(grid.ny, grid.nx)}")
            fh.write(f"SCALARS {name} double 1\n")
            fh.write("LOOKUP_TABLE default\n")
            for j in range(grid.ny):
                fh.write(" ".join(_fmt(v) for v in a[j]) + "\n")


def read_vtk(path):
    """Read a dump written by :func:`write_vtk`."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines[0].startswith("# vtk DataFile"):
        raise ValueError(f"{path}: not a legacy VTK file")
    time = 0.0
    if lines[1].startswith("t="):
        time = float(lines[1][2:])
    if lines[2] != "ASCII" or lines[3] != "DATASET STRUCTURED_POINTS":
        raise ValueError(f"{path}: unsupported VTK layout")
    nx, ny, nz = (int(v) for v in lines[4].split()[1:])
    ox, oy, _ = (float(v) for v in lines[5].split()[1:])
    dx, dy, _ = (float(v) for v in lines[6].split()[1:])
    if nz != 1:
        raise ValueError(f"{path}: expected a single z-slice")
    npts = int(lines[7].split()[1])
    if npts != nx * ny:
        raise ValueError(f"{path}: POINT_DATA {npts} != {nx * ny}")
    grid = Grid(nx=nx, ny=ny, dx=dx, dy=dy,
                x0=ox - 0.5 * dx, y0=oy - 0.5 * dy)
    fields = {}
    k = 8
    while k < len(lines):
        if not lines[k].strip():
            k += 1
            continue
        tok = lines[k].split()
        if tok[0] != "SCALARS":
            raise ValueError(f"{path}: unexpected section {lines[k]!r}")
        name = tok[1]
        k += 2   # skip LOOKUP_TABLE
        vals = []
        while len(vals) < npts:
            vals += [float(v) for v in lines[k].split()]
            k += 1
        fields[name] = np.array(vals).reshape(ny, nx)
    return FieldDump(grid, time, fields)


def write_provenance(path, config):
    """Echo the effective run configuration as JSON next to the outputs."""
    with open(path, "w") as fh:
        json.dump(config, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def ensure_out_dir(out):
    """Resolve the output directory (GYRE_OUT_DIR fallback) and create it."""
    if out is None:
        out = os.environ.get("GYRE_OUT_DIR", ".")
    os.makedirs(out, exist_ok=True)
    return out
