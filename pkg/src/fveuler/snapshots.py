"""Field snapshots and run diagnostics: CSV and legacy-VTK writers, the
slice table used for scatter plots, and the mirror-asymmetry metric."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .grid import StructuredGrid

SNAPSHOT_COLUMNS = ("x", "y", "rho", "u", "v", "p")


@dataclass(frozen=True)
class FieldSnapshot:
    """Primitive field plus cell-center coordinates at one instant."""

    time: float
    prim: np.ndarray      # (ni, nj, 4)
    x: np.ndarray         # (ni, nj)
    y: np.ndarray         # (ni, nj)

    def __post_init__(self):
        if self.prim.ndim != 3 or self.prim.shape[2] != 4:
            raise ValueError(f"bad field shape {self.prim.shape}")
        if self.x.shape != self.prim.shape[:2] or self.y.shape != self.x.shape:
            raise ValueError("coordinate shapes do not match the field")


def snapshot_from_grid(grid: StructuredGrid, prim: np.ndarray,
                       time: float) -> FieldSnapshot:
    return FieldSnapshot(time=time, prim=np.array(prim),
                         x=grid.cell_center[..., 0].copy(),
                         y=grid.cell_center[..., 1].copy())


def snapshot_filename(case: str, time: float) -> str:
    return f"snap_{case}_{time:.6f}.csv"


def write_snapshot_csv(snap: FieldSnapshot, path) -> None:
    """Row-major cell rows (i fastest), full-precision decimal floats."""
    prim = snap.prim
    ni, nj = prim.shape[:2]
    with open(path, "w", newline="") as fh:
        fh.write(",".join(SNAPSHOT_COLUMNS) + "\n")
        for j in range(nj):
            for i in range(ni):
                row = (snap.x[i, j], snap.y[i, j], prim[i, j, 0],
                       prim[i, j, 1], prim[i, j, 2], prim[i, j, 3])
                fh.write(",".join("%.17g" % v for v in row) + "\n")


def read_snapshot_csv(path) -> dict:
    """Columns of a snapshot file as flat arrays, in file order."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != SNAPSHOT_COLUMNS:
            raise ValueError(f"unexpected snapshot header {header}")
        data = np.array([[float(v) for v in row] for row in reader])
    return {name: data[:, k] for k, name in enumerate(SNAPSHOT_COLUMNS)}


def reshape_snapshot_columns(cols: dict, ni: int) -> dict:
    """Rebuild (ni, nj) arrays from flat file order (i fastest)."""
    n = cols["x"].size
    if n % ni:
        raise ValueError(f"{n} rows do not divide into rows of {ni}")
    return {k: v.reshape(n // ni, ni).T for k, v in cols.items()}


def write_vtk(snap: FieldSnapshot, grid: StructuredGrid, path) -> None:
    """Legacy ASCII structured-grid file with the primitive cell data."""
    ni, nj = grid.ni, grid.nj
    with open(path, "w") as fh:
        fh.write("# vtk DataFile Version 3.0\n")
        fh.write(f"fveuler snapshot t={snap.time:.6f}\n")
        fh.write("ASCII\nDATASET STRUCTURED_GRID\n")
        fh.write(f"DIMENSIONS {ni + 1} {nj + 1} 1\n")
        fh.write(f"POINTS {(ni + 1) * (nj + 1)} double\n")
        for j in range(nj + 1):
            for i in range(ni + 1):
                vx, vy = grid.vertices[i, j]
                fh.write("%.17g %.17g 0\n" % (vx, vy))
        fh.write(f"CELL_DATA {ni * nj}\n")
        for k, name in enumerate(("rho", "u", "v", "p")):
            fh.write(f"SCALARS {name} double 1\nLOOKUP_TABLE default\n")
            for j in range(nj):
                for i in range(ni):
                    fh.write("%.17g\n" % snap.prim[i, j, k])


def slice_scatter(snap: FieldSnapshot, component: int = 0,
                  axis: str = "x") -> np.ndarray:
    """(coordinate, value) rows across all grid lines of the other index.

    axis "x": one slice per j, cells in i order within each slice; axis "y"
    transposes the roles. Ordering is deterministic: slices outer, cells
    inner.
    """
    val = snap.prim[..., component]
    if axis == "x":
        coord = snap.x
        rows = [(coord[i, j], val[i, j])
                for j in range(coord.shape[1]) for i in range(coord.shape[0])]
    elif axis == "y":
        coord = snap.y
        rows = [(coord[i, j], val[i, j])
                for i in range(coord.shape[0]) for j in range(coord.shape[1])]
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    return np.array(rows)


def asymmetry_metric(prim: np.ndarray, rho_ref: float = 1.0,
                     axis: str = "j") -> float:
    """Largest mirrored-pair density mismatch relative to a reference.

    The grid must be geometrically symmetric about the midline of the given
    index direction; the metric is zero exactly on mirror-symmetric fields.
    """
    rho = prim[..., 0] if prim.ndim == 3 else prim
    mirrored = rho[:, ::-1] if axis == "j" else rho[::-1, :]
    return float(np.max(np.abs(rho - mirrored)) / rho_ref)


class RunLog:
    """Per-step diagnostics table: step,t,dt,min_p,max_speed,fallback_count."""

    def __init__(self, path):
        self.path = path
        self._fh = open(path, "w")
        self._fh.write("step,t,dt,min_p,max_speed,fallback_count\n")

    def add(self, step: int, t: float, dt: float, min_p: float,
            max_speed: float, fallback_count: int) -> None:
        self._fh.write("%d,%.17g,%.17g,%.17g,%.17g,%d\n"
                       % (step, t, dt, min_p, max_speed, fallback_count))

    def close(self) -> None:
        self._fh.close()


def write_failure_record(path, case: str, time: float, step: int, cell,
                         reason: str) -> None:
    record = {
        "case": case,
        "time": time,
        "step": step,
        "cell": [int(c) for c in cell] if cell is not None else None,
        "reason": reason,
    }
    with open(path, "w") as fh:
        json.dump(record, fh, indent=2)
        fh.write("\n")
