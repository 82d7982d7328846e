"""Structured quadrilateral grids, face metrics, and ghost-cell boundaries.

Cells are straight-edged quads indexed (i, j). Metrics are derived directly
from edge vectors, so the discrete divergence of the face-normal field
telescopes to zero around every cell by construction. Two ghost layers are
always built, supporting both first- and second-order stencils on the same
code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDimensionsError
from .state import validate_primitive

SIDES = ("imin", "imax", "jmin", "jmax")
NGHOST = 2

_STATE_KINDS = ("dirichlet", "inflow")
_KINDS = ("periodic", "extrapolation", "extrapolation-linear",
          "wall") + _STATE_KINDS


@dataclass(frozen=True)
class BoundaryKind:
    """Boundary treatment of one grid side.

    kinds: periodic, extrapolation (zeroth-order copy), extrapolation-linear
    (opt-in linear extension with validity fallback to the copy), wall
    (mirror with the face-normal velocity negated), dirichlet / inflow
    (fixed state written into the ghosts).
    """

    kind: str
    state: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown boundary kind {self.kind!r}")
        if self.kind in _STATE_KINDS:
            if self.state is None:
                raise ValueError(f"{self.kind} boundary needs a state")
            st = np.asarray(self.state, dtype=np.float64)
            if st.shape != (4,):
                raise ValueError("boundary state must be a single primitive 4-vector")
            validate_primitive(st)
            object.__setattr__(self, "state", st)

    @staticmethod
    def periodic():
        return BoundaryKind("periodic")

    @staticmethod
    def extrapolation():
        return BoundaryKind("extrapolation")

    @staticmethod
    def linear_extrapolation():
        return BoundaryKind("extrapolation-linear")

    @staticmethod
    def wall():
        return BoundaryKind("wall")

    @staticmethod
    def dirichlet(state):
        return BoundaryKind("dirichlet", state=np.asarray(state, dtype=np.float64))

    @staticmethod
    def inflow(state):
        return BoundaryKind("inflow", state=np.asarray(state, dtype=np.float64))


@dataclass
class StructuredGrid:
    """Metrics of a structured quad grid plus per-side boundary kinds.

    iface arrays describe faces of constant i (normal pointing toward
    increasing i), jface arrays faces of constant j. Normals are unit
    vectors; lengths carry the face measure.
    """

    ni: int
    nj: int
    vertices: np.ndarray              # (ni+1, nj+1, 2)
    iface_normal: np.ndarray          # (ni+1, nj, 2)
    iface_length: np.ndarray          # (ni+1, nj)
    jface_normal: np.ndarray          # (ni, nj+1, 2)
    jface_length: np.ndarray          # (ni, nj+1)
    cell_area: np.ndarray             # (ni, nj)
    cell_center: np.ndarray           # (ni, nj, 2)
    bc: dict = field(default_factory=dict)

    @classmethod
    def from_vertices(cls, vertices: np.ndarray, bc: dict) -> "StructuredGrid":
        vertices = np.asarray(vertices, dtype=np.float64)
        if vertices.ndim != 3 or vertices.shape[2] != 2:
            raise InvalidDimensionsError(
                f"vertices must have shape (ni+1, nj+1, 2), got {vertices.shape}")
        ni = vertices.shape[0] - 1
        nj = vertices.shape[1] - 1
        if ni < 1 or nj < 1:
            raise InvalidDimensionsError(
                f"grid needs at least one cell per direction, got {ni}x{nj}")
        _check_bc(bc)

        # i-faces: edges running in +j; normal toward +i
        e = vertices[:, 1:, :] - vertices[:, :-1, :]
        iface_length = np.hypot(e[..., 0], e[..., 1])
        iface_normal = np.stack([e[..., 1], -e[..., 0]], axis=-1)
        iface_normal /= iface_length[..., None]

        # j-faces: edges running in +i; normal toward +j
        e = vertices[1:, :, :] - vertices[:-1, :, :]
        jface_length = np.hypot(e[..., 0], e[..., 1])
        jface_normal = np.stack([-e[..., 1], e[..., 0]], axis=-1)
        jface_normal /= jface_length[..., None]

        v00 = vertices[:-1, :-1]
        v10 = vertices[1:, :-1]
        v11 = vertices[1:, 1:]
        v01 = vertices[:-1, 1:]
        area = 0.5 * (
            v00[..., 0] * v10[..., 1] - v10[..., 0] * v00[..., 1]
            + v10[..., 0] * v11[..., 1] - v11[..., 0] * v10[..., 1]
            + v11[..., 0] * v01[..., 1] - v01[..., 0] * v11[..., 1]
            + v01[..., 0] * v00[..., 1] - v00[..., 0] * v01[..., 1]
        )
        if not np.all(area > 0.0):
            raise InvalidDimensionsError(
                "grid has non-positive cell areas (check vertex orientation)")
        center = 0.25 * (v00 + v10 + v11 + v01)

        return cls(ni=ni, nj=nj, vertices=vertices,
                   iface_normal=iface_normal, iface_length=iface_length,
                   jface_normal=jface_normal, jface_length=jface_length,
                   cell_area=area, cell_center=center, bc=dict(bc))

    def min_width(self) -> np.ndarray:
        """Per-cell width estimate: area / longest face. Used by CFL control."""
        lmax = np.maximum.reduce([
            self.iface_length[:-1, :], self.iface_length[1:, :],
            self.jface_length[:, :-1], self.jface_length[:, 1:],
        ])
        return self.cell_area / lmax

    def gauss_residual(self) -> np.ndarray:
        """Per-cell closure defect sum(length * outward normal); ~0 always."""
        rx = (self.iface_length[1:, :] * self.iface_normal[1:, :, 0]
              - self.iface_length[:-1, :] * self.iface_normal[:-1, :, 0]
              + self.jface_length[:, 1:] * self.jface_normal[:, 1:, 0]
              - self.jface_length[:, :-1] * self.jface_normal[:, :-1, 0])
        ry = (self.iface_length[1:, :] * self.iface_normal[1:, :, 1]
              - self.iface_length[:-1, :] * self.iface_normal[:-1, :, 1]
              + self.jface_length[:, 1:] * self.jface_normal[:, 1:, 1]
              - self.jface_length[:, :-1] * self.jface_normal[:, :-1, 1])
        return np.stack([rx, ry], axis=-1)


def _check_bc(bc: dict) -> None:
    for side in SIDES:
        if side not in bc:
            raise ValueError(f"boundary condition for side {side!r} missing")
        if not isinstance(bc[side], BoundaryKind):
            raise TypeError(f"bc[{side!r}] must be a BoundaryKind")
    for a, b in (("imin", "imax"), ("jmin", "jmax")):
        if (bc[a].kind == "periodic") != (bc[b].kind == "periodic"):
            raise ValueError(f"periodic boundaries must pair up on {a}/{b}")


def build_cartesian(nx: int, ny: int, x_range=(0.0, 1.0), y_range=(0.0, 1.0),
                    bc: dict | None = None) -> StructuredGrid:
    """Uniform Cartesian grid; i runs along x, j along y."""
    if nx < 1 or ny < 1:
        raise InvalidDimensionsError(f"cell counts must be positive, got {nx}x{ny}")
    if bc is None:
        bc = {s: BoundaryKind.periodic() for s in SIDES}
    x = np.linspace(x_range[0], x_range[1], nx + 1)
    y = np.linspace(y_range[0], y_range[1], ny + 1)
    vertices = np.empty((nx + 1, ny + 1, 2))
    vertices[..., 0] = x[:, None]
    vertices[..., 1] = y[None, :]
    return StructuredGrid.from_vertices(vertices, bc)


def build_annulus(r_inner: float, r_outer: float, n_radial: int, n_angular: int,
                  theta_range=(0.0, 2.0 * np.pi),
                  bc: dict | None = None) -> StructuredGrid:
    """Annular (or sector) grid of straight-edged quads.

    i runs radially outward, j counterclockwise in angle. A full circle
    closes exactly: the seam vertices are shared bitwise so periodic fluxes
    telescope. Default boundaries: extrapolation radially, periodic in angle
    for a full circle.
    """
    if n_radial < 1 or n_angular < 1:
        raise InvalidDimensionsError(
            f"cell counts must be positive, got {n_radial}x{n_angular}")
    if not 0.0 < r_inner < r_outer:
        raise InvalidDimensionsError(
            f"need 0 < r_inner < r_outer, got {r_inner}, {r_outer}")
    full_circle = abs((theta_range[1] - theta_range[0]) - 2.0 * np.pi) < 1e-12
    if bc is None:
        angular = (BoundaryKind.periodic() if full_circle
                   else BoundaryKind.extrapolation())
        bc = {"imin": BoundaryKind.extrapolation(),
              "imax": BoundaryKind.extrapolation(),
              "jmin": angular, "jmax": angular}
    r = np.linspace(r_inner, r_outer, n_radial + 1)
    theta = np.linspace(theta_range[0], theta_range[1], n_angular + 1)
    vertices = np.empty((n_radial + 1, n_angular + 1, 2))
    vertices[..., 0] = r[:, None] * np.cos(theta)[None, :]
    vertices[..., 1] = r[:, None] * np.sin(theta)[None, :]
    if full_circle:
        vertices[:, -1, :] = vertices[:, 0, :]
    return StructuredGrid.from_vertices(vertices, bc)


def fill_ghosts(field_prim: np.ndarray, grid: StructuredGrid, gas) -> np.ndarray:
    """Extend a primitive field by two ghost layers per side.

    i-direction ghosts are filled from the interior first, then j-direction
    ghosts are filled across the full extended width so corner ghosts are
    meaningful for periodic wrap-around.
    """
    ni, nj = grid.ni, grid.nj
    if field_prim.shape != (ni, nj, 4):
        raise ValueError(
            f"field shape {field_prim.shape} does not match grid {ni}x{nj}")
    g = NGHOST
    ext = np.empty((ni + 2 * g, nj + 2 * g, 4))
    ext[g:ni + g, g:nj + g] = field_prim

    _fill_side_i(ext, grid, "imin")
    _fill_side_i(ext, grid, "imax")
    _fill_side_j(ext, grid, "jmin")
    _fill_side_j(ext, grid, "jmax")
    return ext


def _mirror(q: np.ndarray, normal: np.ndarray) -> np.ndarray:
    """Reflect the velocity of primitive rows about faces with given normals."""
    out = q.copy()
    vn = q[..., 1] * normal[..., 0] + q[..., 2] * normal[..., 1]
    out[..., 1] = q[..., 1] - 2.0 * vn * normal[..., 0]
    out[..., 2] = q[..., 2] - 2.0 * vn * normal[..., 1]
    return out


def _linear_extension(q0: np.ndarray, q1: np.ndarray, factor: int) -> np.ndarray:
    """Extend past q0 by `factor` steps of the slope (q0 - q1); falls back to
    a plain copy of q0 wherever density or pressure would leave the valid
    region."""
    ext = q0 + factor * (q0 - q1)
    bad = (ext[..., 0] <= 0.0) | (ext[..., 3] <= 0.0)
    ext[bad] = q0[bad]
    return ext


def _fill_side_i(ext, grid, side):
    g = NGHOST
    ni, nj = grid.ni, grid.nj
    kind = grid.bc[side]
    inner = slice(g, nj + g)
    if side == "imin":
        gh = [g - 1, g - 2]              # ghost rows, nearest first
        adj = [g, g + 1]                 # interior rows, nearest first
        per = [ni + g - 1, ni + g - 2]
        face_n = grid.iface_normal[0]
    else:
        gh = [ni + g, ni + g + 1]
        adj = [ni + g - 1, ni + g - 2]
        per = [g, g + 1]
        face_n = grid.iface_normal[ni]

    if kind.kind == "periodic":
        ext[gh[0], inner] = ext[per[0], inner]
        ext[gh[1], inner] = ext[per[1], inner]
    elif kind.kind == "extrapolation":
        ext[gh[0], inner] = ext[adj[0], inner]
        ext[gh[1], inner] = ext[adj[0], inner]
    elif kind.kind == "extrapolation-linear":
        q0 = ext[adj[0], inner]
        q1 = ext[adj[1], inner]
        ext[gh[0], inner] = _linear_extension(q0, q1, 1)
        ext[gh[1], inner] = _linear_extension(q0, q1, 2)
    elif kind.kind in _STATE_KINDS:
        ext[gh[0], inner] = kind.state
        ext[gh[1], inner] = kind.state
    elif kind.kind == "wall":
        ext[gh[0], inner] = _mirror(ext[adj[0], inner], face_n)
        ext[gh[1], inner] = _mirror(ext[adj[1], inner], face_n)


def _fill_side_j(ext, grid, side):
    g = NGHOST
    ni, nj = grid.ni, grid.nj
    kind = grid.bc[side]
    if side == "jmin":
        gh = [g - 1, g - 2]
        adj = [g, g + 1]
        per = [nj + g - 1, nj + g - 2]
        face_n = grid.jface_normal[:, 0]
    else:
        gh = [nj + g, nj + g + 1]
        adj = [nj + g - 1, nj + g - 2]
        per = [g, g + 1]
        face_n = grid.jface_normal[:, nj]

    if kind.kind == "periodic":
        ext[:, gh[0]] = ext[:, per[0]]
        ext[:, gh[1]] = ext[:, per[1]]
    elif kind.kind == "extrapolation":
        ext[:, gh[0]] = ext[:, adj[0]]
        ext[:, gh[1]] = ext[:, adj[0]]
    elif kind.kind == "extrapolation-linear":
        q0 = ext[:, adj[0]]
        q1 = ext[:, adj[1]]
        ext[:, gh[0]] = _linear_extension(q0, q1, 1)
        ext[:, gh[1]] = _linear_extension(q0, q1, 2)
    elif kind.kind in _STATE_KINDS:
        ext[:, gh[0]] = kind.state
        ext[:, gh[1]] = kind.state
    elif kind.kind == "wall":
        # interior columns only carry valid face normals; corners mirror the
        # already-filled i-ghost columns about the nearest boundary face
        nloc = np.empty((ni + 2 * g, 2))
        nloc[g:ni + g] = face_n
        nloc[:g] = face_n[0]
        nloc[ni + g:] = face_n[-1]
        ext[:, gh[0]] = _mirror(ext[:, adj[0]], nloc)
        ext[:, gh[1]] = _mirror(ext[:, adj[1]], nloc)
