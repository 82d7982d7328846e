"""Built-in test flows: each builder turns a config into a grid plus an
initial primitive field. New cases plug in through register_case."""

from __future__ import annotations

import numpy as np

from .config import CASE_DEFAULTS, CASE_DESCRIPTIONS, CaseConfig
from .errors import ConfigError
from .grid import SIDES, BoundaryKind, StructuredGrid, build_annulus, build_cartesian
from .state import PRES, RHO, VX, VY


def _base_field(ni: int, nj: int) -> np.ndarray:
    return np.empty((ni, nj, 4))


def build_uniform_low_mach(cfg: CaseConfig):
    """Uniform rightward channel flow at a prescribed Mach number, optionally
    perturbed by seeded uniform noise on every primitive in every cell."""
    if cfg.mach <= 0.0:
        raise ConfigError("uniform-low-mach needs mach > 0")
    p = cfg.params
    bc = {"imin": BoundaryKind.extrapolation(),
          "imax": BoundaryKind.extrapolation(),
          "jmin": BoundaryKind.periodic(),
          "jmax": BoundaryKind.periodic()}
    grid = build_cartesian(cfg.ni, cfg.nj,
                           (p["x_min"], p["x_max"]), (p["y_min"], p["y_max"]),
                           bc)
    rho, u = 1.0, 1.0
    press = rho * (u / cfg.mach) ** 2 / cfg.gamma
    prim = _base_field(cfg.ni, cfg.nj)
    prim[..., RHO] = rho
    prim[..., VX] = u
    prim[..., VY] = 0.0
    prim[..., PRES] = press
    if cfg.noise_amplitude > 0.0:
        rng = np.random.Generator(np.random.Philox(cfg.noise_seed))
        prim += rng.uniform(-cfg.noise_amplitude, cfg.noise_amplitude,
                            size=prim.shape)
    return grid, prim


def build_cylinder(cfg: CaseConfig):
    """Slow uniform flow past a cylinder on a full annulus: solid wall at the
    inner radius, far field pinned to the free stream at the outer one."""
    p = cfg.params
    speed = cfg.mach * np.sqrt(cfg.gamma)    # free stream has rho = p = 1
    free = np.array([1.0, speed, 0.0, 1.0])
    bc = {"imin": BoundaryKind.wall(),
          "imax": BoundaryKind.dirichlet(free),
          "jmin": BoundaryKind.periodic(),
          "jmax": BoundaryKind.periodic()}
    grid = build_annulus(p["r_inner"], p["r_outer"], cfg.ni, cfg.nj, bc=bc)
    prim = _base_field(cfg.ni, cfg.nj)
    prim[...] = free
    return grid, prim


def build_blunt_body(cfg: CaseConfig):
    """High-Mach stream hitting a cylinder sector head on; everything except
    the wall leaves the domain supersonically, so the open sides extrapolate."""
    p = cfg.params
    speed = cfg.mach * np.sqrt(cfg.gamma)
    free = np.array([1.0, speed, 0.0, 1.0])
    bc = {"imin": BoundaryKind.wall(),
          "imax": BoundaryKind.inflow(free),
          "jmin": BoundaryKind.extrapolation(),
          "jmax": BoundaryKind.extrapolation()}
    grid = build_annulus(p["r_inner"], p["r_outer"], cfg.ni, cfg.nj,
                         theta_range=(p["theta_min"], p["theta_max"]), bc=bc)
    prim = _base_field(cfg.ni, cfg.nj)
    prim[...] = free
    return grid, prim


def build_rmi(cfg: CaseConfig):
    """Pressurized strip launching a shock into a sinusoidally perturbed
    density interface between slip walls."""
    p = cfg.params
    bc = {"imin": BoundaryKind.extrapolation(),
          "imax": BoundaryKind.extrapolation(),
          "jmin": BoundaryKind.wall(),
          "jmax": BoundaryKind.wall()}
    grid = build_cartesian(cfg.ni, cfg.nj,
                           (p["x_min"], p["x_max"]), (p["y_min"], p["y_max"]),
                           bc)
    x = grid.cell_center[..., 0]
    y = grid.cell_center[..., 1]
    interface = p["interface_x"] + p["interface_amplitude"] * np.sin(
        2.0 * np.pi * y / p["interface_wavelength"])
    prim = _base_field(cfg.ni, cfg.nj)
    prim[..., RHO] = np.where(x < interface, p["rho_left"], p["rho_right"])
    prim[..., VX] = 0.0
    prim[..., VY] = 0.0
    prim[..., PRES] = p["base_p"]
    strip = (x >= p["strip_min"]) & (x <= p["strip_max"])
    prim[..., RHO][strip] = p["strip_rho"]
    prim[..., PRES][strip] = p["strip_p"]
    return grid, prim


def build_khi(cfg: CaseConfig):
    """Double shear layer on the periodic unit square with a small transverse
    velocity kick localized at each layer."""
    p = cfg.params
    grid = build_cartesian(cfg.ni, cfg.nj, (0.0, 1.0), (0.0, 1.0))
    x = grid.cell_center[..., 0]
    y = grid.cell_center[..., 1]
    step = np.tanh((y - 0.25) / p["shear_width"]) - np.tanh(
        (y - 0.75) / p["shear_width"])
    sigma2 = 2.0 * p["kick_sigma"] ** 2
    bumps = np.exp(-((y - 0.25) ** 2) / sigma2) + np.exp(
        -((y - 0.75) ** 2) / sigma2)
    prim = _base_field(cfg.ni, cfg.nj)
    prim[..., RHO] = p["rho_outer"] + 0.5 * (p["rho_inner"] - p["rho_outer"]) * step
    prim[..., VX] = p["speed"] * (step - 1.0)
    prim[..., VY] = p["kick_amplitude"] * np.sin(4.0 * np.pi * x) * bumps
    prim[..., PRES] = p["pressure"]
    return grid, prim


def build_riemann2d(cfg: CaseConfig):
    """Two constant states split at a vertical plane; the states and the split
    location come from params."""
    p = cfg.params
    bc = {"imin": BoundaryKind.extrapolation(),
          "imax": BoundaryKind.extrapolation(),
          "jmin": BoundaryKind.periodic(),
          "jmax": BoundaryKind.periodic()}
    grid = build_cartesian(cfg.ni, cfg.nj,
                           (p["x_min"], p["x_max"]), (p["y_min"], p["y_max"]),
                           bc)
    x = grid.cell_center[..., 0]
    left = x < p["x_split"]
    prim = _base_field(cfg.ni, cfg.nj)
    for comp, lo, hi in ((RHO, "rho_l", "rho_r"), (VX, "u_l", "u_r"),
                         (VY, "v_l", "v_r"), (PRES, "p_l", "p_r")):
        prim[..., comp] = np.where(left, p[lo], p[hi])
    return grid, prim


CASE_BUILDERS = {
    "uniform-low-mach": build_uniform_low_mach,
    "cylinder": build_cylinder,
    "blunt-body": build_blunt_body,
    "rmi": build_rmi,
    "khi": build_khi,
    "riemann2d": build_riemann2d,
}


def register_case(name: str, builder, defaults: dict, description: str = "") -> None:
    """Add a case to the registry so configs and the CLI can reach it.

    `defaults` uses the CASE_DEFAULTS shape: CaseConfig field overrides plus
    an optional nested params dict.
    """
    CASE_BUILDERS[name] = builder
    CASE_DEFAULTS[name] = defaults
    CASE_DESCRIPTIONS[name] = description


def case_names() -> list[str]:
    return sorted(CASE_BUILDERS)


def make_case(cfg: CaseConfig):
    """Grid and initial primitive field for a validated config."""
    cfg.validate()
    builder = CASE_BUILDERS.get(cfg.case)
    if builder is None:
        raise ConfigError(f"unknown case {cfg.case!r}")
    grid, prim = builder(cfg)
    if not isinstance(grid, StructuredGrid) or prim.shape != (grid.ni, grid.nj, 4):
        raise ConfigError(f"case {cfg.case!r} built an inconsistent field")
    return grid, prim
