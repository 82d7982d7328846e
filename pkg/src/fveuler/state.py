"""Thermodynamic state handling for the 2D compressible Euler equations.

Fields are numpy arrays whose trailing axis holds the four components.
Primitive layout: (rho, u, v, p). Conserved layout: (rho, rho*u, rho*v, E)
with E the total energy per unit volume.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NegativeDensityError, NegativePressureError

# component indices, primitive
RHO, VX, VY, PRES = 0, 1, 2, 3
# component indices, conserved
MX, MY, EN = 1, 2, 3


@dataclass(frozen=True)
class GasModel:
    """Ideal-gas description; gamma is the ratio of specific heats."""

    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")


@dataclass(frozen=True)
class RoeState:
    """Density-weighted face average of two states.

    Components may be scalars or arrays; `u` is the velocity component
    normal to the face when used in the rotated-frame flux."""

    rho: np.ndarray
    u: np.ndarray
    v: np.ndarray
    total_enthalpy: np.ndarray
    sound_speed: np.ndarray


def primitive_to_conserved(prim: np.ndarray, gas: GasModel) -> np.ndarray:
    """Convert (rho, u, v, p) to (rho, rho*u, rho*v, E)."""
    prim = np.asarray(prim, dtype=np.float64)
    rho = prim[..., RHO]
    u = prim[..., VX]
    v = prim[..., VY]
    p = prim[..., PRES]
    cons = np.empty_like(prim)
    cons[..., RHO] = rho
    cons[..., MX] = rho * u
    cons[..., MY] = rho * v
    cons[..., EN] = p / (gas.gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return cons


def conserved_to_primitive(cons: np.ndarray, gas: GasModel) -> np.ndarray:
    """Convert conserved to primitive variables.

    Raises NegativeDensityError / NegativePressureError with the index of the
    first offending cell. This is the one place state validity is policed.
    """
    cons = np.asarray(cons, dtype=np.float64)
    rho = cons[..., RHO]
    if not np.all(rho > 0.0):
        bad = _first_bad_index(rho > 0.0)
        raise NegativeDensityError(
            f"non-positive density {_value_at(rho, bad)!r} at cell {bad}", index=bad
        )
    u = cons[..., MX] / rho
    v = cons[..., MY] / rho
    p = (gas.gamma - 1.0) * (cons[..., EN] - 0.5 * rho * (u * u + v * v))
    if not np.all(p > 0.0):
        bad = _first_bad_index(p > 0.0)
        raise NegativePressureError(
            f"non-positive pressure {_value_at(p, bad)!r} at cell {bad}", index=bad
        )
    prim = np.empty_like(cons)
    prim[..., RHO] = rho
    prim[..., VX] = u
    prim[..., VY] = v
    prim[..., PRES] = p
    return prim


def _first_bad_index(ok_mask: np.ndarray):
    flat = int(np.argmin(ok_mask))
    if ok_mask.ndim == 0:
        return ()
    return tuple(int(k) for k in np.unravel_index(flat, ok_mask.shape))


def _value_at(arr: np.ndarray, idx):
    return float(arr[idx]) if idx != () else float(arr)


def validate_primitive(prim: np.ndarray) -> None:
    """Raise if a primitive field has non-positive density or pressure."""
    prim = np.asarray(prim)
    rho = prim[..., RHO]
    if not np.all(rho > 0.0):
        bad = _first_bad_index(rho > 0.0)
        raise NegativeDensityError(
            f"non-positive density {_value_at(rho, bad)!r} at cell {bad}", index=bad
        )
    p = prim[..., PRES]
    if not np.all(p > 0.0):
        bad = _first_bad_index(p > 0.0)
        raise NegativePressureError(
            f"non-positive pressure {_value_at(p, bad)!r} at cell {bad}", index=bad
        )


def sound_speed(prim: np.ndarray, gas: GasModel) -> np.ndarray:
    prim = np.asarray(prim)
    return np.sqrt(gas.gamma * prim[..., PRES] / prim[..., RHO])


def total_enthalpy(prim: np.ndarray, gas: GasModel) -> np.ndarray:
    """H = (E + p) / rho."""
    prim = np.asarray(prim)
    rho = prim[..., RHO]
    u = prim[..., VX]
    v = prim[..., VY]
    p = prim[..., PRES]
    e = p / (gas.gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return (e + p) / rho


def physical_flux_x(prim: np.ndarray, gas: GasModel) -> np.ndarray:
    """Exact Euler flux through a face with unit normal (1, 0)."""
    prim = np.asarray(prim, dtype=np.float64)
    rho = prim[..., RHO]
    u = prim[..., VX]
    v = prim[..., VY]
    p = prim[..., PRES]
    e = p / (gas.gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    flux = np.empty_like(prim)
    flux[..., 0] = rho * u
    flux[..., 1] = rho * u * u + p
    flux[..., 2] = rho * u * v
    flux[..., 3] = (e + p) * u
    return flux


def physical_flux_normal(prim: np.ndarray, normal: np.ndarray, gas: GasModel) -> np.ndarray:
    """Exact Euler flux through a face with unit normal (nx, ny)."""
    prim = np.asarray(prim, dtype=np.float64)
    normal = np.asarray(normal, dtype=np.float64)
    rho = prim[..., RHO]
    u = prim[..., VX]
    v = prim[..., VY]
    p = prim[..., PRES]
    nx = normal[..., 0]
    ny = normal[..., 1]
    un = u * nx + v * ny
    e = p / (gas.gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    flux = np.empty(np.broadcast(rho, un).shape + (4,), dtype=np.float64)
    flux[..., 0] = rho * un
    flux[..., 1] = rho * un * u + p * nx
    flux[..., 2] = rho * un * v + p * ny
    flux[..., 3] = (e + p) * un
    return flux


def roe_average(left: np.ndarray, right: np.ndarray, gas: GasModel) -> RoeState:
    """Density-weighted average satisfying the flux-difference property.

    The averaged sound speed comes from the averaged enthalpy, which keeps it
    real for any pair of valid input states.
    """
    left = np.asarray(left, dtype=np.float64)
    right = np.asarray(right, dtype=np.float64)
    rl = np.sqrt(left[..., RHO])
    rr = np.sqrt(right[..., RHO])
    w = 1.0 / (rl + rr)
    rho = rl * rr
    u = (rl * left[..., VX] + rr * right[..., VX]) * w
    v = (rl * left[..., VY] + rr * right[..., VY]) * w
    hl = total_enthalpy(left, gas)
    hr = total_enthalpy(right, gas)
    h = (rl * hl + rr * hr) * w
    c2 = (gas.gamma - 1.0) * (h - 0.5 * (u * u + v * v))
    return RoeState(rho=rho, u=u, v=v, total_enthalpy=h, sound_speed=np.sqrt(c2))
