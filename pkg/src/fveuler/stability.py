"""Linear stability analysis for the time integrators: stability polynomials
and region boundaries of the Runge-Kutta methods, characteristic polynomials
and root-locus curves of the Adams-Bashforth family, eigenvalue spectra of
semidiscrete linear advection, and a hull-containment oracle that bisects the
largest stable Courant number of a method on a given spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .integrators import RK_TABLEAUS, ButcherTableau

CURVE_KINDS = ("rk_boundary", "ab_root_locus", "spectrum")


@dataclass(frozen=True)
class StabilityCurve:
    """Ordered complex samples of one curve in the complex step plane."""

    points: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in CURVE_KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        pts = np.asarray(self.points, dtype=np.complex128)
        if not np.all(np.isfinite(pts)):
            raise ValueError("curve points must be finite")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class MultistepPolys:
    """Characteristic polynomial pair of a linear multistep method.

    Coefficients run from the highest power down. The generating polynomial
    must vanish at 1 so that constants are reproduced exactly.
    """

    rho_coeffs: np.ndarray
    sigma_coeffs: np.ndarray
    steps: int

    def __post_init__(self):
        rho = np.asarray(self.rho_coeffs, dtype=np.float64)
        sigma = np.asarray(self.sigma_coeffs, dtype=np.float64)
        if rho.size != self.steps + 1:
            raise ValueError("generating polynomial degree must equal the step count")
        if abs(np.polyval(rho, 1.0)) > 1e-14:
            raise ValueError("generating polynomial must vanish at 1")
        object.__setattr__(self, "rho_coeffs", rho)
        object.__setattr__(self, "sigma_coeffs", sigma)


def rk_stability_polynomial(tableau: ButcherTableau) -> np.ndarray:
    """Coefficients (highest power first) of R(z) = 1 + z b (I - zA)^-1 1.

    For an explicit method the resolvent series terminates, so R is the
    polynomial 1 + sum_k (b A^(k-1) 1) z^k up to the stage count.
    """
    s = tableau.stages
    coeffs = np.zeros(s + 1)
    coeffs[-1] = 1.0
    vec = np.ones(s)
    for k in range(1, s + 1):
        coeffs[s - k] = tableau.b @ vec
        vec = tableau.a @ vec
    return coeffs


def rk_stability_function(tableau: ButcherTableau, z) -> np.ndarray:
    """Amplification factor R(z); z may be scalar or any complex array."""
    return np.polyval(rk_stability_polynomial(tableau), np.asarray(z))


def _chain_points(pts: np.ndarray) -> np.ndarray:
    """Greedy nearest-neighbor ordering so curve samples plot as a path."""
    n = pts.size
    if n <= 2:
        return pts
    remaining = pts.copy()
    out = np.empty(n, dtype=np.complex128)
    idx = int(np.argmin(remaining.real))
    for k in range(n):
        out[k] = remaining[idx]
        remaining = np.delete(remaining, idx)
        if remaining.size:
            idx = int(np.argmin(np.abs(remaining - out[k])))
    return out


def rk_region_boundary(tableau: ButcherTableau, n_samples: int = 256) -> StabilityCurve:
    """All solutions of R(z) on the unit circle, chained into a curve.

    Every point satisfies |R(z)| = 1; together they trace the boundary of
    the method's stability region (plus any extra unit-modulus loops of
    higher-degree polynomials).
    """
    if n_samples < 16:
        raise ValueError("need at least 16 samples")
    base = rk_stability_polynomial(tableau).astype(np.complex128)
    pts = []
    for theta in np.linspace(0.0, 2.0 * np.pi, n_samples, endpoint=False):
        shifted = base.copy()
        shifted[-1] -= np.exp(1j * theta)
        pts.append(np.roots(shifted))
    return StabilityCurve(points=_chain_points(np.concatenate(pts)),
                          kind="rk_boundary")


def rk_real_axis_boundary(tableau: ButcherTableau) -> float:
    """Leftmost point of the stability interval on the negative real axis."""
    coeffs = rk_stability_polynomial(tableau)
    x = 0.0
    while abs(np.polyval(coeffs, x - 0.01)) <= 1.0 + 1e-14:
        x -= 0.01
        if x < -100.0:
            raise RuntimeError("no real-axis boundary found")
    lo, hi = x - 0.01, x
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if abs(np.polyval(coeffs, mid)) <= 1.0 + 1e-14:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# fixed-step extrapolation weights, newest value first
_AB_SIGMA = {
    1: np.array([1.0]),
    2: np.array([3.0, -1.0]) / 2.0,
    3: np.array([23.0, -16.0, 5.0]) / 12.0,
    4: np.array([55.0, -59.0, 37.0, -9.0]) / 24.0,
    5: np.array([1901.0, -2774.0, 2616.0, -1274.0, 251.0]) / 720.0,
}


def ab_polys(steps: int) -> MultistepPolys:
    """Characteristic polynomials of the k-step extrapolation methods."""
    if steps not in _AB_SIGMA:
        raise ValueError(f"supported step counts are 1..5, got {steps}")
    rho = np.zeros(steps + 1)
    rho[0] = 1.0
    rho[1] = -1.0
    return MultistepPolys(rho_coeffs=rho, sigma_coeffs=_AB_SIGMA[steps],
                          steps=steps)


def ab_root_locus(polys: MultistepPolys, n_samples: int = 256) -> StabilityCurve:
    """Image of the unit circle under rho/sigma: the boundary locus."""
    zeta = np.exp(1j * np.linspace(0.0, 2.0 * np.pi, n_samples, endpoint=False))
    z = np.polyval(polys.rho_coeffs, zeta) / np.polyval(polys.sigma_coeffs, zeta)
    return StabilityCurve(points=z, kind="ab_root_locus")


def ab_real_axis_crossing(polys: MultistepPolys) -> float:
    """Real-axis crossing of the boundary locus (the unit-circle image at -1)."""
    return float(np.polyval(polys.rho_coeffs, -1.0)
                 / np.polyval(polys.sigma_coeffs, -1.0))


def advection_spectrum(n: int, epsilon: float) -> StabilityCurve:
    """Eigenvalues of periodic semidiscrete advection at unit speed and cell.

    epsilon blends the one-sided difference (1) into the centered one (0);
    the spectrum traces an ellipse centered at -epsilon with semi-axes
    (epsilon, 1), degenerating to a circle and to an imaginary segment.
    """
    if n < 3:
        raise ValueError("need at least 3 cells")
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    omega = 2.0 * np.pi * np.arange(n) / n
    lam = -epsilon * (1.0 - np.cos(omega)) - 1j * np.sin(omega)
    return StabilityCurve(points=lam, kind="spectrum")


def advection_matrix(n: int, epsilon: float) -> np.ndarray:
    """Dense circulant semidiscretization matrix matching advection_spectrum."""
    m = np.zeros((n, n))
    for j in range(n):
        m[j, j] = -epsilon
        m[j, (j - 1) % n] = 0.5 * (epsilon + 1.0)
        m[j, (j + 1) % n] = 0.5 * (epsilon - 1.0)
    return m


def _hull_test_points(points: np.ndarray) -> np.ndarray:
    """Convex-hull vertices plus edge midpoints; all points if degenerate."""
    xy = np.column_stack([points.real, points.imag])
    try:
        hull = ConvexHull(xy)
    except QhullError:
        return points
    verts = points[hull.vertices]
    mids = 0.5 * (verts + np.roll(verts, -1))
    return np.concatenate([verts, mids])


def _points_stable(method, z: np.ndarray) -> bool:
    if isinstance(method, ButcherTableau):
        r = np.polyval(rk_stability_polynomial(method).astype(np.complex128), z)
        return bool(np.all(np.abs(r) <= 1.0 + 1e-12))
    if isinstance(method, MultistepPolys):
        sigma = np.concatenate([[0.0], method.sigma_coeffs])
        for zk in z:
            roots = np.roots(method.rho_coeffs - zk * sigma)
            if np.max(np.abs(roots)) > 1.0 + 1e-10:
                return False
        return True
    raise TypeError(f"unsupported method type {type(method).__name__}")


def stable_on_hull(method, spectrum: StabilityCurve, dt: float):
    """Stability of a method on the convex hull of a scaled spectrum.

    Containment is tested at the hull vertices and edge midpoints. Returns
    (stable at the given dt, largest stable dt found by bisection).
    """
    pts = _hull_test_points(spectrum.points)
    stable = _points_stable(method, dt * pts)
    return stable, _bisect_max_scale(method, pts)


def max_cfl(method, spectrum: StabilityCurve) -> float:
    """Largest scaling of the spectrum the method tolerates on its hull."""
    return _bisect_max_scale(method, _hull_test_points(spectrum.points))


def _bisect_max_scale(method, pts: np.ndarray) -> float:
    hi = 1.0
    grown = 0
    while _points_stable(method, hi * pts) and grown < 12:
        hi *= 2.0
        grown += 1
    lo = 0.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _points_stable(method, mid * pts):
            lo = mid
        else:
            hi = mid
    return lo


def named_method(name: str):
    """Resolve an integrator name to its stability-analysis object."""
    if name in RK_TABLEAUS:
        return RK_TABLEAUS[name]()
    if name.startswith("ab") and name[2:].isdigit():
        return ab_polys(int(name[2:]))
    raise ValueError(f"unknown method {name!r}")


def standard_curves(n_samples: int = 256):
    """The curve set shipped to the plotting side: RK boundaries and AB loci."""
    out = {}
    for name in ("euler", "rk2", "rk3", "rk4"):
        out[name] = rk_region_boundary(RK_TABLEAUS[name](), n_samples)
    for k in range(1, 6):
        out[f"ab{k}"] = ab_root_locus(ab_polys(k), n_samples)
    return out
