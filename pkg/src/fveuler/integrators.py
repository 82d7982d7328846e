"""Explicit time integrators: Runge-Kutta tableaus and variable-step
Adams-Bashforth built on polynomial integration of the stored derivative
history, plus CFL-based step-size control.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateHistoryError
from .state import GasModel, sound_speed


@dataclass(frozen=True)
class ButcherTableau:
    """Explicit Runge-Kutta coefficients (strictly lower-triangular a)."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    name: str = ""

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.a, dtype=np.float64))
        b = np.asarray(self.b, dtype=np.float64)
        c = np.asarray(self.c, dtype=np.float64)
        s = b.size
        if a.shape != (s, s) or c.size != s:
            raise ValueError("inconsistent tableau dimensions")
        if np.any(np.abs(np.triu(a)) > 0.0):
            raise ValueError("tableau must be strictly lower triangular (explicit)")
        if c[0] != 0.0:
            raise ValueError("first abscissa must be 0")
        if np.max(np.abs(a.sum(axis=1) - c)) > 1e-14:
            raise ValueError("row sums of a must equal c")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def stages(self) -> int:
        return self.b.size


def euler_tableau() -> ButcherTableau:
    return ButcherTableau(a=[[0.0]], b=[1.0], c=[0.0], name="euler")


def heun2_tableau() -> ButcherTableau:
    return ButcherTableau(a=[[0.0, 0.0], [1.0, 0.0]],
                          b=[0.5, 0.5], c=[0.0, 1.0], name="rk2")


def heun3_tableau() -> ButcherTableau:
    return ButcherTableau(
        a=[[0.0, 0.0, 0.0],
           [1.0 / 3.0, 0.0, 0.0],
           [0.0, 2.0 / 3.0, 0.0]],
        b=[0.25, 0.0, 0.75],
        c=[0.0, 1.0 / 3.0, 2.0 / 3.0],
        name="rk3")


def rk4_tableau() -> ButcherTableau:
    return ButcherTableau(
        a=[[0.0, 0.0, 0.0, 0.0],
           [0.5, 0.0, 0.0, 0.0],
           [0.0, 0.5, 0.0, 0.0],
           [0.0, 0.0, 1.0, 0.0]],
        b=[1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
        c=[0.0, 0.5, 0.5, 1.0],
        name="rk4")


RK_TABLEAUS = {
    "euler": euler_tableau,
    "rk2": heun2_tableau,
    "rk3": heun3_tableau,
    "rk4": rk4_tableau,
}


def rk_step(tableau: ButcherTableau, rhs, t: float, y: np.ndarray, dt: float):
    """One explicit Runge-Kutta step; y may be any ndarray.

    RHS failures propagate with the failing stage index attached as
    `rk_stage` on the exception.
    """
    s = tableau.stages
    k = [None] * s
    for i in range(s):
        yi = y
        for j in range(i):
            aij = tableau.a[i, j]
            if aij != 0.0:
                yi = yi + dt * aij * k[j]
        try:
            k[i] = rhs(t + tableau.c[i] * dt, yi)
        except Exception as exc:
            exc.rk_stage = i
            raise
    out = y
    for i in range(s):
        if tableau.b[i] != 0.0:
            out = out + dt * tableau.b[i] * k[i]
    return out


# --- Adams-Bashforth ----------------------------------------------------------

@dataclass
class AdamsHistory:
    """Newest-first store of (time, derivative) pairs, capped at order_target."""

    order_target: int = 3
    times: list = field(default_factory=list)
    values: list = field(default_factory=list)

    def push(self, t: float, f: np.ndarray) -> None:
        if self.times and t <= self.times[0]:
            raise DegenerateHistoryError(
                f"history times must increase; got {t} after {self.times[0]}")
        self.times.insert(0, float(t))
        self.values.insert(0, f)
        del self.times[self.order_target:]
        del self.values[self.order_target:]

    def __len__(self) -> int:
        return len(self.times)

    def clear(self) -> None:
        self.times.clear()
        self.values.clear()


def ab_coefficients(times: np.ndarray, t_next: float) -> np.ndarray:
    """Quadrature weights for an extrapolation step of a multistep method.

    times: past evaluation times, newest first, strictly decreasing. The
    weight of entry j is the integral over [times[0], t_next] of the Lagrange
    basis polynomial that is 1 at times[j] and 0 at the others, so that
    y(t_next) ~= y(times[0]) + sum_j w_j f(times[j]).
    """
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.size == 0:
        raise DegenerateHistoryError("need at least one history time")
    if times.size > 1 and not np.all(np.diff(times) < 0.0):
        raise DegenerateHistoryError(
            f"history times must be strictly decreasing, got {times}")
    t0 = times[0]
    w = np.empty(times.size)
    for j in range(times.size):
        others = np.delete(times, j)
        # Lagrange basis l_j as polynomial coefficients (highest power first)
        num = np.poly(others) if others.size else np.array([1.0])
        den = np.prod(times[j] - others) if others.size else 1.0
        prim = np.polyint(num / den)
        w[j] = np.polyval(prim, t_next) - np.polyval(prim, t0)
    return w


def ab_step(history: AdamsHistory, y: np.ndarray, t_next: float) -> np.ndarray:
    """Advance y to t_next using the stored derivative history.

    Uses as many entries as available: one entry gives an explicit Euler
    step, two the second-order extrapolation, three the third-order one.
    """
    if len(history) == 0:
        raise DegenerateHistoryError("empty history")
    w = ab_coefficients(np.asarray(history.times), t_next)
    out = y
    for wj, fj in zip(w, history.values):
        out = out + wj * fj
    return out


class AdamsBashforthStepper:
    """Drives ab_step: evaluates the derivative, pushes it, then extrapolates."""

    def __init__(self, order: int):
        if order not in (1, 2, 3):
            raise ValueError(f"supported orders are 1..3, got {order}")
        self.order = order
        self.history = AdamsHistory(order_target=order)

    def step(self, rhs, t: float, y: np.ndarray, dt: float) -> np.ndarray:
        f = rhs(t, y)
        self.history.push(t, f)
        return ab_step(self.history, y, t + dt)

    def reset(self) -> None:
        self.history.clear()


class RungeKuttaStepper:
    def __init__(self, tableau: ButcherTableau):
        self.tableau = tableau

    def step(self, rhs, t: float, y: np.ndarray, dt: float) -> np.ndarray:
        return rk_step(self.tableau, rhs, t, y, dt)

    def reset(self) -> None:
        pass


def make_stepper(name: str):
    """Stepper registry used by the run loop and the ODE driver."""
    if name in ("euler", "rk2", "rk3"):
        return RungeKuttaStepper(RK_TABLEAUS[name]())
    if name == "ab2":
        return AdamsBashforthStepper(2)
    if name == "ab3":
        return AdamsBashforthStepper(3)
    raise ValueError(f"unknown integrator {name!r}")


INTEGRATOR_NAMES = ("euler", "rk2", "rk3", "ab2", "ab3")


def integrate_ode(name: str, rhs, t0: float, y0: np.ndarray, t_end: float,
                  dt: float) -> np.ndarray:
    """Fixed-step integration of an ODE system, mainly for convergence
    studies.

    Multistep methods of order 3 subdivide the first nominal step into
    ceil(sqrt(T/dt)) equal substeps: the mandatory low-order startup steps
    then shrink faster than dt and leave the bulk order observable.
    """
    stepper = make_stepper(name)
    y = np.asarray(y0, dtype=np.float64)
    t = t0
    if isinstance(stepper, AdamsBashforthStepper) and stepper.order >= 3:
        span = t_end - t0
        n_sub = max(stepper.order, int(np.ceil(np.sqrt(span / dt))))
        h = min(dt, span) / n_sub
        for _ in range(n_sub):
            y = stepper.step(rhs, t, y, h)
            t += h
    n_left = int(round((t_end - t) / dt))
    for _ in range(n_left):
        y = stepper.step(rhs, t, y, dt)
        t += dt
    return y


# --- step-size control ---------------------------------------------------------

DEFAULT_METHOD_FACTORS = {
    "euler": 1.0,
    "rk2": 1.0,
    "rk3": 1.2,
    "ab2": 0.4,
    "ab3": 0.15,
    "muscl-hancock": 0.8,
}


@dataclass(frozen=True)
class StepController:
    """Courant-number step control with per-method-family safety factors."""

    cfl: float = 0.9
    method_factors: dict = field(default_factory=lambda: dict(DEFAULT_METHOD_FACTORS))

    def __post_init__(self):
        if self.cfl <= 0.0:
            raise ValueError(f"cfl must be positive, got {self.cfl}")

    def factor(self, method: str) -> float:
        try:
            return self.method_factors[method]
        except KeyError:
            raise ValueError(f"no step factor known for method {method!r}") from None


def cfl_dt(field_prim: np.ndarray, grid, controller: StepController,
           method: str, gas: GasModel) -> float:
    """Largest stable-looking step: cfl * factor * min(width / signal speed)."""
    c = sound_speed(field_prim, gas)
    speed = np.hypot(field_prim[..., 1], field_prim[..., 2]) + c
    dt = float(np.min(grid.min_width() / speed))
    return controller.cfl * controller.factor(method) * dt
