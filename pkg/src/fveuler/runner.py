"""Batch driver: advances a case to its end time, writing snapshots on a
fixed cadence plus a per-step run log, and turning solver breakdowns into a
failure record instead of a stack trace."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .cases import make_case
from .config import CaseConfig
from .errors import SolverBreakdownError
from .integrators import StepController, cfl_dt, make_stepper
from .snapshots import (RunLog, snapshot_filename, snapshot_from_grid,
                        write_failure_record, write_snapshot_csv, write_vtk)
from .spatial import compute_residual
from .state import PRES, conserved_to_primitive, primitive_to_conserved, sound_speed

STATUS_OK = 0
STATUS_BREAKDOWN = 2

FAILURE_FILENAME = "failure.json"
LOG_FILENAME = "run_log.csv"


@dataclass
class RunResult:
    status: int
    time: float
    steps: int
    prim: np.ndarray                      # last valid primitive field
    grid: object
    snapshot_paths: list = field(default_factory=list)
    log_path: str | None = None
    failure: dict | None = None


def _first_bad_cell(y: np.ndarray):
    bad = np.argwhere(~np.isfinite(y).all(axis=-1))
    return (int(bad[0, 0]), int(bad[0, 1])) if len(bad) else None


def _checked(y: np.ndarray, gas):
    """Primitive view of a conserved field, rejecting non-finite cells."""
    if not np.isfinite(y).all():
        raise SolverBreakdownError("non-finite conserved state",
                                   index=_first_bad_cell(y))
    return conserved_to_primitive(y, gas)


def run_case(cfg: CaseConfig, write_outputs: bool = True,
             max_steps: int = 10**7) -> RunResult:
    """Run one configured case to t_end (or to a steady state if steady_tol
    is set). Returns the final field either way; status reports whether the
    solver survived.

    Configuration problems raise ConfigError before any output exists.
    """
    cfg.validate()
    grid, prim0 = make_case(cfg)
    gas = cfg.gas()
    strategy = cfg.wave_strategy()
    scheme = cfg.scheme()
    stepper = make_stepper(cfg.integrator)
    controller = StepController(cfl=cfg.cfl)
    method_key = "muscl-hancock" if scheme.hancock else cfg.integrator

    log = None
    result = RunResult(status=STATUS_OK, time=0.0, steps=0, prim=prim0,
                       grid=grid)
    if write_outputs:
        os.makedirs(cfg.directory, exist_ok=True)
        result.log_path = os.path.join(cfg.directory, LOG_FILENAME)
        log = RunLog(result.log_path)

    def save_snapshot(prim, t):
        snap = snapshot_from_grid(grid, prim, t)
        path = os.path.join(cfg.directory, snapshot_filename(cfg.case, t))
        if path in result.snapshot_paths:
            return
        write_snapshot_csv(snap, path)
        result.snapshot_paths.append(path)
        if cfg.vtk:
            write_vtk(snap, grid, os.path.splitext(path)[0] + ".vtk")

    y = primitive_to_conserved(prim0, gas)
    t = 0.0
    step = 0
    next_mark = cfg.cadence
    fallback_cell = [0]

    def rhs(tt, yy):
        res, stats = compute_residual(_checked(yy, gas), grid, scheme,
                                      strategy, gas, dt=step_dt,
                                      with_stats=True)
        fallback_cell[0] += stats.fallback_faces
        return res

    try:
        if write_outputs:
            save_snapshot(prim0, 0.0)
        prim = prim0
        while t < cfg.t_end * (1.0 - 1e-13) and step < max_steps:
            step_dt = cfl_dt(prim, grid, controller, method_key, gas)
            step_dt = min(step_dt, cfg.t_end - t)
            fallback_cell[0] = 0
            y_new = stepper.step(rhs, t, y, step_dt)
            prim = _checked(y_new, gas)

            drift = float(np.max(np.abs(y_new - y))) / step_dt
            y = y_new
            t += step_dt
            step += 1
            result.prim, result.time, result.steps = prim, t, step

            if log is not None:
                speed = np.hypot(prim[..., 1], prim[..., 2]) + sound_speed(prim, gas)
                log.add(step, t, step_dt, float(prim[..., PRES].min()),
                        float(speed.max()), fallback_cell[0])
            if write_outputs and t >= next_mark * (1.0 - 1e-13):
                save_snapshot(prim, t)
                next_mark = (np.floor(t / cfg.cadence) + 1.0) * cfg.cadence
            if cfg.steady_tol > 0.0 and drift <= cfg.steady_tol:
                break
        if write_outputs:
            save_snapshot(prim, t)
    except SolverBreakdownError as exc:
        result.status = STATUS_BREAKDOWN
        fail_time = exc.time if exc.time is not None else t
        result.failure = {"case": cfg.case, "time": fail_time, "step": step,
                          "cell": exc.index, "reason": str(exc)}
        if write_outputs:
            os.makedirs(cfg.directory, exist_ok=True)
            write_failure_record(os.path.join(cfg.directory, FAILURE_FILENAME),
                                 cfg.case, fail_time, step, exc.index, str(exc))
    finally:
        if log is not None:
            log.close()
    return result
