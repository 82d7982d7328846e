"""Finite-volume solver for the 2D compressible Euler equations on
structured quadrilateral grids, with interchangeable wave-speed strategies
in the approximate Riemann solver and a family of explicit time
integrators tuned for low-Mach robustness studies.
"""

from .cases import case_names, make_case, register_case
from .config import (
    CaseConfig,
    default_config,
    load_config,
    override_config,
    parse_config,
    serialize_config,
)
from .errors import (
    ConfigError,
    DegenerateHistoryError,
    InvalidDimensionsError,
    NegativeDensityError,
    NegativePressureError,
    SolverBreakdownError,
)
from .grid import BoundaryKind, StructuredGrid, build_annulus, build_cartesian
from .integrators import (
    AdamsBashforthStepper,
    AdamsHistory,
    ButcherTableau,
    StepController,
    ab_coefficients,
    ab_step,
    cfl_dt,
    integrate_ode,
    make_stepper,
    rk_step,
)
from .riemann import (
    STRATEGY_NAMES,
    BetaSource,
    WaveSpeedStrategy,
    numerical_flux,
    strategy_from_name,
)
from .runner import RunResult, run_case
from .snapshots import (
    FieldSnapshot,
    asymmetry_metric,
    read_snapshot_csv,
    snapshot_filename,
    snapshot_from_grid,
    write_snapshot_csv,
)
from .spatial import SchemeConfig, compute_residual
from .stability import (
    ab_polys,
    ab_real_axis_crossing,
    ab_root_locus,
    advection_spectrum,
    max_cfl,
    named_method,
    rk_real_axis_boundary,
    rk_region_boundary,
    rk_stability_function,
    stable_on_hull,
    standard_curves,
)
from .state import (
    GasModel,
    RoeState,
    conserved_to_primitive,
    primitive_to_conserved,
    roe_average,
    sound_speed,
)

__version__ = "0.1.0"

__all__ = [
    "AdamsBashforthStepper",
    "AdamsHistory",
    "BetaSource",
    "BoundaryKind",
    "ButcherTableau",
    "CaseConfig",
    "ConfigError",
    "DegenerateHistoryError",
    "FieldSnapshot",
    "GasModel",
    "InvalidDimensionsError",
    "NegativeDensityError",
    "NegativePressureError",
    "RoeState",
    "RunResult",
    "STRATEGY_NAMES",
    "SchemeConfig",
    "SolverBreakdownError",
    "StepController",
    "StructuredGrid",
    "WaveSpeedStrategy",
    "ab_coefficients",
    "ab_polys",
    "ab_real_axis_crossing",
    "ab_root_locus",
    "ab_step",
    "advection_spectrum",
    "asymmetry_metric",
    "build_annulus",
    "build_cartesian",
    "case_names",
    "cfl_dt",
    "compute_residual",
    "conserved_to_primitive",
    "default_config",
    "integrate_ode",
    "load_config",
    "make_case",
    "make_stepper",
    "max_cfl",
    "named_method",
    "numerical_flux",
    "override_config",
    "parse_config",
    "primitive_to_conserved",
    "read_snapshot_csv",
    "register_case",
    "rk_real_axis_boundary",
    "rk_region_boundary",
    "rk_stability_function",
    "rk_step",
    "roe_average",
    "run_case",
    "serialize_config",
    "snapshot_filename",
    "snapshot_from_grid",
    "stable_on_hull",
    "standard_curves",
    "write_snapshot_csv",
]
