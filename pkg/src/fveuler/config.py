"""Run configuration: the flat config record, built-in case defaults, and a
strict INI-style parser/serializer (UTF-8, `#` comments, case-sensitive keys,
sections [case] [solver] [output] [params])."""

from __future__ import annotations

import configparser
import dataclasses
import math
from dataclasses import dataclass, field

from .errors import ConfigError
from .integrators import INTEGRATOR_NAMES
from .riemann import STRATEGY_NAMES, strategy_from_name
from .spatial import LIMITERS, SchemeConfig
from .state import GasModel


@dataclass
class CaseConfig:
    """Everything one batch run needs, flattened; `params` carries the
    case-specific geometry and initial-data knobs."""

    case: str
    gamma: float = 1.4
    mach: float = 0.0
    ni: int = 64
    nj: int = 64
    t_end: float = 1.0
    noise_amplitude: float = 0.0
    noise_seed: int = 0
    steady_tol: float = 0.0
    strategy: str = "roe"
    phi: float = 5.0
    delta_rel: float = 0.1
    beta: str | float = "pressure-sensor"
    kappa: float = 0.5
    order: int = 1
    limiter: str = "minmod"
    hancock: bool = False
    integrator: str = "ab3"
    cfl: float = 0.45
    directory: str = "out"
    cadence: float = 1.0
    vtk: bool = False
    params: dict = field(default_factory=dict)

    def gas(self) -> GasModel:
        return GasModel(gamma=self.gamma)

    def wave_strategy(self):
        beta = None if self.beta == "pressure-sensor" else float(self.beta)
        return strategy_from_name(self.strategy, phi=self.phi,
                                  delta_rel=self.delta_rel, beta=beta,
                                  kappa=self.kappa)

    def scheme(self) -> SchemeConfig:
        return SchemeConfig(order=self.order, limiter=self.limiter,
                            hancock=self.hancock)

    def validate(self) -> "CaseConfig":
        try:
            if self.case not in CASE_DEFAULTS:
                raise ValueError(f"unknown case {self.case!r}")
            if self.t_end <= 0.0:
                raise ValueError(f"t_end must be positive, got {self.t_end}")
            if self.cadence <= 0.0:
                raise ValueError(f"cadence must be positive, got {self.cadence}")
            if self.cfl <= 0.0:
                raise ValueError(f"cfl must be positive, got {self.cfl}")
            if self.ni < 1 or self.nj < 1:
                raise ValueError(f"cell counts must be positive, got {self.ni}x{self.nj}")
            if self.mach < 0.0:
                raise ValueError(f"mach must be non-negative, got {self.mach}")
            if self.noise_amplitude < 0.0:
                raise ValueError("noise_amplitude must be non-negative")
            if self.strategy not in STRATEGY_NAMES:
                raise ValueError(f"unknown strategy {self.strategy!r}")
            if self.integrator not in INTEGRATOR_NAMES:
                raise ValueError(f"unknown integrator {self.integrator!r}")
            if self.limiter not in LIMITERS:
                raise ValueError(f"unknown limiter {self.limiter!r}")
            self.gas()
            self.wave_strategy()
            self.scheme()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self


_THIRD = 2.0 * math.pi / 3.0

CASE_DEFAULTS = {
    "uniform-low-mach": dict(
        ni=128, nj=32, t_end=5.0, mach=0.05, noise_amplitude=1e-6,
        noise_seed=7771, strategy="fleischmann", integrator="ab3", order=1,
        cadence=1.0,
        params={"x_min": 0.0, "x_max": 4.0, "y_min": 0.0, "y_max": 1.0}),
    "cylinder": dict(
        ni=100, nj=160, t_end=50.0, mach=0.1, strategy="fleischmann",
        integrator="ab3", order=1, cadence=10.0,
        params={"r_inner": 1.0, "r_outer": 5.0}),
    "blunt-body": dict(
        ni=150, nj=800, t_end=2.0, mach=20.0, strategy="fleischmann",
        integrator="ab3", order=1, cadence=0.5,
        params={"r_inner": 1.0, "r_outer": 2.0,
                "theta_min": _THIRD, "theta_max": 2.0 * _THIRD}),
    "rmi": dict(
        ni=600, nj=396, t_end=85.0, strategy="roe-harten", integrator="euler",
        order=2, limiter="mc", hancock=True, cadence=5.0,
        params={"x_min": 0.0, "x_max": 30.0, "y_min": 0.0, "y_max": 19.8,
                "strip_min": 2.0, "strip_max": 6.0, "strip_p": 4.9,
                "strip_rho": 4.22, "interface_x": 12.0,
                "interface_amplitude": 1.0, "interface_wavelength": 19.8,
                "rho_left": 1.0, "rho_right": 0.25, "base_p": 1.0}),
    "khi": dict(
        ni=128, nj=128, t_end=4.0, strategy="fleischmann", integrator="euler",
        order=2, limiter="mc", hancock=True, cadence=1.0,
        params={"shear_width": 0.025, "kick_amplitude": 0.01,
                "kick_sigma": 0.05, "pressure": 2.5, "rho_outer": 1.0,
                "rho_inner": 2.0, "speed": 0.5}),
    "riemann2d": dict(
        ni=100, nj=4, t_end=0.2, strategy="roe", integrator="euler", order=1,
        cadence=1.0,
        params={"x_min": 0.0, "x_max": 1.0, "y_min": 0.0, "y_max": 0.04,
                "x_split": 0.5,
                "rho_l": 1.0, "u_l": 0.0, "v_l": 0.0, "p_l": 1.0,
                "rho_r": 0.125, "u_r": 0.0, "v_r": 0.0, "p_r": 0.1}),
}

CASE_DESCRIPTIONS = {
    "uniform-low-mach": "noisy uniform low-Mach channel flow on a Cartesian grid",
    "cylinder": "slow flow past a cylinder on a full annulus",
    "blunt-body": "high-Mach flow onto a cylinder sector with a standing bow shock",
    "rmi": "shock-driven instability of a sinusoidal density interface",
    "khi": "periodic double shear layer with seeded transverse perturbation",
    "riemann2d": "two-state planar Riemann initial data, configurable states",
}

_SECTION_FIELDS = {
    "case": ("case", "gamma", "mach", "ni", "nj", "t_end", "noise_amplitude",
             "noise_seed", "steady_tol"),
    "solver": ("strategy", "phi", "delta_rel", "beta", "kappa", "order",
               "limiter", "hancock", "integrator", "cfl"),
    "output": ("directory", "cadence", "vtk"),
}
_KEY_RENAMES = {"case": "name"}       # field "case" appears as key "name"
_INT_FIELDS = {"ni", "nj", "noise_seed", "order"}
_BOOL_FIELDS = {"hancock", "vtk"}
_STR_FIELDS = {"case", "strategy", "limiter", "integrator", "directory"}


def default_config(case: str) -> CaseConfig:
    """Built-in defaults for a named case."""
    if case not in CASE_DEFAULTS:
        raise ConfigError(f"unknown case {case!r}; choose from "
                          f"{', '.join(sorted(CASE_DEFAULTS))}")
    values = dict(CASE_DEFAULTS[case])
    params = dict(values.pop("params", {}))
    return CaseConfig(case=case, params=params, **values)


def _parse_value(field_name: str, raw: str):
    raw = raw.strip()
    try:
        if field_name in _INT_FIELDS:
            return int(raw)
        if field_name in _BOOL_FIELDS:
            low = raw.lower()
            if low in ("true", "yes", "on", "1"):
                return True
            if low in ("false", "no", "off", "0"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        if field_name in _STR_FIELDS:
            return raw
        if field_name == "beta":
            return raw if raw == "pressure-sensor" else float(raw)
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {field_name}: {exc}") from None


def _make_parser() -> configparser.ConfigParser:
    cp = configparser.ConfigParser(
        comment_prefixes=("#",), inline_comment_prefixes=("#",),
        delimiters=("=",), interpolation=None)
    cp.optionxform = str
    return cp


def parse_config(text: str) -> CaseConfig:
    """Config from INI text: named case defaults overridden by file values."""
    cp = _make_parser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax: {exc}") from None
    if "case" not in cp or "name" not in cp["case"]:
        raise ConfigError("config needs [case] with a name key")
    cfg = default_config(cp["case"]["name"].strip())
    for section, fields in _SECTION_FIELDS.items():
        if section not in cp:
            continue
        known = {_KEY_RENAMES.get(f, f): f for f in fields}
        for key, raw in cp[section].items():
            if key not in known:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            setattr(cfg, known[key], _parse_value(known[key], raw))
    for section in cp.sections():
        if section not in _SECTION_FIELDS and section != "params":
            raise ConfigError(f"unknown section [{section}]")
    if "params" in cp:
        for key, raw in cp["params"].items():
            try:
                cfg.params[key] = float(raw)
            except ValueError:
                raise ConfigError(f"bad param {key}: {raw!r}") from None
    return cfg


def load_config(path) -> CaseConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def _format_value(field_name: str, value) -> str:
    if field_name in _BOOL_FIELDS:
        return "true" if value else "false"
    return str(value)


def serialize_config(cfg: CaseConfig) -> str:
    """INI text carrying every field; parse_config inverts it exactly."""
    lines = []
    for section, fields in _SECTION_FIELDS.items():
        lines.append(f"[{section}]")
        for f in fields:
            key = _KEY_RENAMES.get(f, f)
            lines.append(f"{key} = {_format_value(f, getattr(cfg, f))}")
        lines.append("")
    lines.append("[params]")
    for key in sorted(cfg.params):
        lines.append(f"{key} = {cfg.params[key]!r}")
    lines.append("")
    return "\n".join(lines)


def override_config(cfg: CaseConfig, **overrides) -> CaseConfig:
    """Copy with the given fields replaced; params merge key-wise."""
    params = dict(cfg.params)
    params.update(overrides.pop("params", {}))
    clean = {k: v for k, v in overrides.items() if v is not None}
    return dataclasses.replace(cfg, params=params, **clean)
