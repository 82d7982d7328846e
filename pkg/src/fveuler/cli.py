"""Command line front end: batch runs plus small analysis tables (stability
curves, advection spectra, critical Courant numbers) in CSV form.

Exit codes: 0 clean, 2 solver breakdown, 64 configuration or usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from .cases import case_names
from .config import (CASE_DESCRIPTIONS, CaseConfig, default_config,
                     load_config, override_config)
from .errors import ConfigError
from .stability import advection_spectrum, max_cfl, named_method, standard_curves

EXIT_OK = 0
EXIT_BREAKDOWN = 2
EXIT_CONFIG = 64


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped onto the config-error exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="fveuler", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run a case to its end time")
    run.add_argument("--case", help="built-in case name")
    run.add_argument("--config", help="INI config file; flags override it")
    run.add_argument("--solver", dest="strategy", help="wave speed strategy")
    run.add_argument("--phi", type=float)
    run.add_argument("--delta-rel", dest="delta_rel", type=float)
    run.add_argument("--beta", help="shock indicator: a constant or 'pressure-sensor'")
    run.add_argument("--kappa", type=float)
    run.add_argument("--integrator")
    run.add_argument("--cfl", type=float)
    run.add_argument("--tend", dest="t_end", type=float)
    run.add_argument("--out", dest="directory", help="output directory")
    run.add_argument("--mach", type=float)
    run.add_argument("--order", type=int, choices=(1, 2))
    run.add_argument("--limiter")
    run.add_argument("--hancock", action=argparse.BooleanOptionalAction)
    run.add_argument("--ni", type=int)
    run.add_argument("--nj", type=int)
    run.add_argument("--noise", dest="noise_amplitude", type=float)
    run.add_argument("--seed", dest="noise_seed", type=int)
    run.add_argument("--steady-tol", dest="steady_tol", type=float)
    run.add_argument("--cadence", type=float)
    run.add_argument("--vtk", action=argparse.BooleanOptionalAction)
    run.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                     help="case parameter override, repeatable")

    sub.add_parser("list-cases", help="list built-in cases")

    stab = sub.add_parser("stability", help="stability curve table as CSV")
    stab.add_argument("--samples", type=int, default=256)
    stab.add_argument("--out", help="output file (default stdout)")

    spec = sub.add_parser("spectrum", help="semi-discrete advection spectrum as CSV")
    spec.add_argument("--eps", type=float, default=1.0,
                      help="upwind weight in [0, 1]")
    spec.add_argument("--n", type=int, default=64, help="number of modes")
    spec.add_argument("--out", help="output file (default stdout)")

    mc = sub.add_parser("maxcfl", help="critical Courant number of a method")
    mc.add_argument("--method", required=True,
                    help="euler, rk2, rk3, rk4, or ab1..ab5")
    mc.add_argument("--eps", type=float, default=1.0)
    mc.add_argument("--n", type=int, default=128)
    mc.add_argument("--out", help="output file (default stdout)")
    return parser


def _parse_params(items) -> dict:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"--param needs KEY=VALUE, got {item!r}")
        try:
            params[key] = float(value)
        except ValueError:
            raise ConfigError(f"bad param {key}: {value!r}") from None
    return params


_RUN_FIELDS = ("strategy", "phi", "delta_rel", "kappa", "integrator", "cfl",
               "t_end", "directory", "mach", "order", "limiter", "hancock",
               "ni", "nj", "noise_amplitude", "noise_seed", "steady_tol",
               "cadence", "vtk")


def _config_from_args(args) -> CaseConfig:
    if args.config:
        cfg = load_config(args.config)
        if args.case and args.case != cfg.case:
            raise ConfigError(f"--case {args.case!r} contradicts config file "
                              f"case {cfg.case!r}")
    elif args.case:
        cfg = default_config(args.case)
    else:
        raise ConfigError("run needs --case or --config")
    overrides = {f: getattr(args, f) for f in _RUN_FIELDS}
    if args.beta is not None:
        overrides["beta"] = (args.beta if args.beta == "pressure-sensor"
                             else float(args.beta))
    overrides["params"] = _parse_params(args.param)
    return override_config(cfg, **overrides)


@contextlib.contextmanager
def _out_stream(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _cmd_run(args) -> int:
    from .runner import run_case

    result = run_case(_config_from_args(args))
    if result.failure is not None:
        print(f"breakdown at t={result.failure['time']:.6g} "
              f"cell={result.failure['cell']}: {result.failure['reason']}",
              file=sys.stderr)
    return result.status


def _cmd_list_cases() -> int:
    for name in case_names():
        print(f"{name:<18} {CASE_DESCRIPTIONS.get(name, '')}")
    return EXIT_OK


def _cmd_stability(args) -> int:
    curves = standard_curves(args.samples)
    with _out_stream(args.out) as fh:
        fh.write("kind,method,re,im\n")
        for name, curve in curves.items():
            for z in curve.points:
                fh.write(f"{curve.kind},{name},{z.real:.17g},{z.imag:.17g}\n")
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    lam = advection_spectrum(args.n, args.eps)
    with _out_stream(args.out) as fh:
        fh.write("re,im\n")
        for z in lam.points:
            fh.write(f"{z.real:.17g},{z.imag:.17g}\n")
    return EXIT_OK


def _cmd_maxcfl(args) -> int:
    method = named_method(args.method)
    value = max_cfl(method, advection_spectrum(args.n, args.eps))
    with _out_stream(args.out) as fh:
        fh.write("method,eps,max_cfl\n")
        fh.write(f"{args.method},{args.eps:.17g},{value:.17g}\n")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "list-cases":
            return _cmd_list_cases()
        if args.command == "stability":
            return _cmd_stability(args)
        if args.command == "spectrum":
            return _cmd_spectrum(args)
        return _cmd_maxcfl(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"fveuler: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
