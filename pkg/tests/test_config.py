"""Config parsing, serialization round-trips, validation, and overrides."""

import math

import pytest

from fveuler.config import (CASE_DEFAULTS, CaseConfig, default_config,
                            load_config, override_config, parse_config,
                            serialize_config)
from fveuler.errors import ConfigError
from fveuler.riemann import BetaSource


@pytest.mark.parametrize("name", sorted(CASE_DEFAULTS))
def test_defaults_round_trip_losslessly(name):
    cfg = default_config(name)
    assert parse_config(serialize_config(cfg)) == cfg


def test_round_trip_preserves_awkward_floats():
    cfg = default_config("khi")
    cfg.t_end = 0.1 + 0.2                 # 0.30000000000000004
    cfg.params["kick_sigma"] = math.pi / 7.0
    back = parse_config(serialize_config(cfg))
    assert back.t_end == cfg.t_end
    assert back.params["kick_sigma"] == cfg.params["kick_sigma"]


def test_partial_file_overrides_named_defaults():
    cfg = parse_config("""
# a comment line
[case]
name = khi
t_end = 2.5   # inline comment

[solver]
integrator = rk3
hancock = false
order = 1
""")
    base = default_config("khi")
    assert cfg.t_end == 2.5
    assert cfg.integrator == "rk3"
    assert cfg.hancock is False and cfg.order == 1
    assert cfg.ni == base.ni and cfg.strategy == base.strategy
    assert cfg.params == base.params


def test_params_merge_onto_defaults():
    cfg = parse_config("[case]\nname = riemann2d\n[params]\nu_l = -2.0\n")
    assert cfg.params["u_l"] == -2.0
    assert cfg.params["p_r"] == 0.1       # untouched default survives


def test_beta_parses_as_sensor_or_constant():
    cfg = parse_config("[case]\nname = khi\n[solver]\nbeta = pressure-sensor\n")
    assert cfg.beta == "pressure-sensor"
    cfg = parse_config("[case]\nname = khi\n[solver]\nbeta = 0.25\n")
    assert cfg.beta == 0.25
    src = cfg.wave_strategy().beta
    assert isinstance(src, BetaSource)
    assert src.mode == "constant" and src.value == 0.25


def test_bool_spellings():
    for raw, expected in (("true", True), ("on", True), ("1", True),
                          ("false", False), ("no", False), ("0", False)):
        cfg = parse_config(f"[case]\nname = khi\n[solver]\nhancock = {raw}\n"
                           "order = 2\n")
        assert cfg.hancock is expected
    with pytest.raises(ConfigError):
        parse_config("[case]\nname = khi\n[solver]\nhancock = maybe\n")


@pytest.mark.parametrize("text", [
    "[case]\nt_end = 1.0\n",                            # no name
    "[solver]\ncfl = 0.4\n",                            # no [case]
    "[case]\nname = nope\n",                            # unknown case
    "[case]\nname = khi\nwidth = 3\n",                  # unknown key
    "[case]\nname = khi\n[extras]\nfoo = 1\n",          # unknown section
    "[case]\nname = khi\nni = 12.5\n",                  # bad int
    "[case]\nname = khi\n[params]\nspeed = fast\n",     # bad param
    "[case\nname = khi\n",                              # broken syntax
])
def test_parse_rejects_malformed_input(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_keys_are_case_sensitive():
    with pytest.raises(ConfigError):
        parse_config("[case]\nname = khi\nT_end = 1.0\n")


@pytest.mark.parametrize("field,value", [
    ("t_end", 0.0), ("t_end", -1.0), ("cadence", 0.0), ("cfl", -0.1),
    ("ni", 0), ("mach", -0.5), ("noise_amplitude", -1e-9),
    ("strategy", "hll"), ("integrator", "rk9"), ("limiter", "superbee"),
    ("order", 3), ("case", "unknown"),
])
def test_validate_rejects_bad_fields(field, value):
    cfg = default_config("uniform-low-mach")
    setattr(cfg, field, value)
    with pytest.raises(ConfigError):
        cfg.validate()


def test_validate_rejects_hancock_at_first_order():
    cfg = default_config("khi")
    cfg.order = 1                          # hancock stays on
    with pytest.raises(ConfigError):
        cfg.validate()


def test_override_config_skips_none_and_merges_params():
    cfg = default_config("riemann2d")
    out = override_config(cfg, t_end=None, cfl=0.3,
                          params={"u_l": -2.0})
    assert out.t_end == cfg.t_end
    assert out.cfl == 0.3
    assert out.params["u_l"] == -2.0 and out.params["p_l"] == 1.0
    assert cfg.params["u_l"] == 0.0        # original untouched


def test_load_config_reads_utf8_file(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text("# übersicht\n[case]\nname = cylinder\nmach = 0.01\n",
                    encoding="utf-8")
    cfg = load_config(path)
    assert cfg.case == "cylinder" and cfg.mach == 0.01


def test_scheme_and_strategy_builders():
    cfg = default_config("rmi")
    scheme = cfg.scheme()
    assert scheme.order == 2 and scheme.hancock and scheme.limiter == "mc"
    strat = cfg.wave_strategy()
    assert strat.kind == "roe-harten"
    assert strat.beta.mode == "pressure-sensor"


def test_defaults_all_validate():
    for name in CASE_DEFAULTS:
        default_config(name).validate()
