"""Stability polynomials, region boundaries, root loci, spectra, and the
hull-containment Courant oracle."""

import numpy as np
import pytest

from fveuler.integrators import (
    DEFAULT_METHOD_FACTORS,
    RK_TABLEAUS,
    rk_step,
)
from fveuler.stability import (
    MultistepPolys,
    StabilityCurve,
    ab_polys,
    ab_real_axis_crossing,
    ab_root_locus,
    advection_matrix,
    advection_spectrum,
    max_cfl,
    named_method,
    rk_real_axis_boundary,
    rk_region_boundary,
    rk_stability_function,
    rk_stability_polynomial,
    stable_on_hull,
)


def truncated_exponential(z, order):
    out = np.zeros_like(z)
    term = np.ones_like(z)
    for k in range(order + 1):
        out = out + term
        term = term * z / (k + 1)
    return out


def test_stability_function_is_truncated_exponential():
    rng = np.random.default_rng(31)
    z = rng.uniform(-3, 3, 100) + 1j * rng.uniform(-3, 3, 100)
    for name, order in (("euler", 1), ("rk2", 2), ("rk3", 3), ("rk4", 4)):
        r = rk_stability_function(RK_TABLEAUS[name](), z)
        np.testing.assert_allclose(r, truncated_exponential(z, order),
                                   atol=1e-12)


def test_stability_function_matches_resolvent_form():
    rng = np.random.default_rng(8)
    for name in RK_TABLEAUS:
        tab = RK_TABLEAUS[name]()
        s = tab.stages
        for z in rng.uniform(-2, 2, 20) + 1j * rng.uniform(-2, 2, 20):
            m = np.eye(s) - z * tab.a
            ref = 1.0 + z * (tab.b @ np.linalg.solve(m, np.ones(s)))
            assert abs(rk_stability_function(tab, z) - ref) < 1e-13


def test_rk_step_realizes_stability_function():
    lam = -0.3 + 0.7j
    y0 = np.array([1.0 + 0.0j])
    for name in RK_TABLEAUS:
        tab = RK_TABLEAUS[name]()
        y1 = rk_step(tab, lambda t, y: lam * y, 0.0, y0, 1.0)
        assert abs(y1[0] - rk_stability_function(tab, lam)) < 1e-13


def test_heun3_sample_value():
    r = rk_stability_function(RK_TABLEAUS["rk3"](), -3.0)
    assert abs(r - (-2.0)) < 1e-14


def test_euler_boundary_is_unit_circle():
    curve = rk_region_boundary(RK_TABLEAUS["euler"](), 128)
    assert curve.kind == "rk_boundary"
    np.testing.assert_allclose(np.abs(curve.points + 1.0), 1.0, atol=1e-10)


@pytest.mark.parametrize("name", ["euler", "rk2", "rk3", "rk4"])
def test_boundary_points_have_unit_amplification(name):
    tab = RK_TABLEAUS[name]()
    curve = rk_region_boundary(tab, 64)
    assert curve.points.size == 64 * tab.stages
    r = rk_stability_function(tab, curve.points)
    np.testing.assert_allclose(np.abs(r), 1.0, atol=1e-8)


def test_boundary_symmetric_about_real_axis():
    curve = rk_region_boundary(RK_TABLEAUS["rk3"](), 64)
    for z in curve.points[::7]:
        assert np.min(np.abs(curve.points - np.conj(z))) < 1e-8


def test_heun2_boundary_reaches_minus_two():
    curve = rk_region_boundary(RK_TABLEAUS["rk2"](), 64)
    assert np.min(np.abs(curve.points - (-2.0))) < 1e-8


def test_real_axis_boundaries():
    assert abs(rk_real_axis_boundary(RK_TABLEAUS["euler"]()) + 2.0) < 1e-9
    assert abs(rk_real_axis_boundary(RK_TABLEAUS["rk2"]()) + 2.0) < 1e-9
    assert abs(rk_real_axis_boundary(RK_TABLEAUS["rk3"]()) + 2.512745) < 1e-3
    assert abs(rk_real_axis_boundary(RK_TABLEAUS["rk4"]()) + 2.7853) < 1e-3


def test_ab_polys_consistency_conditions():
    for k in range(1, 6):
        polys = ab_polys(k)
        rho, sigma = polys.rho_coeffs, polys.sigma_coeffs
        assert rho.size == k + 1
        assert sigma.size == k
        assert np.polyval(rho, 1.0) == 0.0
        drho = np.polyder(rho)
        assert abs(np.polyval(drho, 1.0) - np.polyval(sigma, 1.0)) < 1e-14
    with pytest.raises(ValueError):
        ab_polys(6)
    with pytest.raises(ValueError):
        MultistepPolys(rho_coeffs=[1.0, 1.0], sigma_coeffs=[1.0], steps=1)


def test_ab1_locus_is_shifted_unit_circle():
    curve = ab_root_locus(ab_polys(1), 128)
    assert curve.kind == "ab_root_locus"
    theta = np.linspace(0.0, 2.0 * np.pi, 128, endpoint=False)
    np.testing.assert_allclose(curve.points, np.exp(1j * theta) - 1.0,
                               atol=1e-14)


def test_ab_real_axis_crossings():
    assert abs(ab_real_axis_crossing(ab_polys(2)) + 1.0) < 1e-14
    assert abs(ab_real_axis_crossing(ab_polys(3)) + 6.0 / 11.0) < 1e-14


def test_spectrum_shapes():
    up = advection_spectrum(64, 1.0)
    assert up.kind == "spectrum"
    np.testing.assert_allclose(np.abs(up.points + 1.0), 1.0, atol=1e-12)
    ce = advection_spectrum(64, 0.0)
    assert np.max(np.abs(ce.points.real)) < 1e-15
    assert abs(np.max(ce.points.imag) - 1.0) < 1e-3
    half = advection_spectrum(64, 0.5)
    ell = ((half.points.real + 0.5) / 0.5) ** 2 + half.points.imag**2
    np.testing.assert_allclose(ell, 1.0, atol=1e-12)
    with pytest.raises(ValueError):
        advection_spectrum(2, 1.0)
    with pytest.raises(ValueError):
        advection_spectrum(8, 1.5)


@pytest.mark.parametrize("eps", [1.0, 0.3, 0.0])
def test_spectrum_matches_dense_eigensolve(eps):
    n = 16
    lam = advection_spectrum(n, eps).points
    mu = np.linalg.eigvals(advection_matrix(n, eps))
    for l in lam:
        assert np.min(np.abs(mu - l)) < 1e-10


def test_euler_unstable_on_central_spectrum():
    ce = advection_spectrum(64, 0.0)
    tab = RK_TABLEAUS["euler"]()
    for dt in (1e-3, 1e-2, 0.1, 1.0, 10.0):
        stable, margin = stable_on_hull(tab, ce, dt)
        assert not stable
    assert max_cfl(tab, ce) < 1e-4


def test_heun3_central_spectrum_limit():
    ce = advection_spectrum(64, 0.0)
    tab = RK_TABLEAUS["rk3"]()
    assert stable_on_hull(tab, ce, 1.7)[0]
    assert not stable_on_hull(tab, ce, 1.74)[0]
    assert abs(max_cfl(tab, ce) - np.sqrt(3.0)) < 1e-3


def test_ab2_unstable_on_central_spectrum():
    ce = advection_spectrum(64, 0.0)
    polys = ab_polys(2)
    for dt in (0.01, 0.1, 0.5, 1.0):
        assert not stable_on_hull(polys, ce, dt)[0]
    assert max_cfl(polys, ce) < 1e-2


def test_upwind_courant_bounds():
    up = advection_spectrum(64, 1.0)
    assert abs(max_cfl(named_method("euler"), up) - 1.0) < 1e-9
    assert abs(max_cfl(named_method("ab2"), up) - 0.5) < 1e-6
    assert abs(max_cfl(named_method("ab3"), up) - 3.0 / 11.0) < 1e-6
    assert abs(max_cfl(named_method("rk3"), up) - 1.256373) < 1e-3


def test_heun3_beats_euler_on_upwind_spectrum():
    up = advection_spectrum(64, 1.0)
    assert max_cfl(named_method("rk3"), up) > max_cfl(named_method("euler"), up)


def test_method_factors_respect_hull_bounds():
    # the CFL safety factors used by the run loop must sit inside the
    # linear-stability bound of each method on the one-sided spectrum
    up = advection_spectrum(64, 1.0)
    for name in ("euler", "rk2", "rk3", "ab2", "ab3"):
        bound = max_cfl(named_method(name), up)
        assert DEFAULT_METHOD_FACTORS[name] <= bound + 1e-9


def test_named_method_rejects_unknown():
    with pytest.raises(ValueError):
        named_method("bdf2")
    with pytest.raises(TypeError):
        stable_on_hull("euler", advection_spectrum(8, 1.0), 0.1)


def test_curve_validation():
    with pytest.raises(ValueError):
        StabilityCurve(points=np.array([np.nan + 0j]), kind="spectrum")
    with pytest.raises(ValueError):
        StabilityCurve(points=np.array([0j]), kind="wiggle")
    with pytest.raises(ValueError):
        rk_region_boundary(RK_TABLEAUS["euler"](), 8)
