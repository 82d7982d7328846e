"""Numba-jitted face-flux kernel; arithmetic mirrors numpy_backend."""

import numpy as np
from numba import njit

_KIND_ROE = 0
_KIND_ROE_HARTEN = 1
_KIND_ROE_HLLE = 2
_KIND_FLEISCHMANN = 3
_KIND_FLEISCHMANN_LINEAR = 4
_KIND_BLEND_GEOM = 5
_KIND_BLEND_ARITH = 6

_BETA_PRESSURE_SENSOR = 1


@njit(cache=True)
def _harten(a, delta):
    if a < delta:
        return 0.5 * (a * a / delta + delta)
    return a


@njit(cache=True)
def _face_flux_kernel(q_left, q_right, nx_arr, ny_arr, kind, phi, delta_rel,
                      beta_mode, beta_value, kappa, gamma, out):
    gm1 = gamma - 1.0
    n = q_left.shape[0]
    for k in range(n):
        nx = nx_arr[k]
        ny = ny_arr[k]
        rho_l = q_left[k, 0]
        p_l = q_left[k, 3]
        rho_r = q_right[k, 0]
        p_r = q_right[k, 3]

        un_l = q_left[k, 1] * nx + q_left[k, 2] * ny
        ut_l = -q_left[k, 1] * ny + q_left[k, 2] * nx
        un_r = q_right[k, 1] * nx + q_right[k, 2] * ny
        ut_r = -q_right[k, 1] * ny + q_right[k, 2] * nx

        ke_l = 0.5 * (un_l * un_l + ut_l * ut_l)
        ke_r = 0.5 * (un_r * un_r + ut_r * ut_r)
        e_l = p_l / gm1 + rho_l * ke_l
        e_r = p_r / gm1 + rho_r * ke_r
        h_l = (e_l + p_l) / rho_l
        h_r = (e_r + p_r) / rho_r

        sl = np.sqrt(rho_l)
        sr = np.sqrt(rho_r)
        w = 1.0 / (sl + sr)
        rho = sl * sr
        un = (sl * un_l + sr * un_r) * w
        ut = (sl * ut_l + sr * ut_r) * w
        h = (sl * h_l + sr * h_r) * w
        c = np.sqrt(gm1 * (h - 0.5 * (un * un + ut * ut)))

        if kind == _KIND_ROE:
            lam1 = un - c
            lam23 = un
            lam4 = un + c
        elif kind == _KIND_ROE_HARTEN:
            delta = delta_rel * c
            lam1 = _harten(abs(un - c), delta)
            lam23 = un
            lam4 = _harten(abs(un + c), delta)
        elif kind == _KIND_ROE_HLLE:
            c_l = np.sqrt(gamma * p_l / rho_l)
            c_r = np.sqrt(gamma * p_r / rho_r)
            lam1 = min(un - c, un_l - c_l)
            lam23 = un
            lam4 = max(un + c, un_r + c_r)
        elif kind == _KIND_FLEISCHMANN:
            s = min(phi * abs(un), c)
            lam1 = un - s
            lam23 = un
            lam4 = un + s
        elif kind == _KIND_FLEISCHMANN_LINEAR:
            lam1 = un - c
            lam23 = np.sign(un) * max(c / phi, abs(un))
            lam4 = un + c
        else:
            if beta_mode == _BETA_PRESSURE_SENSOR:
                beta = min(1.0, abs(p_r - p_l) / (kappa * min(p_l, p_r)))
            else:
                beta = beta_value
            s_cap = min(phi * abs(un), c)
            lin23 = np.sign(un) * max(c / phi, abs(un))
            if kind == _KIND_BLEND_GEOM:
                s = c ** beta * s_cap ** (1.0 - beta)
                lam23 = np.sign(un) * (max(c / phi, abs(un)) ** beta
                                       * abs(un) ** (1.0 - beta))
            else:
                s = beta * c + (1.0 - beta) * s_cap
                lam23 = beta * lin23 + (1.0 - beta) * un
            lam1 = un - s
            lam4 = un + s

        a1 = abs(lam1)
        a23 = abs(lam23)
        a4 = abs(lam4)

        dp = p_r - p_l
        dun = un_r - un_l
        dut = ut_r - ut_l
        drho = rho_r - rho_l
        inv2c2 = 1.0 / (2.0 * c * c)
        alpha1 = (dp - rho * c * dun) * inv2c2
        alpha2 = drho - dp / (c * c)
        alpha3 = rho * dut
        alpha4 = (dp + rho * c * dun) * inv2c2

        w1 = a1 * alpha1
        w2 = a23 * alpha2
        w3 = a23 * alpha3
        w4 = a4 * alpha4

        diss0 = w1 + w2 + w4
        diss1 = w1 * (un - c) + w2 * un + w4 * (un + c)
        diss2 = (w1 + w2 + w4) * ut + w3
        diss3 = (w1 * (h - un * c) + w2 * 0.5 * (un * un + ut * ut)
                 + w3 * ut + w4 * (h + un * c))

        f0 = 0.5 * (rho_l * un_l + rho_r * un_r)
        f1 = 0.5 * (rho_l * un_l * un_l + p_l + rho_r * un_r * un_r + p_r)
        f2 = 0.5 * (rho_l * un_l * ut_l + rho_r * un_r * ut_r)
        f3 = 0.5 * ((e_l + p_l) * un_l + (e_r + p_r) * un_r)

        g0 = f0 - 0.5 * diss0
        gn = f1 - 0.5 * diss1
        gt = f2 - 0.5 * diss2
        g3 = f3 - 0.5 * diss3

        out[k, 0] = g0
        out[k, 1] = gn * nx - gt * ny
        out[k, 2] = gn * ny + gt * nx
        out[k, 3] = g3


def face_fluxes(q_left, q_right, nx, ny, kind, phi, delta_rel,
                beta_mode, beta_value, kappa, gamma):
    """Jitted Roe-type flux batch; see numpy_backend.face_fluxes."""
    q_left = np.ascontiguousarray(q_left, dtype=np.float64)
    q_right = np.ascontiguousarray(q_right, dtype=np.float64)
    nx = np.ascontiguousarray(nx, dtype=np.float64)
    ny = np.ascontiguousarray(ny, dtype=np.float64)
    out = np.empty_like(q_left)
    _face_flux_kernel(q_left, q_right, nx, ny, int(kind), float(phi),
                      float(delta_rel), int(beta_mode), float(beta_value),
                      float(kappa), float(gamma), out)
    return out
