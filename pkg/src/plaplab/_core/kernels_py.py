"""Pure-Python twins of the compiled kernels.

Two hot loops live here: the adaptive Dormand-Prince 5(4) stepper for the
radial flux system and the Sturm (LDL^T inertia) count for symmetric
tridiagonal pencils. `plaplab._core` picks these implementations when the
Cython extension is unavailable; the algorithms and operation order match the
compiled versions so results agree to rounding.
"""

from __future__ import annotations

import math

import numpy as np

# nonlinearity kinds understood by the stepper
KIND_EXP = 0
KIND_POWER = 1
KIND_NEG_POWER = 2
KIND_CUSTOM = 3

# step outcomes
REACHED_RMAX = 0
DOMAIN_EXIT = 1
MAX_STEPS = 3
DT_UNDERFLOW = 4

# Dormand-Prince 5(4) tableau
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)


def slope_from_flux(w: float, r: float, p: float, n: float) -> float:
    """Recover u_r from the flux w = r^{n-1}|u_r|^{p-2}u_r."""
    if w == 0.0:
        return 0.0
    if p == 2.0:
        return w * r ** (1.0 - n)
    mag = abs(w) * r ** (1.0 - n)
    return math.copysign(mag ** (1.0 / (p - 1.0)), w)


def solve_radial(
    p: float,
    alpha: float,
    n: float,
    kind: int,
    q: float,
    F,
    r0: float,
    u0: float,
    w0: float,
    rmax: float,
    rtol: float,
    atol: float,
    max_steps: int,
    max_step_frac: float,
):
    """Integrate (u, w)' = (u_r(w), -r^{n-1+alpha} F(u)) from r0 to rmax.

    Returns (r, u, w, status) with one node per accepted step. Steps are
    capped at max_step_frac * r so nodes stay dense in log r for downstream
    interpolation. For positive-domain kinds the integration stops just
    before u crosses zero (status DOMAIN_EXIT).
    """
    if kind == KIND_EXP:
        fF = lambda u: math.exp(u) if u <= 709.0 else math.inf
    elif kind == KIND_POWER:
        # C pow semantics: negative base with fractional exponent is NaN,
        # not complex (trial stage values can overshoot below zero)
        fF = lambda u: u**q if u >= 0.0 else math.nan
    elif kind == KIND_NEG_POWER:
        fF = lambda u: -(u**q) if u > 0.0 else math.nan
    else:
        fF = F
    positive_domain = kind in (KIND_POWER, KIND_NEG_POWER)

    inv_pm1 = 1.0 / (p - 1.0)
    nm1 = n - 1.0
    pw = n - 1.0 + alpha

    def rhs(r: float, u: float, w: float):
        if w == 0.0:
            du = 0.0
        elif p == 2.0:
            du = w * r ** (-nm1)
        else:
            du = math.copysign((abs(w) * r ** (-nm1)) ** inv_pm1, w)
        return du, -(r**pw) * fF(u)

    rs = [r0]
    us = [u0]
    ws = [w0]

    r, u, w = r0, u0, w0
    dt = 0.01 * r0
    k1u, k1w = rhs(r, u, w)
    status = MAX_STEPS
    domain_reject = False
    steps = 0

    while steps < max_steps:
        steps += 1
        if r >= rmax * (1.0 - 1e-14):
            status = REACHED_RMAX
            break
        dt_cap = max_step_frac * r
        if dt > dt_cap:
            dt = dt_cap
        last = False
        if r + dt >= rmax:
            dt = rmax - r
            last = True
        if dt < 1e-15 * r:
            status = DOMAIN_EXIT if domain_reject else DT_UNDERFLOW
            break

        yu = u + dt * (_A21 * k1u)
        yw = w + dt * (_A21 * k1w)
        k2u, k2w = rhs(r + 0.2 * dt, yu, yw)
        yu = u + dt * (_A31 * k1u + _A32 * k2u)
        yw = w + dt * (_A31 * k1w + _A32 * k2w)
        k3u, k3w = rhs(r + 0.3 * dt, yu, yw)
        yu = u + dt * (_A41 * k1u + _A42 * k2u + _A43 * k3u)
        yw = w + dt * (_A41 * k1w + _A42 * k2w + _A43 * k3w)
        k4u, k4w = rhs(r + 0.8 * dt, yu, yw)
        yu = u + dt * (_A51 * k1u + _A52 * k2u + _A53 * k3u + _A54 * k4u)
        yw = w + dt * (_A51 * k1w + _A52 * k2w + _A53 * k3w + _A54 * k4w)
        k5u, k5w = rhs(r + 8.0 / 9.0 * dt, yu, yw)
        yu = u + dt * (_A61 * k1u + _A62 * k2u + _A63 * k3u + _A64 * k4u + _A65 * k5u)
        yw = w + dt * (_A61 * k1w + _A62 * k2w + _A63 * k3w + _A64 * k4w + _A65 * k5w)
        k6u, k6w = rhs(r + dt, yu, yw)
        unew = u + dt * (_B1 * k1u + _B3 * k3u + _B4 * k4u + _B5 * k5u + _B6 * k6u)
        wnew = w + dt * (_B1 * k1w + _B3 * k3w + _B4 * k4w + _B5 * k5w + _B6 * k6w)
        k7u, k7w = rhs(r + dt, unew, wnew)

        erru = dt * (
            _E1 * k1u + _E3 * k3u + _E4 * k4u + _E5 * k5u + _E6 * k6u + _E7 * k7u
        )
        errw = dt * (
            _E1 * k1w + _E3 * k3w + _E4 * k4w + _E5 * k5w + _E6 * k6w + _E7 * k7w
        )
        su = atol + rtol * max(abs(u), abs(unew))
        sw = atol + rtol * max(abs(w), abs(wnew))
        if math.isfinite(erru) and math.isfinite(errw) and math.isfinite(unew):
            errnorm = math.sqrt(0.5 * ((erru / su) ** 2 + (errw / sw) ** 2))
        else:
            errnorm = math.inf

        if errnorm <= 1.0:
            if positive_domain and unew <= 0.0:
                domain_reject = True
                dt *= 0.5
                continue
            domain_reject = False
            r += dt
            u, w = unew, wnew
            k1u, k1w = k7u, k7w  # FSAL
            rs.append(r)
            us.append(u)
            ws.append(w)
            if last:
                status = REACHED_RMAX
                break
            fac = 5.0 if errnorm == 0.0 else min(5.0, max(0.2, 0.9 * errnorm**-0.2))
            dt *= fac
        else:
            # fractional powers turn negative stage values into NaNs, so a
            # predicted crossing of u = 0 counts as a domain rejection
            if positive_domain and u + dt * k1u <= 0.0:
                domain_reject = True
            if math.isinf(errnorm):
                dt *= 0.2
            else:
                dt *= max(0.2, 0.9 * errnorm**-0.2)

    return (
        np.asarray(rs, dtype=float),
        np.asarray(us, dtype=float),
        np.asarray(ws, dtype=float),
        status,
    )


def pencil_inertia_batch(a_diag, a_off, b_diag, b_off, shifts):
    """#negative eigenvalues of A - mu B for each shift mu.

    A, B symmetric tridiagonal (diag, off arrays); B positive definite, so the
    count equals the number of generalized eigenvalues of (A, B) below mu.
    Vectorized over shifts; the node recurrence is the standard LDL^T pivot
    sweep with a tiny-pivot guard.
    """
    mus = np.atleast_1d(np.asarray(shifts, dtype=float))
    m = a_diag.shape[0]
    counts = np.zeros(mus.shape[0], dtype=np.int64)
    d = a_diag[0] - mus * b_diag[0]
    d = np.where(d == 0.0, 1e-280, d)
    counts += d < 0.0
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        for i in range(1, m):
            e = a_off[i - 1] - mus * b_off[i - 1]
            d = (a_diag[i] - mus * b_diag[i]) - e * e / d
            d = np.where(d == 0.0, 1e-280, d)
            counts += d < 0.0
    return counts
