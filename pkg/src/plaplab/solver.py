"""Radial shooting solver and closed-form reference solutions.

The initial value problem is integrated in the variables (u, w) with
w = r^{n-1}|u_r|^{p-2}u_r, whose equation w' = -r^{n-1+alpha} F(u) stays
regular where |u_r|^{p-2} degenerates. The start values come from the center
series obtained by integrating the flux equation once (and twice for the
second-order correction). Real, fractional n is just a coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Optional, Sequence

import numpy as np

from . import _core
from .errors import DomainError, SeriesFailure, StepFailure
from .exponents import ProblemParams, power_exponents, CRITICAL_REL_TOL
from .nonlinearity import Nonlinearity, NonlinearityTag
from .profile import RadialProfile, flux_of
from .testfunctions import TestFunction, default_bumps

__all__ = [
    "SolverConfig",
    "solve_ivp",
    "explicit_critical_solution",
    "explicit_gelfand_singular",
    "weak_residual",
    "strong_residual",
    "critical_power",
]

_KIND_OF_TAG = {
    NonlinearityTag.GELFAND: _core.KIND_EXP,
    NonlinearityTag.LANE_EMDEN: _core.KIND_POWER,
    NonlinearityTag.NEGATIVE_EXPONENT: _core.KIND_NEG_POWER,
    NonlinearityTag.CUSTOM: _core.KIND_CUSTOM,
}

_STOP_REASON = {
    _core.REACHED_RMAX: "reached_rmax",
    _core.DOMAIN_EXIT: "domain_exit",
}


@dataclass(frozen=True)
class SolverConfig:
    """Shooting controls. r_start defaults to 1e-6 * r_max."""

    r_max: float = 100.0
    r_start: Optional[float] = None
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 2_000_000
    series_order: int = 2
    max_step_frac: float = 0.05

    def __post_init__(self):
        if self.r_max <= 0.0:
            raise DomainError("r_max must be positive")
        r0 = self.start_radius()
        if not (0.0 < r0 < self.r_max):
            raise DomainError(f"need 0 < r_start < r_max, got {r0}, {self.r_max}")
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise DomainError("tolerances must be positive")

    def start_radius(self) -> float:
        return self.r_start if self.r_start is not None else 1e-6 * self.r_max

    def describe(self) -> dict:
        d = asdict(self)
        d["r_start"] = self.start_radius()
        return d


def _center_series(params: ProblemParams, nl: Nonlinearity, a: float, r0: float,
                   order: int):
    """(u, w) at the series start radius from one/two integrations of the flux
    equation around u = a."""
    p, alpha, n = params.p, params.alpha, params.n
    fa = nl.F(a)
    m = (p + alpha) / (p - 1.0)
    amp = (abs(fa) / (n + alpha)) ** (1.0 / (p - 1.0))
    sgn = math.copysign(1.0, fa)
    c1 = -sgn * amp / m
    u0 = a + c1 * r0**m
    w0 = -fa * r0 ** (n + alpha) / (n + alpha)
    if order >= 2:
        fpa = nl.Fprime(a)
        gamma = (fpa * c1 / fa) * (n + alpha) / (n + alpha + m)
        c2 = -sgn * amp * gamma / ((p - 1.0) * 2.0 * m)
        u0 += c2 * r0 ** (2.0 * m)
        w0 += -fpa * c1 * r0 ** (n + alpha + m) / (n + alpha + m)
    return u0, w0


def _constant_profile(params: ProblemParams, a: float, cfg: SolverConfig,
                      meta: dict) -> RadialProfile:
    grid = np.geomspace(cfg.start_radius(), cfg.r_max, 200)
    zero = np.zeros_like(grid)
    meta = dict(meta, stop_reason="equilibrium")
    return RadialProfile(
        r=grid, u=np.full_like(grid, a), ur=zero, flux=zero,
        params=params, meta=meta,
    )


def solve_ivp(
    params: ProblemParams,
    nl: Nonlinearity,
    a: float,
    config: Optional[SolverConfig] = None,
) -> RadialProfile:
    """Shoot the radial problem -div(|Du|^{p-2}Du) = r^alpha F(u) from u(0)=a.

    Integration stops at r_max or when u leaves F's domain (positive-domain
    nonlinearities), whichever is first; the stop reason lands in meta.
    Raises StepFailure when the tolerance cannot be met, SeriesFailure when
    F(a) is not finite.
    """
    cfg = config or SolverConfig()
    p, alpha, n = params.p, params.alpha, params.n
    nl.validate_against(p)
    if n + alpha <= 0.0:
        raise DomainError(f"need n + alpha > 0, got n={n}, alpha={alpha}")
    if nl.positive_domain and a <= 0.0:
        raise DomainError(f"center value must be positive for {nl.tag.value}, got {a}")

    fa = nl.F(a)
    if not math.isfinite(fa):
        raise SeriesFailure(f"F(a) is not finite at a={a}")

    meta = {
        "nonlinearity": nl.describe(),
        "config": cfg.describe(),
        "a": a,
        "backend": _core.backend_name(),
    }
    if fa == 0.0:
        return _constant_profile(params, a, cfg, meta)

    r0 = cfg.start_radius()
    u0, w0 = _center_series(params, nl, a, r0, cfg.series_order)

    kind = _KIND_OF_TAG[nl.tag]
    r, u, w, status = _core.solve_radial(
        p, alpha, n, kind, nl.q, nl.F,
        r0, u0, w0, cfg.r_max, cfg.rel_tol, cfg.abs_tol,
        cfg.max_steps, cfg.max_step_frac,
    )
    if status == _core.MAX_STEPS:
        raise StepFailure(
            f"tolerance not met within {cfg.max_steps} steps (reached r={r[-1]:g})"
        )
    if status == _core.DT_UNDERFLOW:
        raise StepFailure(f"step size underflow at r={r[-1]:g}")

    if p == 2.0:
        ur = w * r ** (1.0 - n)
    else:
        with np.errstate(divide="ignore"):
            ur = np.sign(w) * (np.abs(w) * r ** (1.0 - n)) ** (1.0 / (p - 1.0))
    meta["stop_reason"] = _STOP_REASON[status]
    return RadialProfile(r=r, u=u, ur=ur, flux=w, params=params, meta=meta)


def critical_power(params: ProblemParams) -> float:
    """The exponent q for which n sits exactly at the critical dimension q_star."""
    p, alpha, n = params.p, params.alpha, params.n
    params.require_n_above_p("critical power")
    return (n * (p - 1.0) + p * (alpha + 1.0)) / (n - p)


def explicit_critical_solution(
    params: ProblemParams, q: float, eps: float, grid
) -> RadialProfile:
    """The explicit radial family at the critical dimension n = q_star.

    u(r) = K (eps + r^{(p+alpha)/(p-1)})^{(p-n)/(p+alpha)} with the amplitude K
    fixed so the equation with F(u) = u^q holds exactly; derivatives are
    analytic, so the profile can serve as an oracle.
    """
    p, alpha, n = params.p, params.alpha, params.n
    params.require_n_above_p("the explicit critical family")
    if eps <= 0.0:
        raise DomainError(f"eps must be positive, got {eps}")
    q_star = power_exponents(params, q).q_star
    if abs(n - q_star) > CRITICAL_REL_TOL * max(1.0, abs(q_star)):
        raise DomainError(
            f"off-critical parameters: n={n} but the critical dimension for q={q} "
            f"is {q_star}"
        )
    m = (p + alpha) / (p - 1.0)
    beta = (n - p) / (p + alpha)
    K = (eps * (n + alpha) * ((n - p) / (p - 1.0)) ** (p - 1.0)) ** (
        (n - p) / (p * (p + alpha))
    )

    def u_fn(r):
        r = np.asarray(r, dtype=float)
        return K * (eps + r**m) ** (-beta)

    def ur_fn(r):
        r = np.asarray(r, dtype=float)
        return -K * beta * m * r ** (m - 1.0) * (eps + r**m) ** (-beta - 1.0)

    def urr_fn(r):
        r = np.asarray(r, dtype=float)
        base = eps + r**m
        return -K * beta * m * (
            (m - 1.0) * r ** (m - 2.0) * base ** (-beta - 1.0)
            - (beta + 1.0) * m * r ** (2.0 * m - 2.0) * base ** (-beta - 2.0)
        )

    meta = {"family": "critical-power", "q": q, "eps": eps}
    return RadialProfile.from_callables(params, grid, u_fn, ur_fn, urr_fn, meta)


def explicit_gelfand_singular(params: ProblemParams, grid) -> RadialProfile:
    """Exact singular solution of the exponential problem:
    u(r) = -(p+alpha) ln r + ln((p+alpha)^{p-1} (n-p))."""
    p, alpha, n = params.p, params.alpha, params.n
    params.require_n_above_p("the singular exponential solution")
    shift = math.log((p + alpha) ** (p - 1.0) * (n - p))
    k = p + alpha

    def u_fn(r):
        return -k * np.log(np.asarray(r, dtype=float)) + shift

    def ur_fn(r):
        return -k / np.asarray(r, dtype=float)

    def urr_fn(r):
        return k / np.asarray(r, dtype=float) ** 2

    meta = {"family": "gelfand-singular"}
    return RadialProfile.from_callables(params, grid, u_fn, ur_fn, urr_fn, meta)


def _simpson_log(values: np.ndarray, x: np.ndarray) -> float:
    # composite Simpson on a uniform grid in x = ln r (odd length)
    h = x[1] - x[0]
    return float(h / 3.0 * (values[0] + values[-1]
                            + 4.0 * values[1:-1:2].sum()
                            + 2.0 * values[2:-1:2].sum()))


def weak_residual(
    profile: RadialProfile,
    nl: Nonlinearity,
    testfns: Optional[Sequence[TestFunction]] = None,
    n_quad: int = 2001,
) -> float:
    """Worst relative defect of the weak formulation over the test functions.

    Both sides are integrated over each test function's support (which must
    sit inside the profile range) by composite Simpson in log r.
    """
    p, alpha, n = profile.params.p, profile.params.alpha, profile.params.n
    if testfns is None:
        testfns = default_bumps(profile.r_min * 1.01, profile.r_max * 0.99)
    worst = 0.0
    for tf in testfns:
        lo, hi = tf.support
        if lo < profile.r_min * (1 - 1e-12) or hi > profile.r_max * (1 + 1e-12):
            from .errors import SupportError

            raise SupportError(
                f"test function support ({lo:g}, {hi:g}) exceeds profile range"
            )
        x = np.linspace(math.log(lo), math.log(hi), n_quad)
        r = np.exp(x)
        u = profile.u_at(r)
        ur = profile.ur_at(r)
        lhs_den = flux_of(r, ur, p, n) * tf.dfn(r) * r  # dr = r dx
        rhs_den = r ** (n - 1.0 + alpha) * nl.F_vec(u) * tf.fn(r) * r
        lhs = _simpson_log(lhs_den, x)
        rhs = _simpson_log(rhs_den, x)
        worst = max(worst, abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1e-300))
    return worst


def strong_residual(profile: RadialProfile, nl: Nonlinearity, radii) -> np.ndarray:
    """Pointwise relative residual of the flux-form equation at given radii.

    Computes |(flux)' + r^{n-1+alpha} F(u)| / (|(flux)'| + |r^{n-1+alpha}F(u)|)
    with (flux)' expanded through u_r and u_rr (analytic for closed-form
    profiles, interpolated otherwise).
    """
    p, alpha, n = profile.params.p, profile.params.alpha, profile.params.n
    r = np.asarray(radii, dtype=float)
    u = profile.u_at(r)
    ur = profile.ur_at(r)
    urr = profile.urr_at(r)
    if p == 2.0:
        grad_fac = np.ones_like(r)
    else:
        grad_fac = np.abs(ur) ** (p - 2.0)
    flux_prime = r ** (n - 1.0) * grad_fac * ((p - 1.0) * urr + (n - 1.0) / r * ur)
    forcing = r ** (n - 1.0 + alpha) * nl.F_vec(u)
    return np.abs(flux_prime + forcing) / (np.abs(flux_prime) + np.abs(forcing) + 1e-300)
