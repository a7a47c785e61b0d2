"""Second variation on radial directions and Morse-index lower bounds.

The quadratic form Q(phi) = integral of r^{n-1} [ (p-1)|u_r|^{p-2} phi_r^2
- r^alpha F'(u) phi^2 ] dr is evaluated directly on test functions and
discretized with P1 finite elements (Dirichlet ends) into a symmetric
tridiagonal pencil A x = lambda B x. Negative eigenvalue counts come from
Sturm (LDL^T) inertia, so each reported negative direction is certified at
the discrete level; counts on truncations are lower bounds for the Morse
index, never claims of global stability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import solve_banded

from . import _core
from .errors import DomainError, SingularAssembly, SupportError
from .exponents import ProblemParams, power_exponents, CRITICAL_REL_TOL
from .nonlinearity import Nonlinearity
from .profile import RadialProfile
from .solver import explicit_critical_solution
from .testfunctions import TestFunction

__all__ = [
    "SpectralReport",
    "AssembledPencil",
    "assemble_pencil",
    "second_variation",
    "morse_index_estimate",
    "lowest_eigenpairs",
    "hardy_stability_check",
    "radial_stability_inequality_audit",
    "UR_FLOOR",
]

UR_FLOOR = 1e-14  # slope floor entering |u_r|^{p-2} for p > 2
_GAUSS_X = 1.0 / math.sqrt(3.0)  # 2-point Gauss abscissa on [-1, 1]


@dataclass(frozen=True)
class SpectralReport:
    """Lowest part of the spectrum of the truncated second variation."""

    interval: Tuple[float, float]
    grid_size: int
    eigenvalues: List[float]
    negative_count: int
    min_rayleigh: float
    regularization: float


@dataclass(frozen=True)
class AssembledPencil:
    """Interior-node tridiagonal pencil (A, B) of the discretized form."""

    nodes: np.ndarray
    a_diag: np.ndarray
    a_off: np.ndarray
    b_diag: np.ndarray
    b_off: np.ndarray
    regularization: float

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.a_diag) / self.b_diag))


def _coefficients(profile: RadialProfile, nl: Nonlinearity, r: np.ndarray):
    p, alpha, n = profile.params.p, profile.params.alpha, profile.params.n
    ur = profile.ur_at(r)
    if p == 2.0:
        grad_fac = np.ones_like(r)
    else:
        grad_fac = np.maximum(np.abs(ur), UR_FLOOR) ** (p - 2.0)
    weight = (p - 1.0) * r ** (n - 1.0) * grad_fac
    potential = r ** (n - 1.0 + alpha) * nl.Fprime_vec(profile.u_at(r))
    mass = r ** (n - 1.0)
    return weight, potential, mass, ur


def assemble_pencil(
    profile: RadialProfile,
    nl: Nonlinearity,
    interval: Tuple[float, float],
    grid_size: int,
) -> AssembledPencil:
    """P1 discretization of the second variation on a geometric grid.

    Dirichlet conditions at both ends; coefficients are sampled at 2-point
    Gauss nodes per element. Raises SingularAssembly when the gradient weight
    degenerates identically (p > 2 and u_r below the floor everywhere).
    """
    r_a, r_b = interval
    if not (profile.r_min * (1 - 1e-12) <= r_a < r_b <= profile.r_max * (1 + 1e-12)):
        raise SupportError(
            f"interval [{r_a:g}, {r_b:g}] not inside profile range "
            f"[{profile.r_min:g}, {profile.r_max:g}]"
        )
    if grid_size < 16:
        raise DomainError(f"grid_size must be at least 16, got {grid_size}")
    p = profile.params.p
    nodes = np.geomspace(r_a, r_b, grid_size)
    h = np.diff(nodes)
    mid = 0.5 * (nodes[:-1] + nodes[1:])
    g1 = mid - 0.5 * h * _GAUSS_X
    g2 = mid + 0.5 * h * _GAUSS_X

    w1, v1, m1, ur1 = _coefficients(profile, nl, g1)
    w2, v2, m2, ur2 = _coefficients(profile, nl, g2)
    if p > 2.0 and max(np.max(np.abs(ur1)), np.max(np.abs(ur2))) <= UR_FLOOR:
        raise SingularAssembly(
            "gradient weight |u_r|^{p-2} degenerates on the whole interval"
        )

    # hat values at the two Gauss points: (phi_left, phi_right)
    l1 = (nodes[1:] - g1) / h
    r1v = (g1 - nodes[:-1]) / h
    l2 = (nodes[1:] - g2) / h
    r2v = (g2 - nodes[:-1]) / h

    half_h = 0.5 * h
    stiff = half_h * (w1 + w2) / h**2  # integral of weight / h^2

    def products(c1, c2):
        ll = half_h * (c1 * l1 * l1 + c2 * l2 * l2)
        rr = half_h * (c1 * r1v * r1v + c2 * r2v * r2v)
        lr = half_h * (c1 * l1 * r1v + c2 * l2 * r2v)
        return ll, rr, lr

    pot_ll, pot_rr, pot_lr = products(v1, v2)
    mass_ll, mass_rr, mass_lr = products(m1, m2)

    m = grid_size
    a_diag = np.zeros(m)
    a_off = np.zeros(m - 1)
    b_diag = np.zeros(m)
    b_off = np.zeros(m - 1)

    a_diag[:-1] += stiff - pot_ll
    a_diag[1:] += stiff - pot_rr
    a_off += -stiff - pot_lr
    b_diag[:-1] += mass_ll
    b_diag[1:] += mass_rr
    b_off += mass_lr

    # Dirichlet at both ends: keep interior unknowns only
    return AssembledPencil(
        nodes=nodes,
        a_diag=a_diag[1:-1].copy(),
        a_off=a_off[1:-1].copy(),
        b_diag=b_diag[1:-1].copy(),
        b_off=b_off[1:-1].copy(),
        regularization=UR_FLOOR if p != 2.0 else 0.0,
    )


def _negative_count(pencil: AssembledPencil, spectral_tol: float) -> int:
    counts = _core.pencil_inertia_batch(
        pencil.a_diag, pencil.a_off, pencil.b_diag, pencil.b_off,
        np.array([-spectral_tol]),
    )
    return int(counts[0])


def _lowest_eigenvalues(pencil: AssembledPencil, k: int, iterations: int = 140) -> np.ndarray:
    """Lowest k generalized eigenvalues by batched Sturm bisection."""
    m = len(pencil.a_diag)
    k = min(k, m)
    scale = pencil.scale

    lo = -(1.0 + scale)
    while _core.pencil_inertia_batch(
        pencil.a_diag, pencil.a_off, pencil.b_diag, pencil.b_off, np.array([lo])
    )[0] > 0:
        lo *= 4.0
    hi = 1.0 + scale
    while _core.pencil_inertia_batch(
        pencil.a_diag, pencil.a_off, pencil.b_diag, pencil.b_off, np.array([hi])
    )[0] < k:
        hi *= 4.0

    los = np.full(k, lo)
    his = np.full(k, hi)
    targets = np.arange(1, k + 1)
    for _ in range(iterations):
        mids = 0.5 * (los + his)
        counts = _core.pencil_inertia_batch(
            pencil.a_diag, pencil.a_off, pencil.b_diag, pencil.b_off, mids
        )
        above = counts >= targets
        his = np.where(above, mids, his)
        los = np.where(above, los, mids)
        if np.all(his - los <= 1e-15 * np.maximum(np.abs(los), np.abs(his)) + 1e-300):
            break
    return 0.5 * (los + his)


def lowest_eigenpairs(pencil: AssembledPencil, k: int):
    """(eigenvalues, vectors as columns) via bisection + inverse iteration."""
    vals = _lowest_eigenvalues(pencil, k)
    m = len(pencil.a_diag)
    vecs = np.zeros((m, len(vals)))
    # offset a hair off the eigenvalue: far below the spectral gap, large
    # enough to keep the factorization regular
    shift_eps = 1e-12 * float(np.max(np.abs(vals)) + 1e-30)
    for j, lam in enumerate(vals):
        ab = np.zeros((3, m))
        ab[0, 1:] = pencil.a_off - (lam + shift_eps) * pencil.b_off
        ab[1, :] = pencil.a_diag - (lam + shift_eps) * pencil.b_diag
        ab[2, :-1] = pencil.a_off - (lam + shift_eps) * pencil.b_off
        x = np.ones(m)
        for _ in range(4):
            rhs = pencil.b_diag * x
            rhs[:-1] += pencil.b_off * x[1:]
            rhs[1:] += pencil.b_off * x[:-1]
            x = solve_banded((1, 1), ab, rhs)
            bx = pencil.b_diag * x**2
            bx_off = 2.0 * pencil.b_off * x[:-1] * x[1:]
            x = x / math.sqrt(float(bx.sum() + bx_off.sum()))
        vecs[:, j] = x
    return vals, vecs


def morse_index_estimate(
    profile: RadialProfile,
    nl: Nonlinearity,
    interval: Tuple[float, float],
    grid_size: int,
    num_eigenvalues: int = 6,
) -> SpectralReport:
    """Certified lower bound on the Morse index from the truncated pencil.

    negative_count counts generalized eigenvalues below -spectral_tol, with
    spectral_tol = 1e-9 times the magnitude of the computed low spectrum (the
    B-normalized scale of A at its relevant end), so numerical zeros are not
    counted. Every discrete negative eigenvector is a compactly supported
    negative direction of the continuum form (P1 functions are admissible
    after C^1 smoothing), and discrete Rayleigh quotients bound the continuum
    ones from above, so the count is a certified lower bound; it says nothing
    about directions outside the interval.
    """
    pencil = assemble_pencil(profile, nl, interval, grid_size)
    vals = _lowest_eigenvalues(pencil, num_eigenvalues)
    spectral_tol = 1e-9 * float(np.max(np.abs(vals)))
    neg = _negative_count(pencil, spectral_tol)
    return SpectralReport(
        interval=(float(interval[0]), float(interval[1])),
        grid_size=grid_size,
        eigenvalues=[float(v) for v in vals],
        negative_count=neg,
        min_rayleigh=float(vals[0]),
        regularization=pencil.regularization,
    )


def _simpson(values: np.ndarray, h: float) -> float:
    return float(h / 3.0 * (values[0] + values[-1]
                            + 4.0 * values[1:-1:2].sum()
                            + 2.0 * values[2:-1:2].sum()))


def second_variation(
    profile: RadialProfile,
    nl: Nonlinearity,
    phi: TestFunction,
    n_quad: int = 4001,
) -> float:
    """Q(phi) for one compactly supported C^1 radial direction."""
    lo, hi = phi.support
    if lo < profile.r_min * (1 - 1e-12) or hi > profile.r_max * (1 + 1e-12):
        raise SupportError(
            f"support ({lo:g}, {hi:g}) exceeds profile range "
            f"[{profile.r_min:g}, {profile.r_max:g}]"
        )
    p, alpha, n = profile.params.p, profile.params.alpha, profile.params.n
    x = np.linspace(math.log(lo), math.log(hi), n_quad)
    r = np.exp(x)
    ur = profile.ur_at(r)
    if p == 2.0:
        grad_fac = np.ones_like(r)
    else:
        grad_fac = np.maximum(np.abs(ur), UR_FLOOR) ** (p - 2.0)
    fprime = nl.Fprime_vec(profile.u_at(r))
    density = r ** (n - 1.0) * (
        (p - 1.0) * grad_fac * phi.dfn(r) ** 2
        - r**alpha * fprime * phi.fn(r) ** 2
    )
    return _simpson(density * r, x[1] - x[0])  # dr = r dx


def p1_quadratic_form(
    profile: RadialProfile,
    nl: Nonlinearity,
    nodes: np.ndarray,
    coeffs: np.ndarray,
    n_gauss: int = 5,
) -> Tuple[float, float]:
    """(Q, M) of the P1 interpolant with the given interior coefficients.

    Independent of the assembly quadrature (n-point Gauss per element); used
    to cross-check discrete eigenpairs against the continuum form.
    """
    full = np.zeros(len(nodes))
    full[1:-1] = coeffs
    gx, gw = np.polynomial.legendre.leggauss(n_gauss)
    p, alpha, n = profile.params.p, profile.params.alpha, profile.params.n
    h = np.diff(nodes)
    mid = 0.5 * (nodes[:-1] + nodes[1:])
    q_total = 0.0
    m_total = 0.0
    slope = np.diff(full) / h
    for t, w8 in zip(gx, gw):
        r = mid + 0.5 * h * t
        lam = (r - nodes[:-1]) / h
        phi = full[:-1] * (1.0 - lam) + full[1:] * lam
        ur = profile.ur_at(r)
        if p == 2.0:
            grad_fac = np.ones_like(r)
        else:
            grad_fac = np.maximum(np.abs(ur), UR_FLOOR) ** (p - 2.0)
        fprime = nl.Fprime_vec(profile.u_at(r))
        dens_q = r ** (n - 1.0) * (
            (p - 1.0) * grad_fac * slope**2 - r**alpha * fprime * phi**2
        )
        dens_m = r ** (n - 1.0) * phi**2
        q_total += float(np.sum(w8 * 0.5 * h * dens_q))
        m_total += float(np.sum(w8 * 0.5 * h * dens_m))
    return q_total, m_total


def hardy_stability_check(
    params: ProblemParams,
    q: float,
    eps: float,
    R0: float,
    delta: Optional[float] = None,
    samples: int = 400,
    span: float = 1e4,
) -> bool:
    """Certify stability of the explicit critical solution outside B_R0.

    Compares the weighted potential side q r^alpha u^{q-1} against the
    gradient side (p-1)|u_r|^{p-2} through the weighted Hardy inequality with
    exponent theta = (n(p-2)+p)/(p-1): the certificate is
    sup_r [q r^alpha u^{q-1} r^theta] <= ((n-theta)/2)^2 inf_r [(p-1)|u_r|^{p-2} r^{theta-2}],
    with both extrema sampled on [R0, R0*span] and the potential side required
    to be decreasing over the last sampled decade (so the sup is attained).
    When delta is given it is used as the intermediate bound: the check is
    sup <= delta and delta <= hardy * inf.
    """
    p, alpha, n = params.p, params.alpha, params.n
    params.require_n_above_p("the stability-outside-compact certificate")
    if R0 <= 0.0:
        raise DomainError(f"R0 must be positive, got {R0}")
    q_star = power_exponents(params, q).q_star
    if abs(n - q_star) > CRITICAL_REL_TOL * max(1.0, abs(q_star)):
        raise DomainError(
            f"off-critical parameters: n={n}, critical dimension for q={q} is {q_star}"
        )
    theta = (n * (p - 2.0) + p) / (p - 1.0)
    if n <= theta:
        return False
    hardy = ((n - theta) / 2.0) ** 2

    grid = np.geomspace(R0, R0 * span, samples)
    prof = explicit_critical_solution(params, q, eps, grid)
    u = prof.u
    ur = prof.ur
    m_side = q * grid**alpha * u ** (q - 1.0) * grid**theta
    if p == 2.0:
        c_side = (p - 1.0) * grid ** (theta - 2.0)
    else:
        c_side = (p - 1.0) * np.abs(ur) ** (p - 2.0) * grid ** (theta - 2.0)

    # the sup must be attained inside the sampled range
    last_decade = grid >= grid[-1] / 10.0
    tail = m_side[last_decade]
    if np.any(np.diff(tail) > 0.0):
        return False

    sup_m = float(np.max(m_side))
    inf_c = float(np.min(c_side))
    if delta is None:
        return sup_m <= hardy * inf_c
    return sup_m <= delta and delta <= hardy * inf_c


def radial_stability_inequality_audit(
    profile: RadialProfile,
    eta: TestFunction,
    n_quad: int = 4001,
) -> Tuple[float, float]:
    """Both sides of the de-weighted radial stability inequality
    (N-1) * integral t^{N-3} |w_s|^p eta^2 <= (p-1) * integral t^{N-1} |w_s|^p eta_t^2
    for a profile in transformed (alpha = 0) variables."""
    if profile.params.alpha != 0.0:
        raise DomainError(
            "profile must be in transformed variables (alpha = 0); apply push_forward"
        )
    p, big_n = profile.params.p, profile.params.n
    lo, hi = eta.support
    if lo < profile.r_min * (1 - 1e-12) or hi > profile.r_max * (1 + 1e-12):
        raise SupportError(f"support ({lo:g}, {hi:g}) exceeds profile range")
    x = np.linspace(math.log(lo), math.log(hi), n_quad)
    t = np.exp(x)
    ws = np.abs(profile.ur_at(t)) ** p
    h = x[1] - x[0]
    lhs = (big_n - 1.0) * _simpson(t ** (big_n - 3.0) * ws * eta.fn(t) ** 2 * t, h)
    rhs = (p - 1.0) * _simpson(t ** (big_n - 1.0) * ws * eta.dfn(t) ** 2 * t, h)
    return lhs, rhs
