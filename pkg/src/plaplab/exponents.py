"""Critical exponents and regime classification for -div(|Du|^{p-2}Du) = |x|^a F(u).

Everything here is closed-form arithmetic on the parameter triple (p, alpha, n):
the fractional dimension produced by the radial change of variables, the decay
exponent governing how fast nonconstant stable radial solutions must grow or
flatten, and the dimension windows in which no stable / finite-Morse-index
solution exists for the three model nonlinearities.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

from .errors import DomainError
from .nonlinearity import Nonlinearity, NonlinearityTag

__all__ = [
    "ProblemParams",
    "ExponentReport",
    "RegimeReport",
    "Verdict",
    "PowerExponents",
    "fractional_dimension",
    "decay_exponent",
    "gelfand_upper_dimension",
    "power_exponents",
    "exponent_report",
    "classify_regime",
    "CRITICAL_REL_TOL",
]

# Relative tolerance for measure-zero regime boundaries (n == q_star etc.).
CRITICAL_REL_TOL = 1e-9


@dataclass(frozen=True)
class ProblemParams:
    """Parameter triple (p, alpha, n); n may be fractional.

    p >= 2 is the supported range. Constructing with 1 < p < 2 requires
    ``relax_p=True`` and emits a warning: the dimension windows and decay
    exponents are then outside the supported theory.
    """

    p: float
    alpha: float
    n: float
    relax_p: bool = False

    def __post_init__(self):
        if not (self.p > 1.0):
            raise DomainError(f"p must exceed 1, got p={self.p}")
        if self.p < 2.0 and not self.relax_p:
            raise DomainError(
                f"p={self.p} < 2 is outside the supported range; "
                "pass relax_p=True to proceed anyway"
            )
        if self.p < 2.0:
            warnings.warn(
                f"p={self.p} < 2: results are outside the supported theory",
                stacklevel=2,
            )
        if not (self.alpha + self.p > 0.0):
            raise DomainError(
                f"alpha + p must be positive, got alpha={self.alpha}, p={self.p}"
            )

    def require_n_above_p(self, what: str = "this operation") -> None:
        if not (self.n > self.p):
            raise DomainError(f"{what} requires n > p, got n={self.n}, p={self.p}")


class PowerExponents(NamedTuple):
    """The four dimension thresholds attached to a power nonlinearity u^q."""

    q_star: float
    q_sharp: float
    q_plus: float
    q_minus: float


@dataclass(frozen=True)
class ExponentReport:
    """All closed-form exponents for one parameter triple (and optional q)."""

    fractional_dimension: float
    decay_exponent: float
    gelfand_upper: float
    q_star: Optional[float] = None
    q_sharp: Optional[float] = None
    q_plus: Optional[float] = None
    q_minus: Optional[float] = None


class Verdict(Enum):
    NONEXISTENCE_FINITE_MORSE_RADIAL = "nonexistence-finite-morse-radial"
    NONEXISTENCE_STABLE = "nonexistence-stable"
    CRITICAL_EXPLICIT_FAMILY = "critical-explicit-family"
    OUTSIDE_THEOREMS = "outside-theorems"


@dataclass(frozen=True)
class RegimeReport:
    """Where (p, alpha, n, F) sits relative to the nonexistence windows.

    For stable-nonexistence verdicts the window has no theoretical lower end;
    window_lower is reported as 0.0 so the report stays JSON-finite.
    """

    nonlinearity_tag: str
    window_lower: float
    window_upper: float
    verdict: Verdict
    theorem_tag: str


def fractional_dimension(params: ProblemParams) -> float:
    """Dimension p(n+alpha)/(p+alpha) seen by the de-weighted radial problem."""
    return params.p * (params.n + params.alpha) / (params.p + params.alpha)


def decay_exponent(params: ProblemParams) -> float:
    """Exponent N_p(alpha) in the lower bound |u(r) - u_inf| >= C r^{N_p(alpha)}.

    Negative exactly when n exceeds the Gelfand upper dimension; zero on the
    boundary. Raises DomainError when the radicand (equivalently the
    admissibility condition n > 1 - alpha + alpha/p) fails.
    """
    p, alpha, n = params.p, params.alpha, params.n
    radicand = (p * (n - 1.0) / (p - 1.0) + alpha) / (p + alpha)
    if radicand < 0.0:
        raise DomainError(
            f"negative radicand in decay exponent (requires n > 1 - alpha + alpha/p); "
            f"got p={p}, alpha={alpha}, n={n}"
        )
    big_n = fractional_dimension(params)
    return (1.0 / p) * (1.0 + alpha / p) * (p + 2.0 - big_n + 2.0 * math.sqrt(radicand))


def gelfand_upper_dimension(p: float, alpha: float) -> float:
    """Upper end 4(p+alpha)/(p-1) + p of the exponential-nonlinearity window."""
    if p <= 1.0:
        raise DomainError(f"p must exceed 1, got p={p}")
    if alpha + p <= 0.0:
        raise DomainError(f"alpha + p must be positive, got alpha={alpha}, p={p}")
    return 4.0 * (p + alpha) / (p - 1.0) + p


def power_exponents(params: ProblemParams, q: float) -> PowerExponents:
    """The four dimension thresholds for F(u) = u^q (or -u^q).

    All four share the denominator q - p + 1, so q = p - 1 is rejected; the
    +/- pair needs q(q - p + 1) >= 0, which fails only for 0 < q < p - 1
    (a range no nonexistence window uses).
    """
    p, alpha = params.p, params.alpha
    denom = q - p + 1.0
    if denom == 0.0:
        raise DomainError(
            f"q = p - 1 = {q} makes the threshold denominator q - p + 1 vanish"
        )
    radicand = q * denom
    if radicand < 0.0:
        raise DomainError(
            f"q(q - p + 1) = {radicand} < 0 for q={q}, p={p}: "
            "the +/- thresholds are complex in 0 < q < p - 1"
        )
    root = math.sqrt(radicand)
    q_star = p * (q + alpha + 1.0) / denom
    q_sharp = (p * (q - 1.0) + alpha * (p - 2.0)) / denom
    common = (q - 1.0) / denom * p + (p - 2.0) / denom * alpha
    spread = 2.0 * (p + alpha) / ((p - 1.0) * denom)
    q_plus = common + spread * (q + root)
    q_minus = common + spread * (q - root)
    return PowerExponents(q_star, q_sharp, q_plus, q_minus)


def exponent_report(params: ProblemParams, q: Optional[float] = None) -> ExponentReport:
    """Bundle every exponent for the triple; power thresholds only if q given."""
    pe = power_exponents(params, q) if q is not None else None
    return ExponentReport(
        fractional_dimension=fractional_dimension(params),
        decay_exponent=decay_exponent(params),
        gelfand_upper=gelfand_upper_dimension(params.p, params.alpha),
        q_star=pe.q_star if pe else None,
        q_sharp=pe.q_sharp if pe else None,
        q_plus=pe.q_plus if pe else None,
        q_minus=pe.q_minus if pe else None,
    )


def _is_critical(n: float, threshold: float) -> bool:
    return abs(n - threshold) <= CRITICAL_REL_TOL * max(1.0, abs(threshold))


def classify_regime(params: ProblemParams, nl: Nonlinearity) -> RegimeReport:
    """Place (params, F) in the nonexistence landscape.

    Precedence: the explicit critical family (power nonlinearity, n = q_star
    within CRITICAL_REL_TOL) beats the open finite-Morse window, which beats
    the stable-only window; anything else is outside the known windows.
    """
    n = params.n
    tag = nl.tag

    if tag is NonlinearityTag.GELFAND:
        lower, upper = params.p, gelfand_upper_dimension(params.p, params.alpha)
    elif tag is NonlinearityTag.LANE_EMDEN:
        pe = power_exponents(params, nl.q)
        lower, upper = pe.q_star, pe.q_plus
        if _is_critical(n, pe.q_star):
            return RegimeReport(
                nonlinearity_tag=tag.value,
                window_lower=pe.q_star,
                window_upper=pe.q_star,
                verdict=Verdict.CRITICAL_EXPLICIT_FAMILY,
                theorem_tag="critical-explicit-family",
            )
    elif tag is NonlinearityTag.NEGATIVE_EXPONENT:
        pe = power_exponents(params, nl.q)
        lower, upper = pe.q_sharp, pe.q_minus
    else:
        return RegimeReport(
            nonlinearity_tag=tag.value,
            window_lower=math.nan,
            window_upper=math.nan,
            verdict=Verdict.OUTSIDE_THEOREMS,
            theorem_tag="none",
        )

    if lower < n < upper:
        return RegimeReport(
            nonlinearity_tag=tag.value,
            window_lower=lower,
            window_upper=upper,
            verdict=Verdict.NONEXISTENCE_FINITE_MORSE_RADIAL,
            theorem_tag="radial-finite-morse-window",
        )
    if n < upper:
        return RegimeReport(
            nonlinearity_tag=tag.value,
            window_lower=0.0,
            window_upper=upper,
            verdict=Verdict.NONEXISTENCE_STABLE,
            theorem_tag="entire-stable-window",
        )
    return RegimeReport(
        nonlinearity_tag=tag.value,
        window_lower=lower,
        window_upper=upper,
        verdict=Verdict.OUTSIDE_THEOREMS,
        theorem_tag="none",
    )
