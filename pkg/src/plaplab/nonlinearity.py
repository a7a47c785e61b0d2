"""Nonlinearity F(u) on the right-hand side, as a tagged (F, F') pair.

Built-in choices: exponential e^u (Gelfand), power u^q with q > p-1
(Lane-Emden), negative power -u^q with q < 0 (MEMS-type). Custom pairs are
spot-checked for F'/F consistency by finite differences at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError

__all__ = ["NonlinearityTag", "Nonlinearity"]

_FD_REL_TOL = 1e-5
_FD_POINTS = 10


class NonlinearityTag(Enum):
    GELFAND = "gelfand"
    LANE_EMDEN = "lane-emden"
    NEGATIVE_EXPONENT = "negative-exponent"
    CUSTOM = "custom"


def _exp_clipped(u: float) -> float:
    # exp saturates instead of raising OverflowError; the stepper treats the
    # resulting inf as a rejected step.
    if u > 709.0:
        return math.inf
    return math.exp(u)


@dataclass(frozen=True)
class Nonlinearity:
    """Tagged nonlinearity with value and derivative callables.

    Use the classmethod constructors; the power-law tags also carry their
    exponent q so downstream code can use closed forms. ``q > p - 1`` for
    Lane-Emden depends on p and is checked where params are known
    (``validate_against``).
    """

    tag: NonlinearityTag
    F: Callable[[float], float]
    Fprime: Callable[[float], float]
    q: Optional[float] = None
    antiderivative: Optional[Callable[[float], float]] = None
    label: str = field(default="", compare=False)

    @classmethod
    def gelfand(cls) -> "Nonlinearity":
        return cls(
            tag=NonlinearityTag.GELFAND,
            F=_exp_clipped,
            Fprime=_exp_clipped,
            antiderivative=lambda t: _exp_clipped(t) - 1.0,
            label="e^u",
        )

    @classmethod
    def lane_emden(cls, q: float) -> "Nonlinearity":
        """F(u) = u^q on u > 0; requires q > p - 1, checked against params later."""
        if q <= 0.0:
            raise DomainError(f"Lane-Emden exponent must be positive, got q={q}")
        return cls(
            tag=NonlinearityTag.LANE_EMDEN,
            F=lambda u: u**q,
            Fprime=lambda u: q * u ** (q - 1.0),
            q=q,
            antiderivative=lambda t: t ** (q + 1.0) / (q + 1.0),
            label=f"u^{q:g}",
        )

    @classmethod
    def negative_exponent(cls, q: float) -> "Nonlinearity":
        """F(u) = -u^q with q < 0, on u > 0."""
        if q >= 0.0:
            raise DomainError(f"negative-exponent nonlinearity needs q < 0, got q={q}")
        if q == -1.0:
            anti = lambda t: -math.log(t)  # antiderivative normalized at t=1
        else:
            anti = lambda t: -(t ** (q + 1.0)) / (q + 1.0)
        return cls(
            tag=NonlinearityTag.NEGATIVE_EXPONENT,
            F=lambda u: -(u**q),
            Fprime=lambda u: -q * u ** (q - 1.0),
            q=q,
            antiderivative=anti,
            label=f"-u^{q:g}",
        )

    @classmethod
    def custom(
        cls,
        F: Callable[[float], float],
        Fprime: Callable[[float], float],
        check_points: Optional[Sequence[float]] = None,
        antiderivative: Optional[Callable[[float], float]] = None,
        label: str = "custom",
    ) -> "Nonlinearity":
        """Arbitrary C^1 pair; (F, F') consistency is spot-checked by central
        differences at check_points (default: 10 points in [0.5, 1.5])."""
        if check_points is None:
            check_points = [0.5 + 1.0 * i / (_FD_POINTS - 1) for i in range(_FD_POINTS)]
        for x in check_points:
            h = 1e-6 * max(1.0, abs(x))
            fd = (F(x + h) - F(x - h)) / (2.0 * h)
            fp = Fprime(x)
            scale = max(abs(fp), abs(fd), 1e-8)
            if abs(fp - fd) > _FD_REL_TOL * scale:
                raise DomainError(
                    f"custom Fprime disagrees with finite differences at u={x}: "
                    f"Fprime={fp!r}, FD={fd!r}"
                )
        return cls(
            tag=NonlinearityTag.CUSTOM,
            F=F,
            Fprime=Fprime,
            antiderivative=antiderivative,
            label=label,
        )

    def scaled(self, factor: float) -> "Nonlinearity":
        """The pair (factor*F, factor*F'), keeping the antiderivative in sync."""
        anti = self.antiderivative
        return Nonlinearity(
            tag=NonlinearityTag.CUSTOM,
            F=lambda u: factor * self.F(u),
            Fprime=lambda u: factor * self.Fprime(u),
            q=self.q,
            antiderivative=(lambda t: factor * anti(t)) if anti else None,
            label=f"{factor:g}*({self.label})",
        )

    def validate_against(self, p: float) -> None:
        """Check the q-vs-p constraint that cannot be checked at construction."""
        if self.tag is NonlinearityTag.LANE_EMDEN and not (self.q > p - 1.0):
            raise DomainError(
                f"Lane-Emden requires q > p - 1, got q={self.q}, p={p}"
            )

    def F_vec(self, u) -> np.ndarray:
        """Vectorized F over an array of values."""
        u = np.asarray(u, dtype=float)
        if self.tag is NonlinearityTag.GELFAND:
            return np.exp(np.minimum(u, 709.0))
        if self.tag is NonlinearityTag.LANE_EMDEN:
            return u**self.q
        if self.tag is NonlinearityTag.NEGATIVE_EXPONENT:
            return -(u**self.q)
        return np.asarray([self.F(float(v)) for v in np.atleast_1d(u)])

    def Fprime_vec(self, u) -> np.ndarray:
        """Vectorized F' over an array of values."""
        u = np.asarray(u, dtype=float)
        if self.tag is NonlinearityTag.GELFAND:
            return np.exp(np.minimum(u, 709.0))
        if self.tag is NonlinearityTag.LANE_EMDEN:
            return self.q * u ** (self.q - 1.0)
        if self.tag is NonlinearityTag.NEGATIVE_EXPONENT:
            return -self.q * u ** (self.q - 1.0)
        return np.asarray([self.Fprime(float(v)) for v in np.atleast_1d(u)])

    @property
    def positive_domain(self) -> bool:
        """True when F is only defined (or only meaningful) for u > 0."""
        return self.tag in (
            NonlinearityTag.LANE_EMDEN,
            NonlinearityTag.NEGATIVE_EXPONENT,
        )

    def describe(self) -> dict:
        """JSON-friendly descriptor for sidecars and manifests."""
        out = {"tag": self.tag.value}
        if self.q is not None:
            out["q"] = self.q
        if self.label:
            out["label"] = self.label
        return out
