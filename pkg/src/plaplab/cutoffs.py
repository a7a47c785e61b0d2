"""C^1 cutoff families used by the cutoff-energy estimates.

Ball cutoffs are 1 on B_R and decay to 0 across [R, 2R]; annulus cutoffs
additionally vanish inside B_{R0+1} with a unit-width inner ramp. Transitions
are smoothstep cubics, so the realized gradient bound is |grad| <= 1.5/width
and is recorded on the family.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DomainError

__all__ = ["CutoffKind", "CutoffFamily"]

GRAD_CONST = 1.5  # sup of the smoothstep derivative


class CutoffKind(Enum):
    BALL = "ball"
    ANNULUS = "annulus"


def _step(t):
    t = np.clip(t, 0.0, 1.0)
    return t * t * (3.0 - 2.0 * t)


def _step_d(t):
    inside = (t > 0.0) & (t < 1.0)
    return np.where(inside, 6.0 * t * (1.0 - t), 0.0)


@dataclass(frozen=True)
class CutoffFamily:
    """One cutoff zeta_R (ball) or xi_R (annulus) with its test power m."""

    kind: CutoffKind
    R: float
    m: int = 1
    R0: Optional[float] = None
    grad_bound_outer: float = GRAD_CONST  # sup of R * |zeta'| on [R, 2R]
    grad_bound_inner: Optional[float] = None  # sup of |xi'| on the inner ramp

    @classmethod
    def ball(cls, R: float, m: int = 1) -> "CutoffFamily":
        if R <= 0.0:
            raise DomainError(f"R must be positive, got {R}")
        return cls(kind=CutoffKind.BALL, R=R, m=m)

    @classmethod
    def annulus(cls, R: float, R0: float, m: int = 1) -> "CutoffFamily":
        if R0 <= 0.0:
            raise DomainError(f"R0 must be positive, got {R0}")
        if R <= R0 + 3.0:
            raise DomainError(f"annulus cutoff needs R > R0 + 3, got R={R}, R0={R0}")
        return cls(
            kind=CutoffKind.ANNULUS, R=R, R0=R0, m=m, grad_bound_inner=GRAD_CONST
        )

    def at_radius(self, R: float) -> "CutoffFamily":
        """Same family with the outer radius moved (self-similar outer ramp)."""
        if self.kind is CutoffKind.ANNULUS and R <= self.R0 + 3.0:
            raise DomainError(f"annulus cutoff needs R > R0 + 3, got R={R}")
        return replace(self, R=R)

    def value(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        out = _step((2.0 * self.R - r) / self.R)  # 1 below R, ramp on [R, 2R]
        if self.kind is CutoffKind.ANNULUS:
            out = out * _step(r - (self.R0 + 1.0))
        return out

    def derivative(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        outer = _step((2.0 * self.R - r) / self.R)
        d_outer = -_step_d((2.0 * self.R - r) / self.R) / self.R
        if self.kind is CutoffKind.BALL:
            return d_outer
        inner = _step(r - (self.R0 + 1.0))
        d_inner = _step_d(r - (self.R0 + 1.0))
        return d_outer * inner + outer * d_inner

    def transition_regions(self):
        """Intervals where the derivative can be nonzero."""
        regions = [(self.R, 2.0 * self.R)]
        if self.kind is CutoffKind.ANNULUS:
            regions.insert(0, (self.R0 + 1.0, self.R0 + 2.0))
        return regions

    @property
    def support(self):
        lo = 0.0 if self.kind is CutoffKind.BALL else self.R0 + 1.0
        return (lo, 2.0 * self.R)
