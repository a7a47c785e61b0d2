"""C^1 compactly supported radial test functions built in log-radius.

Used as weak-form probes, second-variation directions and stability-audit
windows. All constructions are smooth in x = ln r so they behave uniformly
across the decades a radial profile spans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

__all__ = ["TestFunction", "log_bump", "power_log_plateau", "default_bumps"]


@dataclass(frozen=True)
class TestFunction:
    """Value/derivative pair with compact support (r_lo, r_hi)."""

    __test__ = False  # not a pytest collection target

    fn: Callable[[np.ndarray], np.ndarray]
    dfn: Callable[[np.ndarray], np.ndarray]
    support: Tuple[float, float]


def log_bump(center: float, halfwidth_log: float) -> TestFunction:
    """cos^2 bump in ln r centered at ln(center), C^1 with compact support."""
    c = math.log(center)
    w = halfwidth_log

    def fn(r):
        x = np.log(np.asarray(r, dtype=float))
        t = (x - c) / w
        out = np.where(np.abs(t) < 1.0, np.cos(0.5 * np.pi * t) ** 2, 0.0)
        return out

    def dfn(r):
        r = np.asarray(r, dtype=float)
        x = np.log(r)
        t = (x - c) / w
        inside = np.abs(t) < 1.0
        out = np.where(inside, -0.5 * np.pi / w * np.sin(np.pi * t), 0.0)
        return out / r

    return TestFunction(fn=fn, dfn=dfn, support=(math.exp(c - w), math.exp(c + w)))


def _smoothstep(t):
    t = np.clip(t, 0.0, 1.0)
    return t * t * (3.0 - 2.0 * t)


def _smoothstep_d(t):
    inside = (t > 0.0) & (t < 1.0)
    return np.where(inside, 6.0 * t * (1.0 - t), 0.0)


def power_log_plateau(
    sigma: float, r_lo: float, r_hi: float, edge_frac: float = 0.15
) -> TestFunction:
    """r^sigma times a C^1 plateau in ln r: ramps over edge_frac of the window.

    With sigma = -(n-2)/2 this is the near-optimal direction for Hardy-type
    quadratic forms on (r_lo, r_hi).
    """
    xa, xb = math.log(r_lo), math.log(r_hi)
    w = edge_frac * (xb - xa)
    if w <= 0.0:
        raise ValueError("empty window")

    def plateau(x):
        up = _smoothstep((x - xa) / w)
        down = _smoothstep((xb - x) / w)
        return up * down

    def plateau_d(x):
        up = _smoothstep((x - xa) / w)
        down = _smoothstep((xb - x) / w)
        d_up = _smoothstep_d((x - xa) / w) / w
        d_down = -_smoothstep_d((xb - x) / w) / w
        return d_up * down + up * d_down

    def fn(r):
        r = np.asarray(r, dtype=float)
        x = np.log(r)
        out = np.zeros_like(x)
        inside = (x > xa) & (x < xb)
        out[inside] = np.exp(sigma * x[inside]) * plateau(x[inside])
        return out

    def dfn(r):
        r = np.asarray(r, dtype=float)
        x = np.log(r)
        out = np.zeros_like(x)
        inside = (x > xa) & (x < xb)
        xi = x[inside]
        out[inside] = (
            np.exp(sigma * xi) * (sigma * plateau(xi) + plateau_d(xi)) / r[inside]
        )
        return out

    return TestFunction(fn=fn, dfn=dfn, support=(r_lo, r_hi))


def default_bumps(r_lo: float, r_hi: float, count: int = 8) -> list:
    """Log-spaced cos^2 bumps strictly inside (r_lo, r_hi)."""
    xa, xb = math.log(r_lo), math.log(r_hi)
    w = (xb - xa) / (count + 2)
    centers = np.linspace(xa + 1.5 * w, xb - 1.5 * w, count)
    return [log_bump(math.exp(c), w) for c in centers]
