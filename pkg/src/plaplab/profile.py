"""Discrete radial profiles: values, slopes, fluxes, and their file formats.

A profile stores nodes of one radial solution together with the flux
w = r^{n-1}|u_r|^{p-2}u_r that the shooting solver integrates. Off-node values
come from monotone cubic interpolation in log r; closed-form solutions carry
their exact callables instead. The CSV format (header ``r,u,ur,flux``, 17
significant digits) plus a JSON sidecar is the interchange format of the CLI.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import RangeError
from .exponents import ProblemParams

__all__ = [
    "AnalyticPieces",
    "RadialProfile",
    "flux_of",
    "write_profile_csv",
    "read_profile_csv",
    "write_profile_sidecar",
    "read_profile_sidecar",
]

SCHEMA_VERSION = "1"

CSV_HEADER = "r,u,ur,flux"


def flux_of(r, ur, p: float, n: float):
    """Flux r^{n-1}|u_r|^{p-2} u_r (vectorized)."""
    r = np.asarray(r, dtype=float)
    ur = np.asarray(ur, dtype=float)
    if p == 2.0:
        return r ** (n - 1.0) * ur
    return r ** (n - 1.0) * np.abs(ur) ** (p - 2.0) * ur


@dataclass(frozen=True)
class AnalyticPieces:
    """Exact callables for closed-form profiles (vectorized over radii)."""

    u: Callable[[np.ndarray], np.ndarray]
    ur: Callable[[np.ndarray], np.ndarray]
    urr: Optional[Callable[[np.ndarray], np.ndarray]] = None


@dataclass
class RadialProfile:
    """One radial solution sampled on strictly increasing positive nodes.

    Treated as immutable after construction. ``meta`` carries solver
    provenance (nonlinearity descriptor, config, stop reason).
    """

    r: np.ndarray
    u: np.ndarray
    ur: np.ndarray
    flux: np.ndarray
    params: ProblemParams
    meta: dict = field(default_factory=dict)
    analytic: Optional[AnalyticPieces] = None
    _interp_u: Optional[PchipInterpolator] = field(
        default=None, init=False, repr=False, compare=False
    )
    _interp_ur: Optional[PchipInterpolator] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        self.r = np.asarray(self.r, dtype=float)
        self.u = np.asarray(self.u, dtype=float)
        self.ur = np.asarray(self.ur, dtype=float)
        self.flux = np.asarray(self.flux, dtype=float)
        if self.r.ndim != 1 or len(self.r) < 2:
            raise ValueError("profile needs at least two nodes")
        if np.any(self.r <= 0.0) or np.any(np.diff(self.r) <= 0.0):
            raise ValueError("nodes must be positive and strictly increasing")

    @classmethod
    def from_callables(
        cls,
        params: ProblemParams,
        grid,
        u_fn,
        ur_fn,
        urr_fn=None,
        meta: Optional[dict] = None,
    ) -> "RadialProfile":
        grid = np.asarray(grid, dtype=float)
        u = np.asarray(u_fn(grid), dtype=float)
        ur = np.asarray(ur_fn(grid), dtype=float)
        return cls(
            r=grid,
            u=u,
            ur=ur,
            flux=flux_of(grid, ur, params.p, params.n),
            params=params,
            meta=dict(meta or {}),
            analytic=AnalyticPieces(u=u_fn, ur=ur_fn, urr=urr_fn),
        )

    @property
    def r_min(self) -> float:
        return float(self.r[0])

    @property
    def r_max(self) -> float:
        return float(self.r[-1])

    def _check_range(self, x: np.ndarray) -> None:
        lo, hi = self.r_min, self.r_max
        if np.any(x < lo * (1.0 - 1e-12)) or np.any(x > hi * (1.0 + 1e-12)):
            raise RangeError(
                f"query radii outside profile range [{lo:g}, {hi:g}]"
            )

    def _build_interp(self) -> None:
        x = np.log(self.r)
        object.__setattr__(self, "_interp_u", PchipInterpolator(x, self.u))
        object.__setattr__(self, "_interp_ur", PchipInterpolator(x, self.ur))

    def u_at(self, radii) -> np.ndarray:
        radii = np.asarray(radii, dtype=float)
        self._check_range(radii)
        if self.analytic is not None:
            return np.asarray(self.analytic.u(radii), dtype=float)
        if self._interp_u is None:
            self._build_interp()
        return self._interp_u(np.log(radii))

    def ur_at(self, radii) -> np.ndarray:
        radii = np.asarray(radii, dtype=float)
        self._check_range(radii)
        if self.analytic is not None:
            return np.asarray(self.analytic.ur(radii), dtype=float)
        if self._interp_ur is None:
            self._build_interp()
        return self._interp_ur(np.log(radii))

    def urr_at(self, radii) -> np.ndarray:
        radii = np.asarray(radii, dtype=float)
        self._check_range(radii)
        if self.analytic is not None and self.analytic.urr is not None:
            return np.asarray(self.analytic.urr(radii), dtype=float)
        if self._interp_ur is None:
            self._build_interp()
        # d(ur)/dr = d(ur)/d(ln r) / r
        return self._interp_ur.derivative()(np.log(radii)) / radii

    def flux_at(self, radii) -> np.ndarray:
        return flux_of(radii, self.ur_at(radii), self.params.p, self.params.n)


def write_profile_csv(path, profile: RadialProfile) -> None:
    """One node per line, full double precision."""
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for r, u, ur, w in zip(profile.r, profile.u, profile.ur, profile.flux):
            fh.write(f"{r:.17g},{u:.17g},{ur:.17g},{w:.17g}\n")


def read_profile_csv(path, params: ProblemParams, meta: Optional[dict] = None) -> RadialProfile:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 4:
        raise ValueError(f"expected 4 columns ({CSV_HEADER}), got {data.shape[1]}")
    return RadialProfile(
        r=data[:, 0],
        u=data[:, 1],
        ur=data[:, 2],
        flux=data[:, 3],
        params=params,
        meta=dict(meta or {}),
    )


def write_profile_sidecar(path, profile: RadialProfile) -> None:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "params": {
            "p": profile.params.p,
            "alpha": profile.params.alpha,
            "n": profile.params.n,
        },
        **profile.meta,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_profile_sidecar(path) -> dict:
    with open(path) as fh:
        return json.load(fh)
