"""Backend selection for the hot kernels.

The compiled extension is used when importable; the pure-Python twin
otherwise. Set PLAPLAB_PURE_PYTHON=1 to force the fallback (used by the
benchmark and by tests that compare the two).
"""

from __future__ import annotations

import os

from . import kernels_py

KIND_EXP = kernels_py.KIND_EXP
KIND_POWER = kernels_py.KIND_POWER
KIND_NEG_POWER = kernels_py.KIND_NEG_POWER
KIND_CUSTOM = kernels_py.KIND_CUSTOM

REACHED_RMAX = kernels_py.REACHED_RMAX
DOMAIN_EXIT = kernels_py.DOMAIN_EXIT
MAX_STEPS = kernels_py.MAX_STEPS
DT_UNDERFLOW = kernels_py.DT_UNDERFLOW

_compiled = None
if os.environ.get("PLAPLAB_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def backend_name() -> str:
    return BACKEND


def implementations() -> dict:
    """Available kernel modules by name (for benchmarks and twin tests)."""
    out = {"python": kernels_py}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def solve_radial(p, alpha, n, kind, q, F, r0, u0, w0, rmax, rtol, atol,
                 max_steps, max_step_frac):
    if _compiled is not None and kind != KIND_CUSTOM:
        return _compiled.solve_radial(
            p, alpha, n, kind, 0.0 if q is None else q, None,
            r0, u0, w0, rmax, rtol, atol, max_steps, max_step_frac,
        )
    return kernels_py.solve_radial(
        p, alpha, n, kind, 0.0 if q is None else q, F,
        r0, u0, w0, rmax, rtol, atol, max_steps, max_step_frac,
    )


def pencil_inertia_batch(a_diag, a_off, b_diag, b_off, shifts):
    if _compiled is not None:
        return _compiled.pencil_inertia_batch(a_diag, a_off, b_diag, b_off, shifts)
    return kernels_py.pencil_inertia_batch(a_diag, a_off, b_diag, b_off, shifts)
