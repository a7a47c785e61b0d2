import math

import numpy as np
import pytest

from plaplab import (
    Nonlinearity,
    ProblemParams,
    SolverConfig,
    explicit_critical_solution,
    explicit_gelfand_singular,
    solve_ivp,
)


@pytest.fixture(scope="session")
def u_eps():
    """Explicit critical-family solution, p=2, alpha=0, n=4, q=3, eps=1."""
    params = ProblemParams(2.0, 0.0, 4.0)
    return explicit_critical_solution(params, 3.0, 1.0, np.geomspace(2e-5, 1100.0, 2500))


@pytest.fixture(scope="session")
def singular11():
    """Exact singular exponential-problem solution in n=11 (stable)."""
    return explicit_gelfand_singular(
        ProblemParams(2.0, 0.0, 11.0), np.geomspace(5e-3, 220.0, 800)
    )


@pytest.fixture(scope="session")
def singular9():
    """Exact singular solution in n=9 (inside the instability window)."""
    return explicit_gelfand_singular(
        ProblemParams(2.0, 0.0, 9.0), np.geomspace(1e-3, 1e3, 900)
    )


@pytest.fixture(scope="session")
def gelfand3_shot():
    return solve_ivp(
        ProblemParams(2.0, 0.0, 3.0), Nonlinearity.gelfand(), 0.0,
        SolverConfig(r_max=100.0),
    )


@pytest.fixture(scope="session")
def lane_emden12_shot():
    """Stable supercritical power shot: p=2, alpha=0, n=12, q=5, a=1."""
    return solve_ivp(
        ProblemParams(2.0, 0.0, 12.0), Nonlinearity.lane_emden(5.0), 1.0,
        SolverConfig(r_max=400.0),
    )


@pytest.fixture(scope="session")
def critical_shot():
    """Shot matching the explicit family's center value sqrt(8)."""
    return solve_ivp(
        ProblemParams(2.0, 0.0, 4.0), Nonlinearity.lane_emden(3.0), math.sqrt(8.0),
        SolverConfig(r_max=11.0),
    )
