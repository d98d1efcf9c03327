import time

import pytest

from cadopt.problems import gram_qcp, qcp_problem, qsad_problem
from cadopt.solver import solve_cad
from cadopt.srm import srm


@pytest.fixture(scope="session")
def qcp25_sweep():
    """All 25 solves of the headline change-point instance, with wall time."""
    t0 = time.perf_counter()
    sols = [solve_cad(qcp_problem(25, 0.6, delta)) for delta in range(25)]
    elapsed = time.perf_counter() - t0
    return sols, elapsed


@pytest.fixture(scope="session")
def qcp25_srm():
    return srm(gram_qcp(25, 0.6))


@pytest.fixture(scope="session")
def qsad_grid_solutions():
    """Anomaly-family solves shared by the exact-value and certificate checks."""
    out = {}
    for n in (10, 25):
        for c in (0.3, 0.6):
            deltas = list(range(n // 2)) + [n - 1]
            for delta in deltas:
                out[(n, c, delta)] = solve_cad(qsad_problem(n, c, delta))
    return out
