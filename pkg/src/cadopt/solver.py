"""Solve the certified-answer discrimination SDP and audit its solutions.

The compact program optimizes one PSD block per answer window plus a slack
block carrying the Gram-matrix inequality:

    maximize    (1/n) sum_r Z_r[center_r, center_r]
    subject to  sum_r Embed_r(Z_r) + T = G,      Z_r, T  PSD.

Its dual produces the matrix certificate Y with Y PSD and every window
submatrix of Y dominating the corresponding objective selector.  The
reported objective value is the success probability of the scheme; the gap
between primal and dual values certifies near-optimality.
"""

from dataclasses import dataclass

import numpy as np

from . import ipm
from .errors import BadInput, BadPovm
from .kernels import smat, svec, tri_meta
from .matrix_core import inv_sqrt_psd, sqrt_psd
from .problems import CadProblem
from .structure import BlockStructure, build_structure, embed_block, forward_map


@dataclass(frozen=True)
class SdpSolution:
    """Primal/dual certificate pair for one discrimination instance."""

    problem: CadProblem
    structure: BlockStructure
    z: list  # one symmetric block per answer site
    y: np.ndarray  # dual matrix, n x n
    primal_value: float  # reported success probability
    dual_value: float
    gap: float  # dual_value - primal_value
    pres: float  # primal feasibility residual (Frobenius)
    dres: float  # dual feasibility residual
    iterations: int
    status: str


@dataclass(frozen=True)
class ProbBreakdown:
    """Success / error / inconclusive split of a solved scheme."""

    ps: float
    pe: float
    pi: float


@dataclass(frozen=True)
class PovmRealization:
    """Measurement operators in the canonical n-dimensional realization.

    ``states[:, k]`` is the k-th hypothesis state (a column of the Gram
    square root), ``elements[r]`` the operator answering site r, and ``e0``
    the inconclusive element completing the identity.
    """

    elements: list
    e0: np.ndarray
    states: np.ndarray


@dataclass(frozen=True)
class SimulatedCounts:
    """Outcome histogram of repeated measurements on one true site."""

    per_site: np.ndarray  # counts of conclusive answers, indexed by site
    inconclusive: int
    trials: int
    seed: int


def _embedding_indices(s: BlockStructure):
    """Packed-coordinate index arrays scattering each window block into svec(n x n)."""
    out = []
    for r in range(s.n):
        ii, jj, _ = tri_meta(int(s.widths[r]))
        gp = s.lo[r] + ii
        gq = s.lo[r] + jj
        out.append(gp * (gp + 1) // 2 + gq)
    return out


def solve_cad(problem, gap_tol=1e-7, feas_tol=1e-8, max_iter=200):
    """Solve one instance; returns the certificate pair as :class:`SdpSolution`.

    ``status == 'optimal'`` guarantees a relative duality gap at most
    ``gap_tol`` and feasibility residuals at most ``feas_tol``; the other
    statuses carry the best iterate reached.
    """
    n = problem.n
    s = build_structure(n, problem.delta)
    dims = [int(w) for w in s.widths] + [n]
    costs = []
    for r in range(n):
        c = np.zeros((dims[r], dims[r]))
        c[s.centers[r], s.centers[r]] = 1.0 / n
        costs.append(c)
    costs.append(np.zeros((n, n)))
    embeds = _embedding_indices(s) + [np.arange(n * (n + 1) // 2, dtype=np.int64)]
    b = svec(problem.gram)

    res = ipm.solve_block_sdp(
        dims, costs, embeds, b, gap_tol=gap_tol, feas_tol=feas_tol, max_iter=max_iter
    )
    return SdpSolution(
        problem=problem,
        structure=s,
        z=res.x_blocks[:n],
        y=smat(res.y, n),
        primal_value=res.primal_obj,
        dual_value=res.dual_obj,
        gap=res.gap,
        pres=res.pres,
        dres=res.dres,
        iterations=res.iterations,
        status=res.status,
    )


def probabilities(sol):
    """Success/error/inconclusive probabilities of a solved scheme.

    Success mass sits on the window centers, error mass on the remaining
    window diagonal, and the inconclusive remainder is clamped at zero
    against solver round-off.
    """
    s = sol.structure
    n = s.n
    ps = sum(float(sol.z[r][s.centers[r], s.centers[r]]) for r in range(n)) / n
    pe = (
        sum(
            float(np.trace(sol.z[r])) - float(sol.z[r][s.centers[r], s.centers[r]])
            for r in range(n)
        )
        / n
    )
    pi = max(0.0, 1.0 - ps - pe)
    return ProbBreakdown(ps=ps, pe=pe, pi=pi)


def reconstruct_povm(sol, problem=None):
    """Recover the measurement operators from the solved block variable.

    Undoes the Gram-square-root congruence: E_r = S^-1 Embed_r(Z_r) S^-1 in
    the canonical realization whose states are the columns of S.  Raises
    :class:`NumericalFailure` when S is too ill-conditioned to invert.
    """
    if problem is None:
        problem = sol.problem
    gram = problem.gram
    s_root = sqrt_psd(gram)
    s_inv = inv_sqrt_psd(gram)
    elements = []
    for r in range(sol.structure.n):
        e = s_inv @ embed_block(sol.z[r], r, sol.structure) @ s_inv
        elements.append(0.5 * (e + e.T))
    e0 = np.eye(problem.n) - sum(elements)
    e0 = 0.5 * (e0 + e0.T)
    return PovmRealization(elements=elements, e0=e0, states=s_root)


def outcome_distribution(povm, true_site):
    """Outcome probabilities (inconclusive, per-site) for one true state."""
    n = povm.states.shape[0]
    if not 0 <= true_site < n:
        raise BadInput(f"true_site={true_site} outside [0, {n - 1}]")
    psi = povm.states[:, true_site]
    per_site = np.array([float(psi @ e @ psi) for e in povm.elements])
    p0 = float(psi @ povm.e0 @ psi)
    return p0, per_site


def simulate_outcomes(povm, true_site, trials, seed):
    """Sample i.i.d. measurement outcomes for a fixed true site.

    Sampling uses numpy's seeded PCG64 generator, so a fixed seed gives
    identical histograms on every platform.  Raises :class:`BadPovm` when
    the outcome probabilities fail to sum to one within 1e-6.
    """
    p0, per_site = outcome_distribution(povm, true_site)
    probs = np.concatenate(([p0], per_site))
    total = float(probs.sum())
    if abs(total - 1.0) > 1e-6:
        raise BadPovm(f"outcome probabilities sum to {total:.9f}, expected 1")
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(int(trials), probs)
    return SimulatedCounts(
        per_site=counts[1:],
        inconclusive=int(counts[0]),
        trials=int(trials),
        seed=int(seed),
    )


def residual_matrix(sol):
    """Slack G - forward_map(Z) actually achieved by the reported blocks."""
    return sol.problem.gram - forward_map(sol.z, sol.structure)
