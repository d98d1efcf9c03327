"""Problem construction: Gram matrices for the supported state families.

Two built-in families are provided.  In the change-point family ("qcp") a
source emits a default signal and switches to a mutated one at an unknown
site, giving pairwise overlaps c^|i-j|.  In the anomaly-detection family
("qsad") exactly one site carries the mutated state, giving constant
off-diagonal overlaps c^2.  Arbitrary families enter through an explicit
Gram matrix or a list of state vectors.

Site indices are 0-based everywhere in this package.  Priors are uniform 1/n
throughout; no prior parameter is exposed.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import BadDelta, BadDimension, BadInput, BadState, LinearDependence
from .matrix_core import min_eigenvalue, sqrt_psd, symmetrize

#: smallest admissible Gram eigenvalue (linear independence threshold)
LIN_INDEP_TOL = 1e-9

_UNIT_DIAG_TOL = 1e-8


def _check_family_args(n, c):
    if n < 2:
        raise BadDimension(f"need at least two hypotheses, got n={n}")
    if not 0.0 <= c < 1.0:
        if c >= 1.0:
            raise LinearDependence(f"overlap c={c} >= 1 makes the states dependent")
        raise BadInput(f"overlap must lie in [0, 1), got c={c}")


def gram_qcp(n, c):
    """Change-point Gram matrix G[i, j] = c^|i-j|."""
    _check_family_args(n, c)
    offsets = np.abs(np.arange(n)[:, None] - np.arange(n)[None, :])
    return np.power(float(c), offsets)


def gram_qsad(n, c):
    """Anomaly-detection Gram matrix G = (1-c^2) I + c^2 (all-ones)."""
    _check_family_args(n, c)
    return (1.0 - c * c) * np.eye(n) + c * c * np.ones((n, n))


def gram_from_states(states, lin_indep_tol=LIN_INDEP_TOL):
    """Gram matrix of explicit unit state vectors (rows of ``states``).

    Raises :class:`BadState` if any vector is not unit norm to 1e-10 and
    :class:`LinearDependence` if the resulting Gram matrix has an eigenvalue
    at or below ``lin_indep_tol``.
    """
    states = np.asarray(states, dtype=float)
    if states.ndim != 2:
        raise BadState(f"expected a 2-d array of state vectors, got shape {states.shape}")
    norms = np.linalg.norm(states, axis=1)
    bad = np.where(np.abs(norms - 1.0) > 1e-10)[0]
    if bad.size:
        raise BadState(
            f"state {bad[0]} has norm {norms[bad[0]]:.12f}, expected 1 to 1e-10"
        )
    gram = symmetrize(states @ states.T)
    if min_eigenvalue(gram) <= lin_indep_tol:
        raise LinearDependence("states are not (numerically) linearly independent")
    return gram


@dataclass(frozen=True)
class QsadParams:
    """Closed-form entries of the anomaly-family Gram square root.

    The square root is (a-b) I + b (all-ones); a - b equals sqrt(1-c^2).
    """

    a: float
    b: float

    def __post_init__(self):
        if not self.a > self.b >= 0.0:
            raise BadInput(f"require a > b >= 0, got a={self.a}, b={self.b}")


def qsad_params(n, c):
    """Coefficients (a, b) of the anomaly-family Gram square root."""
    _check_family_args(n, c)
    root_big = np.sqrt(1.0 + (n - 1) * c * c)
    root_small = np.sqrt(1.0 - c * c)
    a = (root_big + (n - 1) * root_small) / n
    b = (root_big - root_small) / n
    return QsadParams(a=float(a), b=float(b))


@dataclass(frozen=True)
class CadProblem:
    """A discrimination instance: family tag, size, overlap, error radius, Gram.

    ``delta`` is the largest tolerated distance between a conclusive answer
    and the true site; delta=0 is unambiguous discrimination, delta=n-1 is
    minimum error.
    """

    kind: str  # 'qcp' | 'qsad' | 'custom'
    n: int
    c: float | None
    delta: int
    gram: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.kind not in ("qcp", "qsad", "custom"):
            raise BadInput(f"unknown problem kind {self.kind!r}")
        gram = symmetrize(self.gram)
        if gram.shape[0] != self.n:
            raise BadDimension(
                f"Gram matrix is {gram.shape[0]}x{gram.shape[0]}, declared n={self.n}"
            )
        if not 0 <= self.delta <= self.n - 1:
            raise BadDelta(f"delta={self.delta} outside [0, {self.n - 1}]")
        if np.max(np.abs(np.diag(gram) - 1.0)) > _UNIT_DIAG_TOL:
            raise BadState("Gram diagonal must be all ones (unit-norm states)")
        if min_eigenvalue(gram) <= LIN_INDEP_TOL:
            raise LinearDependence("Gram matrix is not (numerically) positive definite")
        object.__setattr__(self, "gram", gram)


def qcp_problem(n, c, delta):
    return CadProblem(kind="qcp", n=n, c=float(c), delta=delta, gram=gram_qcp(n, c))


def qsad_problem(n, c, delta):
    return CadProblem(kind="qsad", n=n, c=float(c), delta=delta, gram=gram_qsad(n, c))


def custom_problem(delta, gram=None, states=None):
    """Custom instance from either a Gram matrix or explicit state vectors."""
    if (gram is None) == (states is None):
        raise BadInput("provide exactly one of gram= or states=")
    if states is not None:
        gram = gram_from_states(states)
    else:
        gram = symmetrize(gram)
    return CadProblem(kind="custom", n=gram.shape[0], c=None, delta=delta, gram=gram)


def load_problem_json(path, delta):
    """Load a custom problem from a JSON document.

    The document must contain ``"n"`` and exactly one of ``"gram"`` (n x n
    nested list) or ``"states"`` (list of unit vectors).
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "n" not in doc:
        raise BadInput("problem file must be a JSON object with an 'n' field")
    has_gram = "gram" in doc
    has_states = "states" in doc
    if has_gram == has_states:
        raise BadInput("problem file must contain exactly one of 'gram' or 'states'")
    n = int(doc["n"])
    if has_gram:
        gram = np.asarray(doc["gram"], dtype=float)
        if gram.shape != (n, n):
            raise BadInput(f"'gram' must be {n}x{n}, got shape {gram.shape}")
        return custom_problem(delta, gram=gram)
    states = np.asarray(doc["states"], dtype=float)
    if states.ndim != 2 or states.shape[0] != n:
        raise BadInput(f"'states' must hold {n} vectors, got shape {states.shape}")
    return custom_problem(delta, states=states)


def canonical_states(gram):
    """Unit vectors realizing ``gram``: the columns of its square root.

    Column k of the returned matrix is the k-th state expressed in an
    orthonormal basis of the states' span.
    """
    return sqrt_psd(gram)
