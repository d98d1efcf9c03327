"""Square-root-measurement baseline for the minimum-error scheme.

For linearly independent states the measurement built from the Gram square
root S achieves success probability (1/n) sum_k S[k,k]^2 and is optimal or
near-optimal for both built-in families.  Its block variable is the direct
sum of outer products of the columns of S; the lower-bound module consumes
individual entries of those blocks.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadInput
from .matrix_core import sqrt_psd
from .quadrature import adaptive_simpson


@dataclass(frozen=True)
class SrmData:
    """Gram square root and its minimum-error success probability."""

    s: np.ndarray
    ps_me: float

    @property
    def n(self):
        return self.s.shape[0]


def srm(gram):
    """Square-root measurement data for a positive-definite Gram matrix."""
    s = sqrt_psd(gram)
    ps_me = float(np.mean(np.diag(s) ** 2))
    return SrmData(s=s, ps_me=ps_me)


def me_block_entry(srm_data, site, row, col):
    """Entry (row, col) of the minimum-error block for answer ``site``.

    The block is the outer product of column ``site`` of the Gram square
    root with itself.  All indices are 0-based.
    """
    s = srm_data.s
    n = srm_data.n
    for name, k in (("site", site), ("row", row), ("col", col)):
        if not 0 <= k < n:
            raise BadInput(f"{name}={k} outside [0, {n - 1}]")
    return float(s[row, site] * s[col, site])


@dataclass(frozen=True)
class OutcomeProfile:
    """Per-site outcome probabilities of the SRM for one true site."""

    true_site: int
    probs: np.ndarray  # probability of answering each site
    offsets: np.ndarray  # answer site minus true site


def outcome_profile(srm_data, true_site):
    """Outcome probability profile of the SRM given the true site.

    The probabilities are the squared square-root entries of the true site's
    row and sum to one exactly because S^2 reproduces the unit Gram diagonal.
    """
    n = srm_data.n
    if not 0 <= true_site < n:
        raise BadInput(f"true_site={true_site} outside [0, {n - 1}]")
    probs = srm_data.s[true_site, :] ** 2
    return OutcomeProfile(
        true_site=true_site, probs=probs, offsets=np.arange(n) - true_site
    )


def qcp_srm_integral(k, l, c, tol=1e-10):
    """Large-chain integral approximation of the change-point square root.

    Evaluates the continuum formula for entry (k, l) of S, with k, l >= 1
    counted from the start of the chain (the sine-series site labels).  This
    is a diagnostic only: production code always takes S from the exact
    matrix square root.
    """
    if k < 1 or l < 1:
        raise BadInput("site labels must be >= 1")
    if not 0.0 < c < 1.0:
        raise BadInput(f"overlap must lie in (0, 1), got c={c}")

    def integrand(theta):
        den = (1.0 - 2.0 * c * np.cos(theta) + c * c) ** 1.5
        fk = np.sin(k * theta) - c * np.sin((k - 1) * theta)
        fl = np.sin(l * theta) - c * np.sin((l - 1) * theta)
        return fk * fl / den

    min_intervals = max(64, 4 * (k + l))
    value = adaptive_simpson(integrand, 0.0, np.pi, tol=tol, min_intervals=min_intervals)
    return 2.0 * np.sqrt(1.0 - c * c) / np.pi * value
