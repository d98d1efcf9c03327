"""Analytic lower bounds on the certified-scheme success probability.

The general bound needs only the minimum-error block variable of the
square-root measurement.  Positivity of any 2x2 principal minor taken from a
block of the constraint slack limits how much success mass a site can keep:
pairing the site's diagonal entry with a probe entry just outside the
certified window (distance delta+1) and saturating the resulting inequality
removes 2|off-diagonal| - |probe diagonal| from the site's minimum-error
value.  Averaging the surviving diagonals over sites gives the bound.

Probe direction: the first ceil(n/2) sites probe forward (site + delta + 1),
the rest probe backward (site - delta - 1), mirroring the chain.  A probe
falling off the chain means no constraining minor exists on that side, so
the site keeps its full minimum-error diagonal.

Closed forms: for the change-point family the exponential decay of the
square root gives the bound (1 - c^(delta+1))^2 times the minimum-error
value.  For the anomaly family the constant square root collapses the
general bound to exact piecewise-linear expressions.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadDelta, BadInput
from .problems import qsad_params
from .srm import me_block_entry

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class BoundResult:
    """General lower bound with its per-site decomposition."""

    value: float
    per_site_terms: np.ndarray
    h_terms: np.ndarray  # minor penalties subtracted from each site


def minor_penalty(srm_data, site, delta, direction):
    """Success mass removed from ``site`` by the out-of-window probe minor.

    Returns 0 when the probe index site +- (delta+1) falls off the chain:
    an absent minor cannot constrain the site.
    """
    n = srm_data.n
    if not 0 <= site < n:
        raise BadInput(f"site={site} outside [0, {n - 1}]")
    if not 0 <= delta <= n - 1:
        raise BadDelta(f"delta={delta} outside [0, {n - 1}]")
    if direction == FORWARD:
        probe = site + delta + 1
    elif direction == BACKWARD:
        probe = site - delta - 1
    else:
        raise BadInput(f"direction must be 'forward' or 'backward', got {direction!r}")
    if not 0 <= probe < n:
        return 0.0
    off = me_block_entry(srm_data, site, site, probe)
    diag = me_block_entry(srm_data, site, probe, probe)
    return 2.0 * abs(off) - diag


def general_lower_bound(srm_data, delta, clamp_negative=False):
    """Lower bound on the success probability at error radius ``delta``.

    ``clamp_negative`` replaces negative per-site terms by zero, a refinement
    of the raw formula; the default reports the raw value.  The guarantee
    that the bound sits below the solved optimum is a numerical fact checked
    by the test suite, not an assumption made here.
    """
    n = srm_data.n
    split = math.ceil(n / 2)
    h_terms = np.array(
        [
            minor_penalty(srm_data, i, delta, FORWARD if i < split else BACKWARD)
            for i in range(n)
        ]
    )
    per_site = np.diag(srm_data.s) ** 2 - h_terms
    if clamp_negative:
        per_site = np.maximum(per_site, 0.0)
    return BoundResult(
        value=float(per_site.mean()), per_site_terms=per_site, h_terms=h_terms
    )


def qcp_bound(c, delta, ps_me):
    """Change-point closed form: (1 - c^(delta+1))^2 times the ME value."""
    if not 0.0 < c < 1.0:
        raise BadInput(f"overlap must lie in (0, 1), got c={c}")
    if not 0.0 <= ps_me <= 1.0:
        raise BadInput(f"ps_me must lie in [0, 1], got {ps_me}")
    decay = math.exp((delta + 1) * math.log(c))
    return (1.0 - decay) ** 2 * ps_me


def qsad_bound(n, c, delta):
    """Anomaly-family closed form of the general bound.

    Constant at 1 - c^2 while the window is narrower than half the chain;
    beyond that it interpolates linearly toward the minimum-error value a^2.
    The even-n weight follows the published piecewise expression; see the
    package notes on how it differs from :func:`general_lower_bound` there.
    """
    if not 0 <= delta <= n - 1:
        raise BadDelta(f"delta={delta} outside [0, {n - 1}]")
    params = qsad_params(n, c)
    ua = (params.a - params.b) ** 2
    half = n // 2
    if delta < half:
        return ua
    me = params.a**2
    d = delta - half
    weight = (2 * d + 1) / n if n % 2 else (2 * d) / n
    return (1.0 - weight) * ua + weight * me
